#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "horolip/point.hpp"

namespace horolip {

// Column-style Hermite form of an integer matrix whose columns generate a
// sublattice of Z^d.  Exact GMP arithmetic throughout; entries can grow
// during elimination even when the inputs are small.
class IntLattice {
public:
    // columns: generators of the sublattice, each of length dim.
    IntLattice(int dim, const std::vector<Point>& columns) : dim_(dim)
    {
        std::vector<std::vector<mpz_class>> m;
        for (const Point& c : columns) {
            if (static_cast<int>(c.size()) != dim)
                throw std::invalid_argument("IntLattice: column dimension mismatch");
            std::vector<mpz_class> col(c.begin(), c.end());
            m.push_back(std::move(col));
        }
        hermite(m);
    }

    int dim() const { return dim_; }
    int rank() const { return rank_; }
    bool full_rank() const { return rank_ == dim_; }

    // [Z^d : L]; only defined when L has full rank.
    long long index() const
    {
        if (!full_rank()) throw std::logic_error("IntLattice::index: lattice not of full rank");
        mpz_class idx = 1;
        for (int i = 0; i < dim_; ++i) idx *= basis_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        if (!idx.fits_slong_p()) throw std::overflow_error("IntLattice::index: index too large");
        return idx.get_si();
    }

    bool contains(const Point& x) const
    {
        if (!full_rank()) {
            // Solve within the rank columns and require exactness.
            return contains_rank_deficient(x);
        }
        std::vector<mpz_class> r(x.begin(), x.end());
        for (int i = 0; i < dim_; ++i) {
            const auto& bi = basis_[static_cast<std::size_t>(i)];
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r[static_cast<std::size_t>(i)].get_mpz_t(),
                        bi[static_cast<std::size_t>(i)].get_mpz_t());
            if (rem != 0) return false;
            for (int k = i; k < dim_; ++k) r[static_cast<std::size_t>(k)] -= q * bi[static_cast<std::size_t>(k)];
        }
        for (const auto& v : r)
            if (v != 0) return false;
        return true;
    }

    // Canonical residue of x modulo the lattice; equal residues <=> same coset.
    Point residue(const Point& x) const
    {
        if (!full_rank()) throw std::logic_error("IntLattice::residue: lattice not of full rank");
        std::vector<mpz_class> r(x.begin(), x.end());
        for (int i = 0; i < dim_; ++i) {
            const auto& bi = basis_[static_cast<std::size_t>(i)];
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), r[static_cast<std::size_t>(i)].get_mpz_t(),
                       bi[static_cast<std::size_t>(i)].get_mpz_t());
            for (int k = i; k < dim_; ++k) r[static_cast<std::size_t>(k)] -= q * bi[static_cast<std::size_t>(k)];
        }
        Point out(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            if (!r[static_cast<std::size_t>(i)].fits_slong_p())
                throw std::overflow_error("IntLattice::residue: residue overflow");
            out[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)].get_si();
        }
        return out;
    }

private:
    void hermite(std::vector<std::vector<mpz_class>>& cols)
    {
        rank_ = 0;
        for (int row = 0; row < dim_ && rank_ < static_cast<int>(cols.size()); ++row) {
            // Euclid over the entries of this row among the unused columns.
            for (;;) {
                int nonzero = -1, second = -1;
                for (int j = rank_; j < static_cast<int>(cols.size()); ++j) {
                    if (cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(row)] != 0) {
                        if (nonzero < 0)
                            nonzero = j;
                        else {
                            second = j;
                            break;
                        }
                    }
                }
                if (nonzero < 0 || second < 0) {
                    if (nonzero >= 0) {
                        std::swap(cols[static_cast<std::size_t>(rank_)], cols[static_cast<std::size_t>(nonzero)]);
                        if (cols[static_cast<std::size_t>(rank_)][static_cast<std::size_t>(row)] < 0)
                            for (auto& v : cols[static_cast<std::size_t>(rank_)]) v = -v;
                        pivot_rows_.push_back(row);
                        ++rank_;
                    }
                    break;
                }
                // Reduce the column with the larger row entry by the smaller one.
                int a = nonzero, b = second;
                mpz_class va = abs(cols[static_cast<std::size_t>(a)][static_cast<std::size_t>(row)]);
                mpz_class vb = abs(cols[static_cast<std::size_t>(b)][static_cast<std::size_t>(row)]);
                if (va < vb) std::swap(a, b);
                mpz_class q = cols[static_cast<std::size_t>(a)][static_cast<std::size_t>(row)] /
                              cols[static_cast<std::size_t>(b)][static_cast<std::size_t>(row)];
                for (int k = 0; k < dim_; ++k)
                    cols[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] -=
                        q * cols[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
            }
        }
        basis_.assign(static_cast<std::size_t>(dim_), std::vector<mpz_class>(static_cast<std::size_t>(dim_), 0));
        // basis_[i] is the column with pivot in row pivot_rows_[i]; for a
        // full-rank lattice pivot_rows_ == {0, ..., d-1} and the matrix of
        // columns is lower triangular with positive diagonal.
        for (int j = 0; j < rank_; ++j)
            for (int i = 0; i < dim_; ++i)
                basis_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }

    bool contains_rank_deficient(const Point& x) const
    {
        std::vector<mpz_class> r(x.begin(), x.end());
        for (int j = 0; j < rank_; ++j) {
            int row = pivot_rows_[static_cast<std::size_t>(j)];
            const auto& bj = basis_[static_cast<std::size_t>(j)];
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r[static_cast<std::size_t>(row)].get_mpz_t(),
                        bj[static_cast<std::size_t>(row)].get_mpz_t());
            if (rem != 0) return false;
            for (int k = 0; k < dim_; ++k) r[static_cast<std::size_t>(k)] -= q * bj[static_cast<std::size_t>(k)];
        }
        for (const auto& v : r)
            if (v != 0) return false;
        return true;
    }

    int dim_;
    int rank_ = 0;
    std::vector<int> pivot_rows_;
    std::vector<std::vector<mpz_class>> basis_;   // basis_[j] = j-th basis column
};

// True when the columns generate all of Z^d.
inline bool generates_zd(int dim, const std::vector<Point>& columns)
{
    IntLattice lat(dim, columns);
    return lat.full_rank() && lat.index() == 1;
}

} // namespace horolip
