#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "horolip/point.hpp"

namespace horolip {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline Rat rat_dot(const RatVec& a, const Point& x)
{
    Rat r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * Rat(static_cast<long>(x[i]));
    return r;
}

inline Rat rat_dot(const RatVec& a, const RatVec& b)
{
    Rat r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline RatVec rat_vec_from_point(const Point& x)
{
    RatVec v;
    v.reserve(x.size());
    for (Coord c : x) v.emplace_back(static_cast<long>(c));
    return v;
}

inline std::string rat_to_string(const Rat& r)
{
    return r.get_str();
}

inline Rat rat_from_string(const std::string& s)
{
    Rat r(s);
    r.canonicalize();
    return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Solves the square system  M x = rhs  exactly; returns nullopt when M is
// singular.  M is given row-major.
inline std::optional<RatVec> solve_square(std::vector<RatVec> m, RatVec rhs)
{
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat d = m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] /= d;
        rhs[col] /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
    LPStatus status;
    Rat value;
    RatVec solution;
};

/**
 * Exact simplex for  min c.t  s.t.  A t = b, t >= 0, with rational data.
 * Two phases, Bland's rule (anti-cycling).  Sized for the small systems
 * arising from polytope gauges in dimension <= 4.
 */
class ExactSimplex {
public:
    ExactSimplex(std::vector<RatVec> a, RatVec b, RatVec c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), m_(b_.size()), n_(c_.size())
    {
        for (auto& row : a_)
            if (row.size() != n_) throw std::invalid_argument("ExactSimplex: inconsistent matrix width");
        if (a_.size() != m_) throw std::invalid_argument("ExactSimplex: inconsistent matrix height");
    }

    LPResult solve()
    {
        // Orient rows so b >= 0, then append artificial columns.
        for (std::size_t i = 0; i < m_; ++i) {
            if (b_[i] < 0) {
                for (auto& v : a_[i]) v = -v;
                b_[i] = -b_[i];
            }
        }
        std::size_t total = n_ + m_;
        tab_.assign(m_, RatVec(total + 1, 0));
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = a_[i][j];
            tab_[i][n_ + i] = 1;
            tab_[i][total] = b_[i];
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;

        // Phase 1: minimize the sum of the artificials.
        RatVec phase1(total, 0);
        for (std::size_t j = n_; j < total; ++j) phase1[j] = 1;
        Rat v1 = run(phase1, total);
        if (v1 != 0) return {LPStatus::infeasible, 0, {}};

        // Pivot artificials out of the basis where possible; a row whose
        // remaining entries vanish is redundant and can be ignored.
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (tab_[i][j] != 0) {
                    enter = j;
                    break;
                }
            if (enter < n_) pivot(i, enter, total);
        }

        // Phase 2 on the original objective, artificial columns frozen.
        Rat v2 = run(c_, n_);
        if (unbounded_) return {LPStatus::unbounded, 0, {}};
        RatVec x(n_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = tab_[i].back();
        return {LPStatus::optimal, v2, x};
    }

private:
    // Runs simplex restricted to columns [0, ncols) for objective obj.
    Rat run(const RatVec& obj, std::size_t ncols)
    {
        unbounded_ = false;
        const std::size_t total = n_ + m_;
        for (;;) {
            // tab_ rows are kept in basis-canonical form, so the reduced
            // cost of column j is obj[j] - sum_i obj[basis_i] * tab_[i][j].
            std::size_t enter = total;
            for (std::size_t j = 0; j < ncols; ++j) {
                bool basic = false;
                for (std::size_t i = 0; i < m_; ++i)
                    if (basis_[i] == j) {
                        basic = true;
                        break;
                    }
                if (basic) continue;
                Rat rc = obj[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (basis_[i] < obj.size() && obj[basis_[i]] != 0) rc -= obj[basis_[i]] * tab_[i][j];
                if (rc < 0) {
                    enter = j;
                    break;  // Bland: first improving column
                }
            }
            if (enter == total) break;
            std::size_t leave = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_[i][enter] > 0) {
                    if (leave == m_) {
                        leave = i;
                        continue;
                    }
                    Rat lhs = tab_[i].back() * tab_[leave][enter];
                    Rat rhs = tab_[leave].back() * tab_[i][enter];
                    if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
                }
            }
            if (leave == m_) {
                unbounded_ = true;
                return 0;
            }
            pivot(leave, enter, total);
        }
        Rat val = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < obj.size()) val += obj[basis_[i]] * tab_[i].back();
        return val;
    }

    void pivot(std::size_t row, std::size_t col, std::size_t total)
    {
        Rat d = tab_[row][col];
        for (std::size_t j = 0; j <= total; ++j) tab_[row][j] /= d;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || tab_[i][col] == 0) continue;
            Rat f = tab_[i][col];
            for (std::size_t j = 0; j <= total; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    std::vector<RatVec> a_;
    RatVec b_, c_;
    std::size_t m_, n_;
    std::vector<RatVec> tab_;
    std::vector<std::size_t> basis_;
    bool unbounded_ = false;
};

inline LPResult solve_lp_min(std::vector<RatVec> a, RatVec b, RatVec c)
{
    return ExactSimplex(std::move(a), std::move(b), std::move(c)).solve();
}

} // namespace horolip
