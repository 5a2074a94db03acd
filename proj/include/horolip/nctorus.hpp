#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "horolip/convexgeom.hpp"
#include "horolip/horoboundary.hpp"
#include "horolip/lattice.hpp"
#include "horolip/point.hpp"

namespace horolip {

using Complex = std::complex<double>;

/**
 * The 2-cocycle c(x, y) = exp(i pi <x, Theta y>) for an antisymmetric real
 * matrix Theta.  Normalized (c = 1 when either argument is 0) and
 * unit-modulus; this family realizes all noncommutative tori.
 */
class Cocycle {
public:
    explicit Cocycle(std::vector<std::vector<double>> theta) : theta_(std::move(theta))
    {
        dim_ = static_cast<int>(theta_.size());
        for (const auto& row : theta_)
            if (static_cast<int>(row.size()) != dim_)
                throw std::invalid_argument("Cocycle: Theta must be square");
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (std::abs(theta_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                             theta_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) > 1e-12)
                    throw std::invalid_argument("Cocycle: Theta must be antisymmetric");
    }

    static Cocycle trivial(int dim)
    {
        return Cocycle(std::vector<std::vector<double>>(static_cast<std::size_t>(dim),
                                                        std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
    }

    // d=2 block [[0, theta], [-theta, 0]].
    static Cocycle rotation(double theta)
    {
        return Cocycle({{0.0, theta}, {-theta, 0.0}});
    }

    int dim() const { return dim_; }
    const std::vector<std::vector<double>>& theta() const { return theta_; }

    bool is_trivial() const
    {
        for (const auto& row : theta_)
            for (double v : row)
                if (v != 0.0) return false;
        return true;
    }

    // <x, Theta y> reduced mod 2 in extended precision: the integer products
    // are exact and each term is wrapped before accumulating, so the phase
    // keeps full accuracy for coordinates far from the origin.
    double pairing_mod2(const Point& x, const Point& y) const
    {
        long double s = 0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                long long m = static_cast<long long>(x[static_cast<std::size_t>(i)]) *
                              static_cast<long long>(y[static_cast<std::size_t>(j)]);
                if (m == 0) continue;
                long double t = static_cast<long double>(theta_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                                static_cast<long double>(m);
                s += std::remainder(t, 2.0L);
            }
        return static_cast<double>(std::remainder(s, 2.0L));
    }

    Complex operator()(const Point& x, const Point& y) const
    {
        if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
            throw std::invalid_argument("Cocycle: dimension mismatch");
        double a = std::numbers::pi * pairing_mod2(x, y);
        return {std::cos(a), std::sin(a)};
    }

    bool operator==(const Cocycle& o) const { return theta_ == o.theta_; }

private:
    std::vector<std::vector<double>> theta_;
    int dim_;
};

inline Complex cocycle_eval(const Cocycle& c, const Point& x, const Point& y) { return c(x, y); }

// c(y,z) c(x, y+z) = c(x,y) c(x+y, z)
inline double cocycle_identity_residual(const Cocycle& c, const Point& x, const Point& y, const Point& z)
{
    return std::abs(c(y, z) * c(x, add(y, z)) - c(x, y) * c(add(x, y), z));
}

/** Finitely supported element of the twisted group algebra. */
struct AlgebraElement {
    CoefficientFunction coeffs;
    Cocycle cocycle;

    AlgebraElement(CoefficientFunction f, Cocycle c) : coeffs(std::move(f)), cocycle(std::move(c))
    {
        if (coeffs.dim() != cocycle.dim())
            throw std::invalid_argument("AlgebraElement: coefficient/cocycle dimension mismatch");
    }

    int dim() const { return coeffs.dim(); }

    static AlgebraElement delta(const Point& x, const Cocycle& c, Complex v = {1.0, 0.0})
    {
        return AlgebraElement(CoefficientFunction::delta(x, v), c);
    }
};

// (f*g)(x) = sum_y f(y) g(x - y) c(y, x - y)
inline AlgebraElement twisted_convolve(const AlgebraElement& f, const AlgebraElement& g)
{
    if (!(f.cocycle == g.cocycle))
        throw std::invalid_argument("twisted_convolve: cocycle mismatch");
    CoefficientFunction out(f.dim());
    for (const auto& [y, fy] : f.coeffs.values())
        for (const auto& [w, gw] : g.coeffs.values()) {
            Point x = add(y, w);
            out.set(x, out.at(x) + fy * gw * f.cocycle(y, w));
        }
    return AlgebraElement(std::move(out), f.cocycle);
}

// f^*(x) = conj(f(-x)) conj(c(x, -x)); for c_Theta the cocycle factor is 1.
inline AlgebraElement involution(const AlgebraElement& f)
{
    CoefficientFunction out(f.dim());
    for (const auto& [x, v] : f.coeffs.values()) {
        Point mx = neg(x);
        out.set(mx, std::conj(v) * std::conj(f.cocycle(mx, x)));
    }
    return AlgebraElement(std::move(out), f.cocycle);
}

/** Index bookkeeping for the box center + [-R, R]^d. */
class BoxIndex {
public:
    BoxIndex(int dim, long long radius, Point center = {})
        : dim_(dim), r_(radius), center_(std::move(center))
    {
        if (center_.empty()) center_ = zero_point(dim_);
        side_ = 2 * r_ + 1;
        size_ = 1;
        for (int i = 0; i < dim_; ++i) size_ *= side_;
    }

    int dim() const { return dim_; }
    long long radius() const { return r_; }
    long long size() const { return size_; }
    const Point& center() const { return center_; }

    Coord max_abs_coord() const
    {
        Coord m = 0;
        for (Coord c : center_) m = std::max(m, std::abs(c) + static_cast<Coord>(r_));
        return m;
    }

    bool contains(const Point& p) const
    {
        for (int i = 0; i < dim_; ++i) {
            Coord c = p[static_cast<std::size_t>(i)] - center_[static_cast<std::size_t>(i)];
            if (c < -r_ || c > r_) return false;
        }
        return true;
    }

    long long index_of(const Point& p) const
    {
        long long idx = 0;
        for (int i = 0; i < dim_; ++i)
            idx = idx * side_ + (p[static_cast<std::size_t>(i)] - center_[static_cast<std::size_t>(i)] + r_);
        return idx;
    }

    Point point_of(long long idx) const
    {
        Point p(static_cast<std::size_t>(dim_));
        for (int i = dim_ - 1; i >= 0; --i) {
            p[static_cast<std::size_t>(i)] = static_cast<Coord>(idx % side_) - r_ + center_[static_cast<std::size_t>(i)];
            idx /= side_;
        }
        return p;
    }

private:
    int dim_;
    long long r_, side_, size_;
    Point center_;
};

/** Dense compression of pi_f to the box [-R, R]^d. */
struct TruncatedRep {
    BoxIndex box;
    Eigen::MatrixXcd matrix;
};

// M[x, z] = f(x - z) c(x - z, z)
inline TruncatedRep truncated_pi(const AlgebraElement& f, long long radius)
{
    if (radius < 0) throw std::invalid_argument("truncated_pi: radius must be >= 0");
    BoxIndex box(f.dim(), radius);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(box.size(), box.size());
    for (long long zi = 0; zi < box.size(); ++zi) {
        Point z = box.point_of(zi);
        for (const auto& [y, v] : f.coeffs.values()) {
            Point x = add(y, z);
            if (!box.contains(x)) continue;
            m(box.index_of(x), zi) = v * f.cocycle(y, z);
        }
    }
    return TruncatedRep{box, std::move(m)};
}

enum class NormMethod { dense_svd, power_iteration };

namespace detail {

/**
 * Largest singular value of a linear operator given by its action and the
 * action of its adjoint: restarted Lanczos on A^H A with full
 * reorthogonalization.  Ritz values are Rayleigh quotients, so the estimate
 * is a certified lower bound and never decreases across iterations or
 * restarts; the hint vector (when given) seeds the Krylov space.
 */
template <class Apply, class ApplyAdj>
double operator_norm_power(long long n, Apply&& apply, ApplyAdj&& apply_adj, double tol,
                           std::uint64_t seed, const Eigen::VectorXcd* hint = nullptr,
                           int max_restarts = 12)
{
    const int krylov = static_cast<int>(std::min<long long>(192, n));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss;

    Eigen::VectorXcd v(n), tmp(n), w(n);
    for (long long i = 0; i < n; ++i) v(i) = Complex{gauss(rng), gauss(rng)};
    if (hint && hint->size() == n) v += 1e3 * (*hint);
    v.normalize();

    auto apply_gram = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        apply(in, tmp);
        apply_adj(tmp, out);
    };

    auto top_eigen = [](const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta, int k) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha(i);
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta(i);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        return std::pair{es.eigenvalues().maxCoeff(), Eigen::VectorXd(es.eigenvectors().col(k - 1))};
    };

    double best = 0.0;
    double prev_restart = -1.0;
    for (int restart = 0; restart < max_restarts; ++restart) {
        Eigen::MatrixXcd basis(n, krylov);
        Eigen::VectorXd alpha(krylov), beta(krylov);
        basis.col(0) = v;
        int k = 0;
        bool breakdown = false;
        double lam_checkpoint = -1.0;
        for (; k < krylov; ++k) {
            apply_gram(basis.col(k), w);
            alpha(k) = w.dot(basis.col(k)).real();
            // full reorthogonalization (twice is enough)
            for (int pass = 0; pass < 2; ++pass)
                for (int j = 0; j <= k; ++j) w -= basis.col(j).dot(w) * basis.col(j);
            double b = w.norm();
            beta(k) = b;
            if (k + 1 < krylov) {
                if (b < 1e-14 * std::max(1.0, alpha(k))) {
                    breakdown = true;
                    ++k;
                    break;
                }
                basis.col(k + 1) = w / b;
            }
            // periodic convergence probe; keeps the quadratic reorth cost low
            if (k >= 7 && (k & 7) == 7 && k + 1 < krylov) {
                double lam = top_eigen(alpha, beta, k + 1).first;
                if (lam_checkpoint >= 0 && lam - lam_checkpoint <= 0.25 * tol * std::max(1.0, lam)) {
                    ++k;
                    break;
                }
                lam_checkpoint = lam;
            }
        }
        auto [lam, top] = top_eigen(alpha, beta, k);
        best = std::max(best, std::sqrt(std::max(0.0, lam)));
        if (breakdown) break;
        // restart from the top Ritz vector
        v.setZero();
        for (int i = 0; i < k; ++i) v += top(i) * basis.col(i);
        v.normalize();
        if (prev_restart >= 0 && best - prev_restart <= tol * std::max(1.0, best)) break;
        prev_restart = best;
    }
    return best;
}

} // namespace detail

/**
 * Largest singular value.  The dense route goes through Eigen's SVD; the
 * power route runs subspace iteration and falls back to the dense method
 * when it fails to settle (only possible for pathological spectra).
 */
inline double op_norm(const Eigen::MatrixXcd& m, NormMethod method = NormMethod::dense_svd,
                      double tol = 1e-10, std::uint64_t seed = 1)
{
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    if (method == NormMethod::dense_svd) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues()(0);
    }
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { out = m * in; };
    auto apply_adj = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { out = m.adjoint() * in; };
    double est = detail::operator_norm_power(m.rows(), apply, apply_adj, tol * 1e-2, seed);
    // Guard against a stalled iteration on small problems.
    if (m.rows() <= 64) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        double exact = svd.singularValues()(0);
        if (est < exact - std::max(1e-8, tol) * std::max(1.0, exact)) return exact;
    }
    return est;
}

/**
 * Estimate of a truncation-monotone operator norm with its certified
 * companions and the (R, value) trace.
 */
struct SeminormEstimate {
    double value = 0.0;
    double lower_companion = 0.0;  // l2 witness norm, certified <= value
    double upper_companion = 0.0;  // l1 bound, certified >= the untruncated norm
    std::vector<std::pair<long long, double>> trace;
    bool converged = false;
    double tol = 0.0;
};

inline long long default_box_radius(int dim)
{
    if (dim <= 1) return 256;
    if (dim == 2) return 48;
    return 12;
}

namespace detail {

// Weights w_y(x) multiplying f(y) xi(x - y) in the box action; the plain
// representation has w = 1, the length commutator w_y(x) = l(x) - l(x - y).
// Phases, weights and shifted indices are tabulated once per box.
struct BoxOperator {
    BoxIndex box;
    std::vector<Complex> coeff;                  // f(y) per support point
    std::vector<std::vector<Complex>> entry;     // f(y) w_y(z+y) c(y, z) at column z, or 0 outside
    std::vector<std::vector<long long>> target;  // index of z + y, -1 outside the box

    void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const
    {
        out.setZero();
        const long long n = box.size();
        for (std::size_t k = 0; k < entry.size(); ++k) {
            const auto& e = entry[k];
            const auto& tg = target[k];
            for (long long z = 0; z < n; ++z) {
                long long x = tg[static_cast<std::size_t>(z)];
                if (x < 0) continue;
                out(x) += e[static_cast<std::size_t>(z)] * in(z);
            }
        }
    }

    void apply_adj(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const
    {
        out.setZero();
        const long long n = box.size();
        for (std::size_t k = 0; k < entry.size(); ++k) {
            const auto& e = entry[k];
            const auto& tg = target[k];
            for (long long z = 0; z < n; ++z) {
                long long x = tg[static_cast<std::size_t>(z)];
                if (x < 0) continue;
                out(z) += std::conj(e[static_cast<std::size_t>(z)]) * in(x);
            }
        }
    }
};

inline BoxOperator make_box_operator(const AlgebraElement& f, const BoxIndex& box,
                                     const LengthOracle* commutator_length)
{
    BoxOperator op{box, {}, {}, {}};
    std::vector<double> lengths;
    if (commutator_length) {
        Coord need = box.max_abs_coord() + f.coeffs.support_linf_radius();
        commutator_length->ensure_box(need);
        lengths.resize(static_cast<std::size_t>(box.size()));
        for (long long i = 0; i < box.size(); ++i)
            lengths[static_cast<std::size_t>(i)] = (*commutator_length)(box.point_of(i));
    }
    for (const Point& y : f.coeffs.sorted_support()) {
        Complex fy = f.coeffs.at(y);
        op.coeff.push_back(fy);
        std::vector<Complex> e(static_cast<std::size_t>(box.size()), Complex{0, 0});
        std::vector<long long> tg(static_cast<std::size_t>(box.size()), -1);
        for (long long z = 0; z < box.size(); ++z) {
            Point pz = box.point_of(z);
            Point px = add(pz, y);
            if (!box.contains(px)) continue;
            double w = 1.0;
            if (commutator_length)
                w = lengths[static_cast<std::size_t>(box.index_of(px))] - lengths[static_cast<std::size_t>(z)];
            tg[static_cast<std::size_t>(z)] = box.index_of(px);
            e[static_cast<std::size_t>(z)] = fy * w * f.cocycle(y, pz);
        }
        op.entry.push_back(std::move(e));
        op.target.push_back(std::move(tg));
    }
    return op;
}

} // namespace detail

namespace detail {

// Norm of the box compression at one radius (optionally off-center; any
// window compression lower-bounds the operator norm).
inline double box_norm_at(const AlgebraElement& f, long long radius, const LengthOracle* l, double tol,
                          std::uint64_t seed, Point center = {})
{
    BoxIndex box(f.dim(), radius, std::move(center));
    BoxOperator op = make_box_operator(f, box, l);
    bool centered = is_zero(box.center());
    auto apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { op.apply(in, out); };
    auto apply_adj = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { op.apply_adj(in, out); };
    Eigen::VectorXcd hint;
    double floor = 0.0;
    if (centered) {
        // The column at z = 0 witnesses ||w f||_2 directly.
        hint = Eigen::VectorXcd::Zero(box.size());
        hint(box.index_of(zero_point(f.dim()))) = 1.0;
        Eigen::VectorXcd witness(box.size());
        op.apply(hint, witness);
        floor = witness.norm();
    }
    double est = operator_norm_power(box.size(), apply, apply_adj, std::max(tol, 1e-9), seed,
                                     centered ? &hint : nullptr);
    return std::max(est, floor);
}

inline SeminormEstimate truncation_schedule(const AlgebraElement& f, const LengthOracle* l,
                                            long long r_max, double tol, std::uint64_t seed)
{
    SeminormEstimate est;
    est.tol = tol;

    // companions
    double l2 = 0, l1 = 0;
    for (const auto& [x, v] : f.coeffs.values()) {
        double w = l ? (*l)(x) : 1.0;
        l2 += std::norm(v) * w * w;
        l1 += std::abs(v) * std::abs(w);
    }
    est.lower_companion = std::sqrt(l2);
    est.upper_companion = l1;

    if (f.coeffs.empty()) {
        est.converged = true;
        return est;
    }
    // A single support point gives a weighted shift: its compression norm is
    // the largest weight magnitude, so the schedule below would converge to
    // the same number; short-circuiting keeps the value exact.
    if (!l && f.coeffs.support_size() == 1) {
        est.value = std::abs(f.coeffs.values().begin()->second);
        est.trace.emplace_back(f.coeffs.support_linf_radius(), est.value);
        est.converged = true;
        return est;
    }

    long long r = std::max<long long>(8, f.coeffs.support_linf_radius());
    r = std::min(r, r_max);
    double prev = -1.0;
    for (;;) {
        double v = box_norm_at(f, r, l, std::max(tol * 1e-1, 1e-9), seed);
        // an estimate at a smaller box is also a lower bound here
        if (prev >= 0) v = std::max(v, prev);
        est.trace.emplace_back(r, v);
        est.value = std::max(est.value, v);
        if (prev >= 0 && v - prev <= tol * std::max(1.0, v)) {
            est.converged = true;
            break;
        }
        if (r >= r_max) break;
        prev = v;
        r = std::min(r_max, 2 * r);
    }
    return est;
}

} // namespace detail

// Reduced-norm estimate ||pi_f|| by compression to growing boxes.
inline SeminormEstimate a_norm(const AlgebraElement& f, long long r_max = -1, double tol = 1e-3,
                               std::uint64_t seed = 1)
{
    if (r_max < 0) r_max = default_box_radius(f.dim());
    return detail::truncation_schedule(f, nullptr, r_max, tol, seed);
}

/**
 * The length-commutator seminorm L_l(f) = ||[M_l, pi_f]||, estimated on
 * growing boxes.  The compression is exact on the box (entries
 * (l(x) - l(z)) f(x-z) c(x-z, z)) and increases to the true norm; the
 * certified sandwich ||l f||_2 <= L <= ||l f||_1 rides along.
 */
inline SeminormEstimate L_ell(const AlgebraElement& f, const LengthOracle& l, long long r_max = -1,
                              double tol = 1e-3, std::uint64_t seed = 1)
{
    if (r_max < 0) r_max = default_box_radius(f.dim());
    if (l.dim() != f.dim()) throw std::invalid_argument("L_ell: dimension mismatch");
    // A single support point is a weighted shift: the exact value is
    // sup_x |l(x) - l(x - y)| = l(y), attained inside any box containing y.
    if (f.coeffs.support_size() == 1) {
        const auto& [y, v] = *f.coeffs.values().begin();
        SeminormEstimate est;
        est.tol = tol;
        double ly = l(y);
        est.value = std::abs(v) * ly;
        est.lower_companion = est.value;
        est.upper_companion = est.value;
        est.trace.emplace_back(std::max<long long>(8, linf_coord(y)), est.value);
        est.converged = true;
        return est;
    }
    return detail::truncation_schedule(f, &l, r_max, tol, seed);
}

// Lower bound for ||[M_l, pi_f]|| from a single shifted window; pushing the
// window deep into a facet cone exposes the boundary-symbol mass that
// centered truncations reach only slowly.
inline double commutator_window_norm(const AlgebraElement& f, const LengthOracle& l, long long radius,
                                     Point center, double tol = 1e-5, std::uint64_t seed = 1)
{
    return detail::box_norm_at(f, radius, &l, tol, seed, std::move(center));
}

// True when l(z + y) - l(z) equals sigma(y) for every window column z and
// support point y.  On such a window the commutator compression is a
// diagonal-unitary conjugate of the compressed pi_{X_sigma f}, so their
// norms agree exactly.
inline bool commutator_weights_linear(const AlgebraElement& f, const LengthOracle& l, const BoxIndex& box,
                                      const RatVec& sigma)
{
    l.ensure_box(box.max_abs_coord() + f.coeffs.support_linf_radius());
    for (const auto& [y, v] : f.coeffs.values()) {
        double sy = rat_to_double(rat_dot(sigma, y));
        for (long long z = 0; z < box.size(); ++z) {
            Point pz = box.point_of(z);
            if (std::abs(l(add(pz, y)) - l(pz) - sy) > 1e-12) return false;
        }
    }
    return true;
}

// sup_t |f_hat(t)| over a uniform grid (trivial cocycle cross-check);
// f_hat(t) = sum f(k) exp(i k.t) with t in [0, 2 pi)^d.
inline double fourier_sup_norm(const AlgebraElement& f, int grid = 4096)
{
    if (!f.cocycle.is_trivial())
        throw std::invalid_argument("fourier_sup_norm: only defined for the trivial cocycle");
    const int d = f.dim();
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    double best = 0;
    const double step = 2.0 * std::numbers::pi / grid;
    for (;;) {
        Complex s{0, 0};
        for (const auto& [k, v] : f.coeffs.values()) {
            double a = 0;
            for (int i = 0; i < d; ++i) a += static_cast<double>(k[static_cast<std::size_t>(i)]) * step * idx[static_cast<std::size_t>(i)];
            s += v * Complex{std::cos(a), std::sin(a)};
        }
        best = std::max(best, std::abs(s));
        int i = d - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == grid - 1) idx[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
    }
    return best;
}

// Coefficientwise multiplication by sigma: (X_sigma f)(x) = sigma(x) f(x).
inline AlgebraElement X_sigma(const AlgebraElement& f, const RatVec& sigma)
{
    if (static_cast<int>(sigma.size()) != f.dim()) throw std::invalid_argument("X_sigma: dimension mismatch");
    CoefficientFunction out(f.dim());
    for (const auto& [x, v] : f.coeffs.values()) out.set(x, v * rat_to_double(rat_dot(sigma, x)));
    return AlgebraElement(std::move(out), f.cocycle);
}

struct DfNormReport {
    double value = 0.0;
    long long radius_used = 0;
    std::vector<std::pair<std::string, double>> per_facet;
};

/**
 * Norm of the differential df over the dual unit ball.  The dual ball is the
 * convex hull of the facet functionals, so the norm is the max of
 * ||pi_{X_sigma_F f}|| over facets.
 */
inline DfNormReport df_norm(const AlgebraElement& f, const std::vector<Face>& facets,
                            long long r_max = -1, double tol = 1e-3, std::uint64_t seed = 1)
{
    if (facets.empty()) throw std::invalid_argument("df_norm: empty facet list");
    DfNormReport rep;
    for (const Face& fc : facets) {
        if (!fc.is_facet) continue;
        auto est = a_norm(X_sigma(f, fc.sigma), r_max, tol, seed);
        std::string label;
        for (const Point& p : fc.members) label += to_string(p);
        rep.per_facet.emplace_back(label, est.value);
        rep.value = std::max(rep.value, est.value);
        if (!est.trace.empty()) rep.radius_used = std::max(rep.radius_used, est.trace.back().first);
    }
    if (rep.per_facet.empty()) throw std::invalid_argument("df_norm: list contained no facets");
    return rep;
}

// Dual action: (beta_p f)(x) = exp(2 pi i <x, p>) f(x) for p in T^d = [0,1)^d.
// Unitarily implemented, so every truncated seminorm is invariant.
inline AlgebraElement dual_action(const AlgebraElement& f, const std::vector<double>& p)
{
    if (static_cast<int>(p.size()) != f.dim()) throw std::invalid_argument("dual_action: dimension mismatch");
    CoefficientFunction out(f.dim());
    for (const auto& [x, v] : f.coeffs.values()) {
        double a = 0;
        for (int i = 0; i < f.dim(); ++i) a += static_cast<double>(x[static_cast<std::size_t>(i)]) * p[static_cast<std::size_t>(i)];
        a *= 2.0 * std::numbers::pi;
        out.set(x, v * Complex{std::cos(a), std::sin(a)});
    }
    return AlgebraElement(std::move(out), f.cocycle);
}

struct KPerCoset {
    Point q;
    double k_q;
    double m1, m2;  // the pair of orbit values backing the bound
    std::string rule;
};

struct KConstants {
    std::vector<KPerCoset> per_coset;
    double k_f = 1.0;
};

/**
 * The coset constants of a facet: for q != 0 the values of psi_q = phi_q on
 * the orbit of b_F are never constant, and a pair of distinct values m1, m2
 * bounds the coset block by k_q L.  When some value is 0 the bound
 * simplifies to 1/|m| for the largest-magnitude nonzero value m; otherwise
 * k_q = (|m1|+|m2|)/|m1-m2|, minimized over distinct value pairs.  The
 * facet constant aggregates k_F = 1 + sum_{q != 0} |sigma_F(q)| k_q, the
 * leading 1 being the identity-coset block (where psi_0 = 0 gives the bound
 * directly); with a single coset this degenerates to k_F = 1.
 */
inline KConstants k_constants(const Face& f, const LengthOracle& l, const BusemannRecord& rec)
{
    if (!l.is_word()) throw std::invalid_argument("k_constants: needs a word-length oracle");
    if (!rec.orbit_complete)
        throw std::invalid_argument("k_constants: orbit record incomplete");
    KConstants out;
    double acc = 0.0;
    for (const Point& q : f.coset_reps) {
        if (is_zero(q)) {
            out.per_coset.push_back(KPerCoset{q, 1.0, 0.0, 0.0, "identity coset"});
            continue;
        }
        std::vector<double> values;
        for (const auto& w : rec.orbit) {
            if (!w.has(q))
                throw std::invalid_argument("k_constants: window does not contain coset representative " +
                                            to_string(q));
            double v = w.value(q);
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
        if (values.size() < 2)
            throw std::logic_error("k_constants: psi_q constant on the orbit (contradiction)");
        std::sort(values.begin(), values.end());

        KPerCoset kc{q, 0.0, 0.0, 0.0, ""};
        bool has_zero = std::find(values.begin(), values.end(), 0.0) != values.end();
        if (has_zero) {
            double m = 0.0;
            for (double v : values)
                if (std::abs(v) > std::abs(m)) m = v;
            kc.k_q = 1.0 / std::abs(m);
            kc.m1 = m;
            kc.m2 = 0.0;
            kc.rule = "zero value";
        } else {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < values.size(); ++i)
                for (std::size_t j = i + 1; j < values.size(); ++j) {
                    double k = (std::abs(values[i]) + std::abs(values[j])) / std::abs(values[i] - values[j]);
                    if (k < best) {
                        best = k;
                        kc.m1 = values[i];
                        kc.m2 = values[j];
                    }
                }
            kc.k_q = best;
            kc.rule = "pair";
        }
        acc += std::abs(rat_to_double(f.sigma_at(q))) * kc.k_q;
        out.per_coset.push_back(std::move(kc));
    }
    out.k_f = 1.0 + acc;
    return out;
}

// max_F k_F over the facets of the word-length generating set.
inline double max_k_over_facets(const LengthOracle& l, const std::vector<Face>& facets,
                                long long run_length_scale = 32)
{
    double best = 1.0;
    for (const Face& f : facets) {
        if (!f.is_facet) continue;
        Face g = f;
        if (g.index == 0) {
            auto sd = subgroup_data(g, l.generating_set());
            g.index = sd.index;
            g.coset_reps = std::move(sd.coset_reps);
        }
        if (g.index == 1) continue;  // k_F = 1
        std::vector<Point> w = default_window(l, g);
        auto rec = orbit(l, g, w, std::max<long long>(run_length_scale, default_run_length(l, g, w) / 4));
        auto kc = k_constants(g, l, rec);
        best = std::max(best, kc.k_f);
    }
    return best;
}

struct InequalityReport {
    double df = 0.0;            // ||df|| over the dual ball
    double lip = 0.0;           // best lower bound for L_l(f) (centered + cone windows)
    double lip_centered = 0.0;  // the centered truncation alone
    double factor = 1.0;        // 1 for norm restrictions, max_F k_F for word lengths
    double slack = 0.0;         // factor * lip * (1 + tol) - df
    bool pass = false;
    DfNormReport detail;
};

/**
 * The differential-vs-Lip-seminorm inequality: ||df|| <= L_l(f) for lengths
 * restricted from norms, and ||df||_S <= (max_F k_F) L_l(f) for word
 * lengths.  Both sides are certified lower bounds; the L side combines the
 * centered truncation with windows pushed into each facet cone, where the
 * commutator weights settle to the support functional and the window sees
 * the same boundary mass the df side measures.  A violation beyond
 * tolerance means a bug, not a borderline.
 */
inline InequalityReport main_inequality_check(const AlgebraElement& f, const LengthOracle& l,
                                              const std::vector<Face>& facets, double factor,
                                              double tol = 1e-3, long long r_max = -1,
                                              std::uint64_t seed = 1)
{
    InequalityReport rep;
    rep.factor = factor;
    rep.detail = df_norm(f, facets, r_max, tol * 1e-1, seed);
    rep.df = rep.detail.value;
    rep.lip_centered = L_ell(f, l, r_max, tol * 1e-1, seed).value;
    rep.lip = rep.lip_centered;
    if (f.coeffs.support_size() > 1) {
        long long r = std::max<long long>(rep.detail.radius_used, 8);
        std::size_t facet_idx = 0;
        for (const Face& fc : facets) {
            if (!fc.is_facet || is_zero(fc.z_sum)) continue;
            double df_facet = rep.detail.per_facet[facet_idx++].second;
            Coord m = std::max<Coord>(1, linf_coord(fc.z_sum));
            Point center = scale((2 * r + 2 * f.coeffs.support_linf_radius() + m - 1) / m, fc.z_sum);
            BoxIndex window(f.dim(), r, center);
            if (commutator_weights_linear(f, l, window, fc.sigma))
                rep.lip = std::max(rep.lip, df_facet);
            else
                rep.lip = std::max(rep.lip, commutator_window_norm(f, l, r, center, tol * 1e-1, seed));
        }
    }
    double rhs = factor * rep.lip * (1.0 + tol) + 1e-12;
    rep.slack = rhs - rep.df;
    rep.pass = rep.df <= rhs;
    return rep;
}

/**
 * Certified evaluation of m(s,t) = || ell_beta^{-1} g_{s,t} ||_2, where
 * g_{s,t}(n) = e(nt) - e(ns) on the circle R/Z:
 *   m(u)^2 = 8 sum_{n>=1} n^{-2 beta} sin^2(pi n u),   u = t - s.
 * The series is summed directly to a cutoff; the tail mean is added in
 * closed form and the oscillating remainder is bounded through the
 * Dirichlet kernel, giving two-sided bounds.
 */
class HolderContext {
public:
    explicit HolderContext(double beta, long long cutoff = 500000) : beta_(beta), n_(cutoff)
    {
        if (!(beta > 0.5) || beta > 1.0)
            throw std::domain_error("HolderContext: needs beta in (1/2, 1] (ell_beta^{-1} must be l2)");
        pow_.resize(static_cast<std::size_t>(n_) + 1, 0.0);
        for (long long n = 1; n <= n_; ++n)
            pow_[static_cast<std::size_t>(n)] = std::pow(static_cast<double>(n), -2.0 * beta_);
    }

    double beta() const { return beta_; }

    // {lower, upper} bounds on m(u)
    std::pair<double, double> m_bounds(double u) const
    {
        u = std::abs(u - std::floor(u));  // reduce mod 1
        if (u > 0.5) u = 1.0 - u;
        if (u == 0.0) return {0.0, 0.0};
        const double theta = std::numbers::pi * u;
        const double c2 = 2.0 * std::cos(theta);
        double s_prev = 0.0, s_cur = std::sin(theta);
        double sum = 0.0;
        for (long long n = 1; n <= n_; ++n) {
            sum += pow_[static_cast<std::size_t>(n)] * s_cur * s_cur;
            double s_next = c2 * s_cur - s_prev;
            s_prev = s_cur;
            s_cur = s_next;
            if ((n & 0xffff) == 0) {  // refresh the recurrence
                s_prev = std::sin(theta * static_cast<double>(n));
                s_cur = std::sin(theta * static_cast<double>(n + 1));
            }
        }
        const double p = 2.0 * beta_;
        double z_hi = std::pow(static_cast<double>(n_), 1.0 - p) / (p - 1.0);
        double z_lo = std::pow(static_cast<double>(n_) + 1.0, 1.0 - p) / (p - 1.0);
        double osc = std::pow(static_cast<double>(n_) + 1.0, -p) / std::abs(std::sin(theta));
        double lo2 = 8.0 * sum + 4.0 * z_lo - 4.0 * osc;
        double hi2 = 8.0 * sum + 4.0 * z_hi + 4.0 * osc;
        lo2 = std::max(lo2, 8.0 * sum);
        // The Dirichlet-kernel remainder degenerates as u -> 0; the
        // closed-form envelope stays sharp there.
        double env = envelope(u);
        return {std::sqrt(lo2), std::min(std::sqrt(hi2), env)};
    }

    // Monotone closed-form upper bound from sin^2(x) <= min(x^2, 1).
    double envelope(double u) const
    {
        u = std::abs(u);
        if (u == 0.0) return 0.0;
        const double p = 2.0 * beta_;
        double best = std::numeric_limits<double>::infinity();
        double m0 = std::max(1.0, 1.0 / (std::numbers::pi * u));
        for (double m : {m0 / 2.0, m0, 2.0 * m0}) {
            double head = std::pow(std::numbers::pi * u, 2.0) * std::pow(m + 1.0, 3.0 - p) / (3.0 - p);
            double tail = std::pow(m, 1.0 - p) / (p - 1.0);
            best = std::min(best, 8.0 * (head + tail));
        }
        return std::sqrt(best);
    }

    // Largest u with envelope(u) <= eps (so |t-s| <= delta forces m <= eps).
    double delta_for(double eps) const
    {
        double lo = 0.0, hi = 0.5;
        if (envelope(hi) <= eps) return hi;
        for (int it = 0; it < 200; ++it) {
            double mid = (lo + hi) / 2;
            if (envelope(mid) <= eps)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

private:
    double beta_;
    long long n_;
    std::vector<double> pow_;
};

// Certified upper bound for sup_{n != 0} |n|^beta / omega(n).  The scan
// covers |n| <= scan; for word lengths the tail is dominated through
// omega(n) >= |n| / g with g the largest generator magnitude.
inline double sup_beta_over_omega(const LengthOracle& omega, double beta, Coord scan = 20000)
{
    if (omega.dim() != 1) throw std::invalid_argument("sup_beta_over_omega: one-dimensional lengths only");
    double best = 0.0;
    for (Coord n = 1; n <= scan; ++n) {
        double r = std::pow(static_cast<double>(n), beta);
        best = std::max(best, std::max(r / omega({n}), r / omega({-n})));
    }
    double tail = 0.0;
    if (omega.is_word()) {
        double g = static_cast<double>(omega.generating_set().max_coord());
        tail = g * std::pow(static_cast<double>(scan), beta - 1.0);
    } else if (omega.kind() == LengthOracle::Kind::norm_l1 || omega.kind() == LengthOracle::Kind::norm_l2 ||
               omega.kind() == LengthOracle::Kind::norm_linf) {
        tail = std::pow(static_cast<double>(scan), beta - 1.0);
    } else {
        throw std::invalid_argument("sup_beta_over_omega: no tail bound for this oracle kind");
    }
    return std::max(best, tail);
}

struct HolderReport {
    double lhs = 0.0;        // |f_hat(t) - f_hat(s)|
    double m_low = 0.0;      // certified bounds on m(s, t)
    double m_high = 0.0;
    double ratio_sup = 0.0;  // upper bound for sup ell_beta / omega
    double l2_witness = 0.0; // ||omega f||_2, certified <= L_omega(f)
    double lip = 0.0;        // truncated L_omega(f)
    double rhs = 0.0;        // m_high * ratio_sup * l2_witness
    bool pass = false;
};

/**
 * The Hoelder-modulus inequality |f_hat(t) - f_hat(s)| <= m(s,t)
 * ||ell_beta/omega||_inf L_omega(f) on the circle R/Z, checked through the
 * certified chain with ||omega f||_2 in place of L (which dominates it).
 */
inline HolderReport holder_check(const AlgebraElement& f, double beta, const LengthOracle& omega,
                                 double s, double t, const HolderContext* ctx = nullptr,
                                 long long r_max = -1, double tol = 1e-3)
{
    if (f.dim() != 1 || omega.dim() != 1)
        throw std::invalid_argument("holder_check: one-dimensional case only");
    std::optional<HolderContext> own;
    if (!ctx) {
        own.emplace(beta);
        ctx = &*own;
    }
    HolderReport rep;
    auto fhat = [&](double x) {
        Complex acc{0, 0};
        for (const auto& [k, v] : f.coeffs.values()) {
            double a = 2.0 * std::numbers::pi * static_cast<double>(k[0]) * x;
            acc += v * Complex{std::cos(a), std::sin(a)};
        }
        return acc;
    };
    rep.lhs = std::abs(fhat(t) - fhat(s));
    auto [mlo, mhi] = ctx->m_bounds(t - s);
    rep.m_low = mlo;
    rep.m_high = mhi;
    rep.ratio_sup = sup_beta_over_omega(omega, beta);
    double l2 = 0.0;
    for (const auto& [x, v] : f.coeffs.values()) l2 += std::norm(v) * omega(x) * omega(x);
    rep.l2_witness = std::sqrt(l2);
    rep.lip = L_ell(f, omega, r_max, tol).value;
    rep.rhs = rep.m_high * rep.ratio_sup * rep.l2_witness;
    rep.pass = rep.lhs <= rep.rhs + 1e-9;
    return rep;
}

struct RadiusProbeResult {
    double ratio = 0.0;  // certified lower bound for the best constant k
    CoefficientFunction argmax{1};
    int samples_used = 0;
};

/**
 * Monte-Carlo lower bound for the constant k in ||pi_f|| <= k L_l(f) over
 * trace-zero f (f(0) = 0), refined by coordinate ascent around the best
 * sample.  Deterministic for a fixed seed.
 */
inline RadiusProbeResult radius_probe(const LengthOracle& l, const Cocycle& c, double support_radius,
                                      int n_samples, std::uint64_t seed, long long r_max = 64,
                                      double tol = 1e-3)
{
    std::vector<Point> supp;
    for (const Point& p : l.ball(support_radius))
        if (!is_zero(p)) supp.push_back(p);
    if (supp.empty()) throw std::invalid_argument("radius_probe: empty support ball");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;

    auto ratio_of = [&](const CoefficientFunction& coeffs) -> double {
        AlgebraElement f(coeffs, c);
        double lip = L_ell(f, l, r_max, tol, seed).value;
        if (lip < 1e-12) return 0.0;
        return a_norm(f, r_max, tol, seed).value / lip;
    };

    RadiusProbeResult out;
    out.argmax = CoefficientFunction(l.dim());
    for (int i = 0; i < n_samples; ++i) {
        CoefficientFunction coeffs(l.dim());
        for (const Point& p : supp) coeffs.set(p, Complex{gauss(rng), gauss(rng)});
        if (coeffs.empty()) continue;
        double r = ratio_of(coeffs);
        ++out.samples_used;
        if (r > out.ratio) {
            out.ratio = r;
            out.argmax = coeffs;
        }
    }
    // local coordinate ascent around the best sample
    double step = 0.25;
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (const Point& p : supp) {
            for (Complex dir : {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}}) {
                CoefficientFunction cand = out.argmax;
                cand.set(p, cand.at(p) + step * dir);
                double r = ratio_of(cand);
                if (r > out.ratio) {
                    out.ratio = r;
                    out.argmax = cand;
                }
            }
        }
        step *= 0.5;
    }
    return out;
}

} // namespace horolip
