#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "horolip/intlattice.hpp"
#include "horolip/lattice.hpp"
#include "horolip/point.hpp"
#include "horolip/rational.hpp"

namespace horolip {

struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct rank_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/**
 * A face of K_S = conv(S), recorded as the subset F = {s in S : sigma(s) = 1}
 * together with one exact support functional.  For facets sigma is the unique
 * solution of the defining linear system; for lower-dimensional faces the
 * stored sigma is the average of the functionals of the facets containing the
 * face (an interior point of the normal cone, so equality holds exactly on F),
 * and sigma_unique is false.
 */
struct Face {
    std::vector<Point> members;      // sorted
    RatVec sigma;                    // support functional, sigma(s) <= 1 on S, = 1 exactly on members
    bool is_facet = false;
    bool sigma_unique = false;
    Point z_sum;                     // sum of the members
    long long index = 0;             // [Z^d : G_F] for facets; 0 when not computed
    std::vector<Point> coset_reps;   // 0 first, then by (word length, lex); facets only

    Rat sigma_at(const Point& x) const { return rat_dot(sigma, x); }
    std::size_t size() const { return members.size(); }
};

namespace detail {

inline void combinations(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    if (k > n || k == 0) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/**
 * All faces of K_S (every dimension), facets flagged.  Facets are found by
 * exact hyperplane enumeration over d-subsets of S; the remaining faces are
 * the nonempty intersections of facet member sets.  Exactness matters here:
 * the functionals feed equality tests downstream.
 */
inline std::vector<Face> enumerate_faces(const GeneratingSet& s)
{
    const int d = s.dim();
    const auto& pts = s.elements();
    {
        IntLattice lat(d, pts);
        if (!lat.full_rank())
            throw dimension_error("enumerate_faces: conv(S) is not full-dimensional");
    }

    // Facets: solve sigma(s_i) = 1 on d-subsets, keep feasible functionals.
    std::map<std::vector<Point>, RatVec> facet_map;
    detail::combinations(pts.size(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& idx) {
        std::vector<RatVec> m;
        RatVec rhs;
        for (std::size_t i : idx) {
            m.push_back(rat_vec_from_point(pts[i]));
            rhs.emplace_back(1);
        }
        auto sigma = solve_square(std::move(m), std::move(rhs));
        if (!sigma) return;
        std::vector<Point> members;
        for (const Point& p : pts) {
            Rat v = rat_dot(*sigma, p);
            if (v > 1) return;
            if (v == 1) members.push_back(p);
        }
        facet_map.emplace(std::move(members), std::move(*sigma));
    });
    if (facet_map.empty()) throw dimension_error("enumerate_faces: no facets found");

    // Face lattice: close the facet member sets under intersection.
    std::set<std::vector<Point>> all;
    for (const auto& [members, sigma] : facet_map) all.insert(members);
    for (;;) {
        std::set<std::vector<Point>> grown = all;
        for (const auto& a : all) {
            for (const auto& b : all) {
                std::vector<Point> inter;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
                if (!inter.empty()) grown.insert(std::move(inter));
            }
        }
        if (grown.size() == all.size()) break;
        all = std::move(grown);
    }

    std::vector<Face> faces;
    for (const auto& members : all) {
        Face f;
        f.members = members;
        auto it = facet_map.find(members);
        f.is_facet = (it != facet_map.end());
        if (f.is_facet) {
            f.sigma = it->second;
            f.sigma_unique = true;
        } else {
            RatVec acc(static_cast<std::size_t>(d), 0);
            long count = 0;
            for (const auto& [fm, fsigma] : facet_map) {
                if (std::includes(fm.begin(), fm.end(), members.begin(), members.end())) {
                    for (int i = 0; i < d; ++i) acc[static_cast<std::size_t>(i)] += fsigma[static_cast<std::size_t>(i)];
                    ++count;
                }
            }
            for (auto& v : acc) v /= count;
            f.sigma = std::move(acc);
            f.sigma_unique = false;
        }
        f.z_sum = zero_point(d);
        for (const Point& p : f.members) f.z_sum = add(f.z_sum, p);
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return a.members < b.members;
    });
    return faces;
}

inline std::vector<Face> facets_of(const std::vector<Face>& faces)
{
    std::vector<Face> out;
    for (const Face& f : faces)
        if (f.is_facet) out.push_back(f);
    return out;
}

// Extreme points S^e of K_S (the singleton faces).
inline std::vector<Point> extreme_points(const std::vector<Face>& faces)
{
    std::vector<Point> out;
    for (const Face& f : faces)
        if (f.members.size() == 1) out.push_back(f.members.front());
    std::sort(out.begin(), out.end());
    return out;
}

// Minkowski gauge of K_S: min { sum t_s : t >= 0, sum t_s s = x }, exact.
inline Rat gauge_norm(const GeneratingSet& s, const RatVec& x)
{
    const int d = s.dim();
    if (static_cast<int>(x.size()) != d) throw std::invalid_argument("gauge_norm: dimension mismatch");
    const auto& pts = s.elements();
    std::vector<RatVec> a(static_cast<std::size_t>(d), RatVec(pts.size(), 0));
    for (std::size_t j = 0; j < pts.size(); ++j)
        for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)][j] = Rat(static_cast<long>(pts[j][static_cast<std::size_t>(i)]));
    RatVec c(pts.size(), 1);
    auto res = solve_lp_min(std::move(a), x, std::move(c));
    if (res.status != LPStatus::optimal)
        throw std::logic_error("gauge_norm: LP did not reach an optimum (S not full-dimensional?)");
    return res.value;
}

inline Rat gauge_norm(const GeneratingSet& s, const Point& x)
{
    return gauge_norm(s, rat_vec_from_point(x));
}

// Dual norm of a functional: max over S of tau(s) (= sup over K_S, by symmetry).
inline Rat dual_norm(const GeneratingSet& s, const RatVec& tau)
{
    Rat best = 0;
    for (const Point& p : s.elements()) best = std::max(best, rat_dot(tau, p));
    return best;
}

// |sigma_F(x)| <= l(x) over the word ball of radius r (exact comparison).
inline bool support_bound_check(const Face& f, const LengthOracle& l, long long r)
{
    if (!l.is_word()) throw std::invalid_argument("support_bound_check: needs the word-length oracle of S");
    for (const Point& x : l.ball(static_cast<double>(r))) {
        Rat v = f.sigma_at(x);
        if (v < 0) v = -v;
        if (v > Rat(static_cast<long>(l.word_length(x)))) return false;
    }
    return true;
}

struct SubgroupData {
    long long index;
    std::vector<Point> coset_reps;  // 0 first, then by (word length, canonical order)
};

// Canonical tie-break order: compare coordinate magnitudes first, then
// prefer nonnegative entries, so e.g. 1 precedes -1.
inline bool canonical_less(const Point& a, const Point& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        Coord ma = std::abs(a[i]), mb = std::abs(b[i]);
        if (ma != mb) return ma < mb;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool na = a[i] < 0, nb = b[i] < 0;
        if (na != nb) return nb;
    }
    return a < b;
}

/**
 * Index of G_F in Z^d and coset representatives of minimal word length
 * (ties broken lexicographically).  Only facets carry full-rank G_F.
 */
inline SubgroupData subgroup_data(const Face& f, const GeneratingSet& s)
{
    IntLattice lat(s.dim(), f.members);
    if (!lat.full_rank())
        throw rank_error("subgroup_data: G_F is not of full rank (face of dimension < d-1)");
    long long index = lat.index();

    struct Rep {
        Point point;
        long long length;
    };
    std::map<Point, Rep> best;  // residue -> minimal-length representative
    WordLengthTable bfs(s);
    // BFS visits cosets in order of word length; ties within a coset can
    // only occur inside a single level, so the first level that completes
    // the census also settles every lexicographic tie.
    for (long long level = 0;; ++level) {
        bfs.extend_to(level);
        for (const auto& [p, l] : bfs.table()) {
            if (l != level) continue;
            Point r = lat.residue(p);
            auto it = best.find(r);
            if (it == best.end())
                best.emplace(r, Rep{p, l});
            else if (it->second.length == l && canonical_less(p, it->second.point))
                it->second.point = p;
        }
        if (static_cast<long long>(best.size()) >= index) break;
    }

    std::vector<std::pair<long long, Point>> reps;
    for (const auto& [r, rep] : best) reps.emplace_back(rep.length, rep.point);
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return canonical_less(a.second, b.second);
    });
    std::vector<Point> out;
    out.reserve(reps.size());
    for (auto& [l, p] : reps) out.push_back(std::move(p));
    if (out.empty() || !is_zero(out.front()))
        throw std::logic_error("subgroup_data: identity coset missing");
    return SubgroupData{index, std::move(out)};
}

inline Face facet_with_data(Face f, const GeneratingSet& s)
{
    auto sd = subgroup_data(f, s);
    f.index = sd.index;
    f.coset_reps = std::move(sd.coset_reps);
    return f;
}

// Faces with subgroup data attached to every facet.
inline std::vector<Face> enumerate_faces_with_data(const GeneratingSet& s)
{
    std::vector<Face> faces = enumerate_faces(s);
    for (Face& f : faces)
        if (f.is_facet) {
            auto sd = subgroup_data(f, s);
            f.index = sd.index;
            f.coset_reps = std::move(sd.coset_reps);
        }
    return faces;
}

struct NormSpec {
    enum class Kind { l1, l2, linf, gauge } kind = Kind::l1;
    std::optional<GeneratingSet> polytope;  // vertices of the unit ball, gauge kind
};

// Length oracle for the Minkowski gauge of conv(S); exact rational values
// rounded to double at the boundary of the API.  Real vectors are measured
// through the dual representation gauge(v) = max_F sigma_F(v).
inline LengthOracle gauge_length_oracle(const GeneratingSet& s)
{
    Coord m = std::max<Coord>(1, s.max_coord());
    GeneratingSet copy = s;
    auto fn = [copy](const Point& x) { return rat_to_double(gauge_norm(copy, x)); };
    auto bound = [m](double r) { return static_cast<Coord>(std::ceil(r * static_cast<double>(m))) + 1; };
    std::vector<std::vector<double>> sigmas;
    for (const Face& f : facets_of(enumerate_faces(s))) {
        std::vector<double> sd;
        for (const Rat& v : f.sigma) sd.push_back(rat_to_double(v));
        sigmas.push_back(std::move(sd));
    }
    auto real_fn = [sigmas](const std::vector<double>& v) {
        double best = 0;
        for (const auto& sig : sigmas) {
            double dot = 0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += sig[i] * v[i];
            best = std::max(best, std::abs(dot));
        }
        return best;
    };
    return LengthOracle::functional(s.dim(), "gauge", fn, bound, false, true, real_fn);
}

inline LengthOracle make_length_oracle(const NormSpec& spec, int dim)
{
    switch (spec.kind) {
    case NormSpec::Kind::l1: return LengthOracle::norm_l1(dim);
    case NormSpec::Kind::l2: return LengthOracle::norm_l2(dim);
    case NormSpec::Kind::linf: return LengthOracle::norm_linf(dim);
    case NormSpec::Kind::gauge:
        if (!spec.polytope) throw std::invalid_argument("make_length_oracle: gauge norm needs a polytope");
        return gauge_length_oracle(*spec.polytope);
    }
    throw std::logic_error("make_length_oracle: bad kind");
}

} // namespace horolip
