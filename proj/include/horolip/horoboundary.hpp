#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "horolip/convexgeom.hpp"
#include "horolip/lattice.hpp"
#include "horolip/point.hpp"
#include "horolip/ray.hpp"

namespace horolip {

struct insufficient_sample_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct window_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Finite-window surrogate for a boundary point: the values phi_y(b) for y in
 * a finite window W, with per-point stabilization flags.  Word-metric windows
 * carry exact integers (integral = true) and compare exactly; real-valued
 * windows compare within 1e-9.
 */
struct HorofunctionWindow {
    std::vector<Point> window;  // sorted
    std::unordered_map<Point, double, PointHash> values;
    std::unordered_map<Point, bool, PointHash> stabilized;
    std::string source;
    bool integral = false;

    // Generating ray, when the window came from one.
    std::vector<double> ray_domain;
    std::vector<Point> ray_points;

    bool has(const Point& y) const { return values.count(y) != 0; }

    double value(const Point& y) const
    {
        auto it = values.find(y);
        if (it == values.end()) throw std::out_of_range("HorofunctionWindow: point outside window");
        return it->second;
    }

    bool is_stabilized(const Point& y) const
    {
        auto it = stabilized.find(y);
        return it != stabilized.end() && it->second;
    }

    bool all_stabilized() const
    {
        for (const Point& y : window)
            if (!is_stabilized(y)) return false;
        return true;
    }
};

inline bool values_equal(double a, double b, bool integral)
{
    return integral ? a == b : std::abs(a - b) <= 1e-9;
}

inline bool windows_equal_on(const HorofunctionWindow& a, const HorofunctionWindow& b,
                             const std::vector<Point>& pts)
{
    for (const Point& y : pts)
        if (!values_equal(a.value(y), b.value(y), a.integral && b.integral)) return false;
    return true;
}

inline std::vector<Point> box_window(int dim, Coord b) { return box_points(dim, b); }

// Default window per the ledger: word ball of radius 3 + diameter of the
// coset representatives.
inline std::vector<Point> default_window(const LengthOracle& l, const Face& f)
{
    long long diam = 0;
    for (const Point& q : f.coset_reps)
        for (const Point& r : f.coset_reps) diam = std::max(diam, l.word_length(sub(q, r)));
    return l.ball(static_cast<double>(3 + diam));
}

inline long long default_run_length(const LengthOracle& l, const Face& f, const std::vector<Point>& w)
{
    double m = 0;
    for (const Point& y : w) m = std::max(m, l(y));
    return 16 * static_cast<long long>(std::max<std::size_t>(1, f.members.size())) *
           (1 + static_cast<long long>(std::llround(m)));
}

/**
 * Stabilized window of phi_y along a sampled ray.  A point is marked
 * stabilized when its trace is constant over the trailing run_length
 * samples.  For geodesic rays the trace must be non-decreasing (and integer
 * valued in the word case); that is verified when geodesic_checks is set.
 */
inline HorofunctionWindow ray_limit_window(const LengthOracle& l, const RaySample& ray,
                                           std::vector<Point> w, long long run_length,
                                           bool geodesic_checks = false)
{
    ray.validate();
    const std::size_t n = ray.size();
    if (static_cast<long long>(n) < run_length + 1)
        throw insufficient_sample_error("ray_limit_window: sample shorter than stabilization run");

    std::sort(w.begin(), w.end());
    HorofunctionWindow out;
    out.window = std::move(w);
    out.integral = l.integer_valued();
    out.source = ray.label.empty() ? "ray" : ray.label;
    out.ray_domain = ray.domain;
    out.ray_points = ray.points;

    for (const Point& y : out.window) {
        std::vector<double> trace(n);
        for (std::size_t i = 0; i < n; ++i) trace[i] = l.phi(y, ray.points[i]);
        if (geodesic_checks) {
            for (std::size_t i = 1; i < n; ++i)
                if (trace[i] < trace[i - 1] - (out.integral ? 0.0 : 1e-9))
                    throw std::logic_error("ray_limit_window: phi trace not monotone along geodesic ray");
            if (out.integral)
                for (double v : trace)
                    if (v != std::floor(v)) throw std::logic_error("ray_limit_window: non-integer phi value");
        }
        bool stable = true;
        for (std::size_t i = n - static_cast<std::size_t>(run_length); i < n; ++i)
            stable = stable && values_equal(trace[i], trace.back(), out.integral);
        out.values[y] = trace.back();
        out.stabilized[y] = stable;
    }
    return out;
}

/**
 * Busemann window of the canonical face ray gamma(|F| n) = n z_F.  The ray is
 * followed until every window value has been constant for run_length steps
 * and the horizon has doubled past the last change; values of phi_u for u in
 * G_F n W are checked against sigma_F(u) exactly.
 */
inline HorofunctionWindow busemann_from_face(const LengthOracle& l, const Face& f, std::vector<Point> w,
                                             long long run_length, long long horizon_cap = 100000)
{
    if (!l.is_word()) throw std::invalid_argument("busemann_from_face: needs a word-length oracle");
    if (f.members.empty()) throw std::invalid_argument("busemann_from_face: empty face");
    std::sort(w.begin(), w.end());

    struct State {
        double value = 0;
        long long last_change = 0;
    };
    std::vector<State> st(w.size());
    const Point& zf = f.z_sum;

    long long n = 0;
    Point gn = zero_point(l.dim());
    auto step_all = [&](long long idx, const Point& at) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            double v = static_cast<double>(l.phi_int(w[i], at));
            if (idx == 0 || v != st[i].value) {
                st[i].value = v;
                st[i].last_change = idx;
            }
        }
    };
    step_all(0, gn);
    bool stabilized_all = false;
    while (n < horizon_cap) {
        bool done = true;
        for (const State& s : st)
            done = done && (n >= s.last_change + run_length) && (n >= 2 * s.last_change);
        if (done && n > 0) {
            stabilized_all = true;
            break;
        }
        ++n;
        gn = add(gn, zf);
        step_all(n, gn);
    }

    HorofunctionWindow out;
    out.integral = true;
    out.window = std::move(w);
    {
        std::string members;
        for (const Point& p : f.members) members += to_string(p);
        out.source = "face_ray" + members;
    }
    for (std::size_t i = 0; i < out.window.size(); ++i) {
        out.values[out.window[i]] = st[i].value;
        out.stabilized[out.window[i]] =
            stabilized_all || (n >= st[i].last_change + run_length && n >= 2 * st[i].last_change);
    }
    // Canonical geodesic ray, domain |F| * n.
    out.ray_domain.resize(static_cast<std::size_t>(n) + 1);
    out.ray_points.resize(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) {
        out.ray_domain[static_cast<std::size_t>(i)] = static_cast<double>(i * static_cast<long long>(f.members.size()));
        out.ray_points[static_cast<std::size_t>(i)] = scale(i, zf);
    }

    // sigma_F reproduces phi on the subgroup generated by the face.
    IntLattice gf(l.dim(), f.members);
    for (const Point& u : out.window) {
        if (!out.stabilized.at(u) || !gf.contains(u)) continue;
        Rat expect = f.sigma_at(u);
        if (expect.get_den() != 1 || expect != Rat(static_cast<long>(std::llround(out.values.at(u)))))
            throw std::logic_error("busemann_from_face: phi_u(b_F) != sigma_F(u) on G_F");
    }
    return out;
}

/**
 * Window of the translated boundary point alpha_z(b): values'(y) =
 * values(y - z) - values(-z) on the shrunken window {y : y - z in W}.
 */
inline HorofunctionWindow translate_window(const HorofunctionWindow& b, const Point& z,
                                           const LengthOracle& l)
{
    (void)l;
    if (!b.has(neg(z)))
        throw window_exhausted_error("translate_window: -z outside the window");
    double base = b.value(neg(z));
    bool base_stable = b.is_stabilized(neg(z));
    HorofunctionWindow out;
    out.integral = b.integral;
    out.source = b.source + "+alpha" + to_string(z);
    for (const Point& y : b.window) {
        Point shifted = sub(y, z);
        if (!b.has(shifted)) continue;
        out.window.push_back(y);
        out.values[y] = b.value(shifted) - base;
        out.stabilized[y] = b.is_stabilized(shifted) && base_stable;
    }
    if (out.window.empty()) throw window_exhausted_error("translate_window: empty result window");
    std::sort(out.window.begin(), out.window.end());
    return out;
}

struct BusemannRecord {
    Face face;
    HorofunctionWindow base;
    std::vector<HorofunctionWindow> orbit;  // distinct translate windows, base coset first
    std::vector<Point> common_window;       // points on which all orbit members are defined
    bool orbit_complete = false;
    std::string diagnostics;
};

/**
 * Orbit of b_F under translation by coset representatives.  The orbit is
 * complete when its windows are pairwise separated on the common window,
 * every member is fixed by translation by elements of F (verified on the
 * computable part of the window), and the count equals [Z^d : G_F].
 */
inline BusemannRecord orbit(const LengthOracle& l, Face f, const std::vector<Point>& w,
                            long long run_length)
{
    if (!f.is_facet) throw std::invalid_argument("orbit: face must be a facet");
    if (f.index == 0) {
        auto sd = subgroup_data(f, l.generating_set());
        f.index = sd.index;
        f.coset_reps = std::move(sd.coset_reps);
    }
    BusemannRecord rec;
    rec.base = busemann_from_face(l, f, w, run_length);

    std::vector<HorofunctionWindow> translates;
    for (const Point& q : f.coset_reps) {
        try {
            translates.push_back(translate_window(rec.base, q, l));
        } catch (const window_exhausted_error&) {
            rec.diagnostics += "translate by " + to_string(q) + " exhausted the window; ";
        }
    }

    // Common comparison window.
    std::map<Point, std::size_t> hits;
    for (const auto& t : translates)
        for (const Point& y : t.window) ++hits[y];
    for (const auto& [y, c] : hits)
        if (c == translates.size()) rec.common_window.push_back(y);

    bool all_integral = true;
    for (const auto& t : translates) all_integral = all_integral && t.integral;
    for (const auto& t : translates) {
        bool dup = false;
        for (const auto& o : rec.orbit) dup = dup || windows_equal_on(o, t, rec.common_window);
        if (!dup) rec.orbit.push_back(t);
    }

    bool fixed = true;
    for (const auto& o : rec.orbit) {
        for (const Point& u : f.members) {
            try {
                HorofunctionWindow shifted = translate_window(o, u, l);
                for (const Point& y : shifted.window)
                    if (!values_equal(shifted.value(y), o.value(y), all_integral)) fixed = false;
            } catch (const window_exhausted_error&) {
                fixed = false;
            }
        }
    }
    if (!fixed) rec.diagnostics += "face translations do not fix the orbit on this window; ";

    bool complete = translates.size() == f.coset_reps.size() &&
                    static_cast<long long>(rec.orbit.size()) == f.index && fixed &&
                    !rec.common_window.empty();
    rec.orbit_complete = complete;
    rec.face = std::move(f);
    return rec;
}

struct NonconstancyWitness {
    Point s;                 // generator outside F
    double phi_y_base;       // phi_y(b_F)
    double phi_y_translated; // phi_y(alpha_s(b_F))
    double phi_neg_s;        // phi_{-s}(b_F), always 0 or -1
};

/**
 * For y outside G_F, finds a generator s outside F witnessing that phi_y
 * is non-constant on the orbit of b_F:
 *   phi_y(alpha_s(b_F)) = phi_y(b_F) + (1 - phi_{-s}(b_F)),
 * with phi_{-s}(b_F) in {0, -1}.  Failure indicates a bug or insufficient
 * stabilization, not a mathematical possibility.
 */
inline NonconstancyWitness nonconstancy_check(const LengthOracle& l, const Face& f, const Point& y,
                                              const std::vector<Point>& w, long long run_length)
{
    IntLattice gf(l.dim(), f.members);
    if (gf.contains(y))
        throw std::invalid_argument("nonconstancy_check: y lies in G_F");
    HorofunctionWindow b = busemann_from_face(l, f, w, run_length);
    if (!b.has(y)) throw window_exhausted_error("nonconstancy_check: y outside the window");

    std::vector<Point> candidates;
    for (const Point& s : l.generating_set().elements())
        if (!std::binary_search(f.members.begin(), f.members.end(), s)) candidates.push_back(s);
    std::sort(candidates.begin(), candidates.end(), canonical_less);

    for (const Point& s : candidates) {
        if (!b.has(neg(s)) || !b.has(sub(y, s))) continue;
        double phi_neg_s = b.value(neg(s));
        if (phi_neg_s != 0.0 && phi_neg_s != -1.0) continue;
        double translated = b.value(sub(y, s)) - phi_neg_s;  // phi_y(alpha_s b_F)
        if (translated == b.value(y) + (1.0 - phi_neg_s))
            return NonconstancyWitness{s, b.value(y), translated, phi_neg_s};
    }
    throw std::logic_error("nonconstancy_check: no witness generator found (insufficient window?)");
}

/**
 * Heuristic census of the word-metric boundary: windows of all face rays and
 * their coset translates, deduplicated exactly on a common window.  This is a
 * lower bound on the boundary; no completeness is claimed.
 */
inline std::vector<HorofunctionWindow> boundary_census(const LengthOracle& l, long long horizon_cap,
                                                       const std::vector<Point>& w, long long run_length)
{
    const GeneratingSet& s = l.generating_set();
    std::vector<Face> faces = enumerate_faces_with_data(s);

    // Translators: all facet coset representatives.
    std::vector<Point> translators{zero_point(l.dim())};
    for (const Face& f : faces)
        for (const Point& q : f.coset_reps) translators.push_back(q);
    std::sort(translators.begin(), translators.end());
    translators.erase(std::unique(translators.begin(), translators.end()), translators.end());

    // Comparison window: points whose translates stay inside w.
    std::vector<Point> sorted_w = w;
    std::sort(sorted_w.begin(), sorted_w.end());
    std::vector<Point> cmp;
    for (const Point& y : sorted_w) {
        bool ok = true;
        for (const Point& q : translators)
            ok = ok && std::binary_search(sorted_w.begin(), sorted_w.end(), sub(y, q)) &&
                 std::binary_search(sorted_w.begin(), sorted_w.end(), neg(q));
        if (ok) cmp.push_back(y);
    }
    if (cmp.empty()) throw window_exhausted_error("boundary_census: window too small for translators");

    std::vector<HorofunctionWindow> census;
    auto push_unique = [&](HorofunctionWindow cand) {
        HorofunctionWindow restricted;
        restricted.integral = cand.integral;
        restricted.source = cand.source;
        restricted.window = cmp;
        for (const Point& y : cmp) {
            restricted.values[y] = cand.value(y);
            restricted.stabilized[y] = cand.is_stabilized(y);
        }
        for (const auto& existing : census)
            if (windows_equal_on(existing, restricted, cmp)) return;
        census.push_back(std::move(restricted));
    };

    for (const Face& f : faces) {
        HorofunctionWindow base = busemann_from_face(l, f, sorted_w, run_length, horizon_cap);
        push_unique(base);
        for (const Point& q : translators) {
            if (is_zero(q)) continue;
            try {
                push_unique(translate_window(base, q, l));
            } catch (const window_exhausted_error&) {
                // window too small for this translate; census stays a lower bound
            }
        }
    }
    std::sort(census.begin(), census.end(), [&](const HorofunctionWindow& a, const HorofunctionWindow& b) {
        for (const Point& y : cmp) {
            if (a.value(y) != b.value(y)) return a.value(y) < b.value(y);
        }
        return false;
    });
    return census;
}

/**
 * Product (sum-metric) split: the window of the product ray must equal the
 * coordinatewise sum of the factor windows, phi_{(u,v)} = phi_u + phi_v.
 * Both factor windows must carry their generating rays.
 */
inline bool product_split_check(const LengthOracle& lx, const LengthOracle& ly,
                                const HorofunctionWindow& bu, const HorofunctionWindow& bv,
                                long long run_length)
{
    if (bu.ray_points.empty() || bv.ray_points.empty())
        throw std::invalid_argument("product_split_check: factor windows carry no rays");
    std::size_t n = std::min(bu.ray_points.size(), bv.ray_points.size());

    RaySample prod;
    prod.label = "product";
    for (std::size_t i = 0; i < n; ++i) {
        Point p = bu.ray_points[i];
        p.insert(p.end(), bv.ray_points[i].begin(), bv.ray_points[i].end());
        prod.points.push_back(std::move(p));
        prod.domain.push_back(bu.ray_domain[i] + bv.ray_domain[i]);
    }

    LengthOracle lsum = sum_oracle(lx, ly);
    std::vector<Point> w;
    for (const Point& a : bu.window)
        for (const Point& b : bv.window) {
            Point y = a;
            y.insert(y.end(), b.begin(), b.end());
            w.push_back(std::move(y));
        }
    long long rl = std::min<long long>(run_length, static_cast<long long>(n) - 1);
    HorofunctionWindow pw = ray_limit_window(lsum, prod, w, rl);

    bool integral = pw.integral;
    for (const Point& a : bu.window)
        for (const Point& b : bv.window) {
            Point y = a;
            y.insert(y.end(), b.begin(), b.end());
            if (!pw.is_stabilized(y)) return false;
            if (!values_equal(pw.value(y), bu.value(a) + bv.value(b), integral)) return false;
        }
    return true;
}

/**
 * Variational function (V_r g)(x) = sup { |g(x) - g(y)| : rho(y, x) <= r },
 * exact over the finite ball.  g must be defined on the whole ball around x.
 */
inline double variation(const LengthOracle& l, const std::unordered_map<Point, double, PointHash>& g,
                        double r, const Point& x)
{
    auto gx = g.find(x);
    if (gx == g.end()) throw insufficient_data_error("variation: g undefined at x");
    double best = 0;
    for (const Point& d : l.ball(r)) {
        Point y = add(x, d);
        auto it = g.find(y);
        if (it == g.end()) throw insufficient_data_error("variation: g undefined on the ball");
        best = std::max(best, std::abs(gx->second - it->second));
    }
    return best;
}

/**
 * Lattice approximant of the linear ray t -> t v: times t_k and points x_k
 * with ||x_k - t_k v|| < 1/k, found by box search along the direction.  The
 * result classifies as an almost-geodesic ray for the same norm.
 */
inline RaySample lattice_approx_ray(const LengthOracle& norm, const std::vector<double>& v,
                                    int k_max, double search_radius)
{
    const int d = norm.dim();
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument("lattice_approx_ray: direction dimension mismatch");
    if (std::abs(norm.real_norm(v) - 1.0) > 1e-6)
        throw std::invalid_argument("lattice_approx_ray: direction must have unit norm");

    auto dist_at = [&](const Point& x, double t) {
        std::vector<double> diff(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = static_cast<double>(x[static_cast<std::size_t>(i)]) - t * v[static_cast<std::size_t>(i)];
        return norm.real_norm(diff);
    };
    // Distance from x to the ray is convex in t; golden-section refine.
    auto best_time = [&](const Point& x, double lo, double hi) {
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (dist_at(x, m1) < dist_at(x, m2))
                hi = m2;
            else
                lo = m1;
        }
        double t = (lo + hi) / 2;
        return std::pair{t, dist_at(x, t)};
    };

    RaySample ray;
    ray.label = "lattice_approx";
    ray.domain.push_back(0.0);
    ray.points.push_back(zero_point(d));
    double prev_t = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        bool found = false;
        for (double T = prev_t + 0.5; T <= search_radius; T += 0.5) {
            Point base(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) base[static_cast<std::size_t>(i)] = static_cast<Coord>(std::llround(T * v[static_cast<std::size_t>(i)]));
            Point cand = base;
            bool accepted = false;
            for_each_box_point(d, 1, [&](const Point& off) {
                if (accepted) return;
                Point x = add(base, off);
                auto [t, err] = best_time(x, std::max(prev_t, T - 3.0), T + 3.0);
                if (err < 1.0 / k - 1e-12 && t > prev_t + 1e-9) {
                    cand = x;
                    prev_t = t;
                    ray.domain.push_back(t);
                    ray.points.push_back(x);
                    accepted = true;
                }
            });
            if (accepted) {
                found = true;
                break;
            }
        }
        if (!found)
            throw budget_error("lattice_approx_ray: search radius exhausted before tolerance met");
    }
    return ray;
}

// classify_ray specialization for a length oracle on the lattice.
inline RayClassification classify_ray(const LengthOracle& l, const RaySample& ray, double eps,
                                      double min_time, const std::vector<Point>& witnesses = {})
{
    auto rho = [&](const Point& a, const Point& b) { return l(sub(a, b)); };
    return classify_ray(ray, rho, eps, min_time, witnesses);
}

} // namespace horolip
