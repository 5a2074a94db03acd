#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "horolip/horoboundary.hpp"

using namespace horolip;

namespace {

GeneratingSet gs_z(std::vector<Coord> gens)
{
    std::vector<Point> pts;
    for (Coord g : gens) {
        pts.push_back({g});
        pts.push_back({-g});
    }
    return GeneratingSet(1, pts);
}

GeneratingSet gs_square()
{
    return GeneratingSet(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

RaySample integer_ray(std::vector<Coord> points, std::vector<double> domain, std::string label)
{
    RaySample r;
    for (Coord p : points) r.points.push_back({p});
    r.domain = std::move(domain);
    r.label = std::move(label);
    return r;
}

Face facet_containing(const GeneratingSet& s, const Point& member)
{
    for (const Face& f : enumerate_faces_with_data(s))
        if (f.is_facet && std::binary_search(f.members.begin(), f.members.end(), member)) return f;
    throw std::logic_error("facet not found");
}

std::vector<Point> window_1d(Coord b)
{
    return box_window(1, b);
}

} // namespace

TEST_CASE("ray classification: straight rays are geodesic")
{
    auto lz = LengthOracle::word(gs_z({1}));
    std::vector<Coord> pts;
    std::vector<double> dom;
    for (Coord n = 0; n <= 20; ++n) {
        pts.push_back(n);
        dom.push_back(static_cast<double>(n));
    }
    auto cls = classify_ray(lz, integer_ray(pts, dom, "n"), 0.5, 1.0);
    REQUIRE(cls.cls == RayClass::geodesic);
    REQUIRE(cls.violations.empty());
}

TEST_CASE("ray classification: even ray for generators {1,2}")
{
    auto l = LengthOracle::word(gs_z({1, 2}));
    std::vector<Coord> pts;
    std::vector<double> dom;
    for (Coord n = 0; n <= 20; ++n) {
        pts.push_back(2 * n);
        dom.push_back(static_cast<double>(n));
    }
    REQUIRE(classify_ray(l, integer_ray(pts, dom, "2n"), 0.5, 1.0).cls == RayClass::geodesic);
}

TEST_CASE("ray classification: beta length has weakly- but not almost-geodesic rays")
{
    double beta = 0.4;
    auto l = LengthOracle::beta(beta);
    RaySample ray;
    ray.label = "n at time n^beta";
    std::vector<Coord> ns{0, 1, 2, 4, 8, 16, 32, 64, 128, 316, 400, 500, 632, 800, 1000, 1264, 2000, 2528, 4000};
    for (Coord n : ns) {
        ray.points.push_back({n});
        ray.domain.push_back(std::pow(static_cast<double>(n), beta));
    }
    std::vector<Point> witnesses;
    for (Coord p = -5; p <= 5; ++p)
        if (p != 0) witnesses.push_back({p});
    auto cls = classify_ray(l, ray, 0.1, 10.0, witnesses);
    REQUIRE(cls.cls == RayClass::weakly_geodesic);
}

TEST_CASE("ray limit window: standard length")
{
    auto lz = LengthOracle::word(gs_z({1}));
    std::vector<Coord> pts;
    std::vector<double> dom;
    for (Coord n = 0; n <= 30; ++n) {
        pts.push_back(n);
        dom.push_back(static_cast<double>(n));
    }
    auto w = ray_limit_window(lz, integer_ray(pts, dom, "n"), window_1d(5), 8, true);
    for (Coord k = -5; k <= 5; ++k) {
        REQUIRE(w.value({k}) == static_cast<double>(k));
        REQUIRE(w.is_stabilized({k}));
    }
}

TEST_CASE("ray limit window: parity formulas for generators {1,2}")
{
    auto l = LengthOracle::word(gs_z({1, 2}));
    std::vector<Coord> pts;
    std::vector<double> dom;
    for (Coord n = 0; n <= 40; ++n) {
        pts.push_back(2 * n);
        dom.push_back(static_cast<double>(n));
    }
    auto w = ray_limit_window(l, integer_ray(pts, dom, "2n"), window_1d(6), 8, true);
    for (Coord k = -6; k <= 6; ++k) {
        double expect = (k % 2 == 0) ? k / 2.0 : (k - 1) / 2.0;
        REQUIRE(w.value({k}) == expect);
    }
    REQUIRE(w.value({0}) == 0.0);
}

TEST_CASE("too-short samples are rejected")
{
    auto l = LengthOracle::word(gs_z({1}));
    auto ray = integer_ray({0, 1, 2}, {0.0, 1.0, 2.0}, "short");
    REQUIRE_THROWS_AS(ray_limit_window(l, ray, window_1d(2), 8), insufficient_sample_error);
}

TEST_CASE("busemann window of the even facet")
{
    auto s = gs_z({1, 2});
    auto l = LengthOracle::word(s);
    Face f = facet_containing(s, {2});
    auto b = busemann_from_face(l, f, window_1d(6), 32);
    REQUIRE(b.value({1}) == 0.0);
    REQUIRE(b.value({2}) == 1.0);
    REQUIRE(b.value({-1}) == -1.0);
    REQUIRE(b.all_stabilized());
    for (const Point& y : b.window) REQUIRE(std::abs(b.value(y)) <= l(y));
}

TEST_CASE("busemann window for the standard generators")
{
    auto s = gs_z({1});
    auto l = LengthOracle::word(s);
    Face f = facet_containing(s, {1});
    auto b = busemann_from_face(l, f, window_1d(8), 16);
    for (Coord k = -8; k <= 8; ++k) REQUIRE(b.value({k}) == static_cast<double>(k));
}

TEST_CASE("busemann window of the l1 facet is the linear functional")
{
    auto s = gs_square();
    auto l = LengthOracle::word(s);
    Face f;
    for (const Face& g : enumerate_faces_with_data(s))
        if (g.is_facet && g.members == std::vector<Point>{{0, 1}, {1, 0}}) f = g;
    REQUIRE(!f.members.empty());
    auto b = busemann_from_face(l, f, box_window(2, 3), 32);
    for (const Point& y : b.window) REQUIRE(b.value(y) == static_cast<double>(y[0] + y[1]));
}

TEST_CASE("translate window")
{
    auto s = gs_z({1, 2});
    auto l = LengthOracle::word(s);
    Face f = facet_containing(s, {2});
    auto b = busemann_from_face(l, f, window_1d(8), 32);

    auto same = translate_window(b, {0}, l);
    for (const Point& y : same.window) REQUIRE(same.value(y) == b.value(y));

    auto odd = translate_window(b, {1}, l);
    REQUIRE(odd.value({1}) == 1.0);  // odd column of the parity table
    for (const Point& y : odd.window) {
        Coord k = y[0];
        double expect = (k % 2 == 0) ? k / 2.0 : (k + 1) / 2.0;
        REQUIRE(odd.value(y) == expect);
    }

    auto two = translate_window(b, {2}, l);
    for (const Point& y : two.window) REQUIRE(two.value(y) == b.value(y));

    REQUIRE_THROWS_AS(translate_window(b, {100}, l), window_exhausted_error);
}

TEST_CASE("orbit sizes")
{
    {
        auto s = gs_z({1, 2});
        auto l = LengthOracle::word(s);
        auto rec = orbit(l, facet_containing(s, {2}), window_1d(8), 32);
        REQUIRE(rec.orbit.size() == 2);
        REQUIRE(rec.orbit_complete);
    }
    {
        auto s = gs_z({1});
        auto l = LengthOracle::word(s);
        auto rec = orbit(l, facet_containing(s, {1}), window_1d(8), 16);
        REQUIRE(rec.orbit.size() == 1);
        REQUIRE(rec.orbit_complete);
    }
    {
        auto s = gs_square();
        auto l = LengthOracle::word(s);
        auto rec = orbit(l, facet_containing(s, {1, 0}), box_window(2, 3), 32);
        REQUIRE(rec.orbit.size() == 1);
        REQUIRE(rec.orbit_complete);
    }
}

TEST_CASE("orbit windows are permuted by coset translations")
{
    auto s = gs_z({1, 2});
    auto l = LengthOracle::word(s);
    auto rec = orbit(l, facet_containing(s, {2}), window_1d(10), 32);
    REQUIRE(rec.orbit.size() == 2);
    auto moved = translate_window(rec.orbit[0], rec.face.coset_reps[1], l);
    std::vector<Point> cmp;
    for (const Point& y : moved.window)
        if (rec.orbit[1].has(y)) cmp.push_back(y);
    REQUIRE(!cmp.empty());
    REQUIRE(windows_equal_on(moved, rec.orbit[1], cmp));
}

TEST_CASE("nonconstancy witnesses")
{
    {
        auto s = gs_z({1, 2});
        auto l = LengthOracle::word(s);
        Face f = facet_containing(s, {2});
        auto wit = nonconstancy_check(l, f, {1}, window_1d(8), 32);
        REQUIRE((wit.phi_neg_s == 0.0 || wit.phi_neg_s == -1.0));
        REQUIRE(wit.phi_y_translated == wit.phi_y_base + 1.0 - wit.phi_neg_s);
        REQUIRE(wit.phi_y_translated != wit.phi_y_base);

        REQUIRE_THROWS_AS(nonconstancy_check(l, f, {2}, window_1d(8), 32), std::invalid_argument);
    }
    {
        auto s = gs_z({3, 8});
        auto l = LengthOracle::word(s);
        Face f = facet_containing(s, {8});
        auto wit = nonconstancy_check(l, f, {3}, l.ball(10), 64);
        REQUIRE((wit.phi_neg_s == 0.0 || wit.phi_neg_s == -1.0));
    }
}

TEST_CASE("boundary census for Z")
{
    {
        auto l = LengthOracle::word(gs_z({1}));
        auto census = boundary_census(l, 4000, window_1d(20), 32);
        REQUIRE(census.size() == 2);
        for (const auto& w : census)
            for (const Point& y : w.window) REQUIRE(std::abs(w.value(y)) == std::abs(static_cast<double>(y[0])));
    }
    {
        auto l = LengthOracle::word(gs_z({1, 2}));
        auto census = boundary_census(l, 4000, window_1d(21), 32);
        REQUIRE(census.size() == 4);
    }
}

TEST_CASE("product split for the l1 metric on Z^2")
{
    auto lz = LengthOracle::word(gs_z({1}));
    auto s = gs_z({1});
    Face fplus = facet_containing(s, {1});
    Face fminus = facet_containing(s, {-1});
    auto bu = busemann_from_face(lz, fplus, window_1d(4), 16);
    auto bv = busemann_from_face(lz, fminus, window_1d(4), 16);
    REQUIRE(product_split_check(lz, lz, bu, bv, 8));
    REQUIRE(product_split_check(lz, lz, bu, bu, 8));
    REQUIRE(bu.value({0}) + bv.value({0}) == 0.0);
}

TEST_CASE("variation function")
{
    auto l = LengthOracle::word(gs_z({1, 2}));
    std::unordered_map<Point, double, PointHash> g;
    for (Coord n = -80; n <= 80; ++n) g[{n}] = l.phi({1}, {n});

    for (Coord k = 1; k <= 50; ++k) REQUIRE(variation(l, g, 2.0, {k}) >= 1.0);

    std::unordered_map<Point, double, PointHash> c;
    for (Coord n = -20; n <= 20; ++n) c[{n}] = 7.0;
    REQUIRE(variation(l, c, 2.0, {0}) == 0.0);

    auto lz = LengthOracle::word(gs_z({1}));
    std::unordered_map<Point, double, PointHash> g3;
    for (Coord n = -40; n <= 40; ++n) g3[{n}] = lz.phi({3}, {n});
    for (Coord k = -30; k <= 30; ++k) REQUIRE(variation(lz, g3, 1.0, {k}) <= 2.0);

    REQUIRE_THROWS_AS(variation(l, g, 100.0, {0}), insufficient_data_error);
}

TEST_CASE("nearby almost-geodesic rays give nearby windows")
{
    // gamma(n) = 2n and gamma'(n) = 2n-1 stay at distance 1; their windows
    // differ by at most 2 at every point.
    auto l = LengthOracle::word(gs_z({1, 2}));
    std::vector<Coord> even, odd;
    std::vector<double> de, dox;
    for (Coord n = 0; n <= 40; ++n) {
        even.push_back(2 * n);
        de.push_back(static_cast<double>(n));
    }
    odd.push_back(0);
    dox.push_back(0.0);
    for (Coord n = 1; n <= 40; ++n) {
        odd.push_back(2 * n - 1);
        dox.push_back(static_cast<double>(n));
    }
    auto we = ray_limit_window(l, integer_ray(even, de, "even"), window_1d(6), 8);
    auto wo = ray_limit_window(l, integer_ray(odd, dox, "odd"), window_1d(6), 8);
    for (Coord k = -6; k <= 6; ++k) REQUIRE(std::abs(we.value({k}) - wo.value({k})) <= 2.0);
}

TEST_CASE("beta boundary collapse")
{
    auto l = LengthOracle::beta(0.4);
    for (Coord p = 1; p <= 5; ++p) {
        double worst = 0;
        for (Coord n = 10000; n <= 20000; n += 97) worst = std::max(worst, std::abs(l.phi({p}, {n})));
        REQUIRE(worst <= 0.1);
    }
}

TEST_CASE("lattice approximation of linear rays")
{
    {
        auto l1 = LengthOracle::norm_l1(2);
        auto ray = lattice_approx_ray(l1, {0.5, 0.5}, 6, 200.0);
        for (std::size_t i = 1; i < ray.points.size(); ++i) {
            REQUIRE(ray.points[i][0] == ray.points[i][1]);
            REQUIRE(ray.domain[i] == Catch::Approx(2.0 * static_cast<double>(ray.points[i][0])));
        }
        auto cls = classify_ray(l1, ray, 0.75, 2.0);
        REQUIRE((cls.cls == RayClass::geodesic || cls.cls == RayClass::almost_geodesic));
    }
    {
        auto l2 = LengthOracle::norm_l2(2);
        auto ray = lattice_approx_ray(l2, {1.0, 0.0}, 5, 100.0);
        for (std::size_t i = 1; i < ray.points.size(); ++i) REQUIRE(ray.points[i][1] == 0);
    }
    {
        // irrational slope: golden-ratio direction under the euclidean norm
        auto l2 = LengthOracle::norm_l2(2);
        double phi = (1.0 + std::sqrt(5.0)) / 2.0;
        double nrm = std::sqrt(1.0 + phi * phi);
        auto ray = lattice_approx_ray(l2, {1.0 / nrm, phi / nrm}, 4, 4000.0);
        REQUIRE(ray.points.size() == 5);
        auto cls = classify_ray(l2, ray, 0.9, 1.0);
        REQUIRE((cls.cls == RayClass::almost_geodesic || cls.cls == RayClass::geodesic));
    }
}
