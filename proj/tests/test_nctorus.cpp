#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "horolip/nctorus.hpp"

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

CoefficientFunction random_coeffs(int dim, Coord radius, int terms, std::mt19937_64& rng)
{
    std::uniform_int_distribution<Coord> pos(-radius, radius);
    std::normal_distribution<double> gauss;
    CoefficientFunction f(dim);
    for (int i = 0; i < terms; ++i) {
        Point p(static_cast<std::size_t>(dim));
        for (auto& c : p) c = pos(rng);
        f.set(p, {gauss(rng), gauss(rng)});
    }
    return f;
}

} // namespace

TEST_CASE("cocycle basics")
{
    auto c0 = Cocycle::trivial(2);
    REQUIRE(c0({1, 2}, {3, -1}) == Complex{1.0, 0.0});

    double theta = 0.3;
    auto c = Cocycle::rotation(theta);
    Complex expect{std::cos(std::numbers::pi * theta), std::sin(std::numbers::pi * theta)};
    REQUIRE(std::abs(c({1, 0}, {0, 1}) - expect) < 1e-15);
    REQUIRE(std::abs(c({5, -2}, {0, 0}) - Complex{1.0, 0.0}) < 1e-15);
    REQUIRE(std::abs(c({0, 0}, {5, -2}) - Complex{1.0, 0.0}) < 1e-15);
    REQUIRE(std::abs(c({3, 4}, {3, 4}) - Complex{1.0, 0.0}) < 1e-15);

    REQUIRE_THROWS_AS(Cocycle({{0.0, 1.0}, {1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("cocycle identity on random triples")
{
    auto c = Cocycle::rotation((1.0 + std::sqrt(5.0)) / 2.0);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Coord> d(-20, 20);
    for (int i = 0; i < 1000; ++i) {
        Point x{d(rng), d(rng)}, y{d(rng), d(rng)}, z{d(rng), d(rng)};
        REQUIRE(cocycle_identity_residual(c, x, y, z) < 1e-12);
    }
}

TEST_CASE("twisted convolution on deltas")
{
    double theta = 0.3;
    auto c = Cocycle::rotation(theta);
    auto dy = AlgebraElement::delta({1, 0}, c);
    auto dz = AlgebraElement::delta({0, 1}, c);

    auto prod = twisted_convolve(dy, dz);
    REQUIRE(prod.coeffs.support_size() == 1);
    REQUIRE(std::abs(prod.coeffs.at({1, 1}) - c({1, 0}, {0, 1})) < 1e-15);

    auto rev = twisted_convolve(dz, dy);
    Complex ratio = prod.coeffs.at({1, 1}) / rev.coeffs.at({1, 1});
    Complex expect{std::cos(2 * std::numbers::pi * theta), std::sin(2 * std::numbers::pi * theta)};
    REQUIRE(std::abs(ratio - expect) < 1e-14);

    auto unit = AlgebraElement::delta({0, 0}, c);
    std::mt19937_64 rng(5);
    auto f = AlgebraElement(random_coeffs(2, 3, 6, rng), c);
    auto uf = twisted_convolve(unit, f);
    for (const auto& [p, v] : f.coeffs.values()) REQUIRE(std::abs(uf.coeffs.at(p) - v) < 1e-15);

    REQUIRE_THROWS_AS(twisted_convolve(dy, AlgebraElement::delta({0, 1}, Cocycle::trivial(2))),
                      std::invalid_argument);
}

TEST_CASE("twisted convolution is associative")
{
    auto c = Cocycle::rotation(0.2357);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto f = AlgebraElement(random_coeffs(2, 3, 4, rng), c);
        auto g = AlgebraElement(random_coeffs(2, 3, 4, rng), c);
        auto h = AlgebraElement(random_coeffs(2, 3, 4, rng), c);
        auto lhs = twisted_convolve(twisted_convolve(f, g), h);
        auto rhs = twisted_convolve(f, twisted_convolve(g, h));
        for (const auto& [p, v] : lhs.coeffs.values()) REQUIRE(std::abs(v - rhs.coeffs.at(p)) < 1e-12);
        for (const auto& [p, v] : rhs.coeffs.values()) REQUIRE(std::abs(v - lhs.coeffs.at(p)) < 1e-12);
    }
}

TEST_CASE("involution")
{
    auto c = Cocycle::rotation(0.41);
    REQUIRE(std::abs(involution(AlgebraElement::delta({0, 0}, c)).coeffs.at({0, 0}) - Complex{1, 0}) < 1e-15);

    std::mt19937_64 rng(11);
    auto f = AlgebraElement(random_coeffs(2, 3, 6, rng), c);
    auto ff = involution(involution(f));
    for (const auto& [p, v] : f.coeffs.values()) REQUIRE(std::abs(ff.coeffs.at(p) - v) < 1e-14);

    // f^*(x) = conj(f(-x)) for this cocycle family
    auto fs = involution(f);
    for (const auto& [p, v] : f.coeffs.values()) REQUIRE(std::abs(fs.coeffs.at(neg(p)) - std::conj(v)) < 1e-14);

    auto g = AlgebraElement(random_coeffs(2, 3, 6, rng), c);
    auto lhs = involution(twisted_convolve(f, g));
    auto rhs = twisted_convolve(involution(g), involution(f));
    for (const auto& [p, v] : lhs.coeffs.values()) REQUIRE(std::abs(v - rhs.coeffs.at(p)) < 1e-12);
}

TEST_CASE("truncated representation matrices")
{
    auto c = Cocycle::trivial(1);
    auto id = truncated_pi(AlgebraElement::delta({0}, c), 2);
    REQUIRE(id.matrix.isApprox(Eigen::MatrixXcd::Identity(5, 5)));

    auto sh = truncated_pi(AlgebraElement::delta({1}, c), 2);
    for (long long z = 0; z < 5; ++z)
        for (long long x = 0; x < 5; ++x) {
            Complex expect = (x == z + 1) ? Complex{1, 0} : Complex{0, 0};
            REQUIRE(std::abs(sh.matrix(x, z) - expect) < 1e-15);
        }

    // phase-permutation structure: one unit-modulus entry per admissible column
    auto ct = Cocycle::rotation(0.77);
    auto dp = truncated_pi(AlgebraElement::delta({1, -1}, ct), 3);
    for (long long z = 0; z < dp.box.size(); ++z) {
        int nonzero = 0;
        for (long long x = 0; x < dp.box.size(); ++x)
            if (std::abs(dp.matrix(x, z)) > 0) {
                ++nonzero;
                REQUIRE(std::abs(std::abs(dp.matrix(x, z)) - 1.0) < 1e-14);
            }
        REQUIRE(nonzero <= 1);
    }
}

TEST_CASE("compression consistency across radii")
{
    auto c = Cocycle::rotation(0.31);
    std::mt19937_64 rng(13);
    auto f = AlgebraElement(random_coeffs(2, 2, 5, rng), c);
    auto small = truncated_pi(f, 2);
    auto large = truncated_pi(f, 4);
    for (long long zi = 0; zi < small.box.size(); ++zi)
        for (long long xi = 0; xi < small.box.size(); ++xi) {
            Point z = small.box.point_of(zi), x = small.box.point_of(xi);
            REQUIRE(std::abs(small.matrix(xi, zi) - large.matrix(large.box.index_of(x), large.box.index_of(z))) <
                    1e-14);
        }
}

TEST_CASE("operator norms: dense and power methods agree")
{
    REQUIRE(op_norm(Eigen::MatrixXcd::Identity(10, 10)) == Catch::Approx(1.0));

    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
    diag(0, 0) = 3;
    diag(1, 1) = 1;
    REQUIRE(op_norm(diag) == Catch::Approx(3.0));

    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    for (int n : {20, 50, 120}) {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Complex{gauss(rng), gauss(rng)};
        double dense = op_norm(m, NormMethod::dense_svd);
        double power = op_norm(m, NormMethod::power_iteration, 1e-8, 99);
        REQUIRE(power == Catch::Approx(dense).margin(1e-8 * dense));
    }
}

TEST_CASE("a-norm values")
{
    auto c = Cocycle::trivial(1);
    REQUIRE(a_norm(AlgebraElement::delta({3}, c)).value == Catch::Approx(1.0));

    CoefficientFunction cosf(1);
    cosf.set({1}, 1.0);
    cosf.set({-1}, 1.0);
    auto est = a_norm(AlgebraElement(cosf, c), 256, 1e-4);
    REQUIRE(est.value == Catch::Approx(2.0).margin(2e-3));
    REQUIRE(est.lower_companion <= est.value + 1e-12);
    REQUIRE(est.value <= est.upper_companion + 1e-9);

    CoefficientFunction g(1);
    g.set({0}, 1.0);
    g.set({1}, 1.0);
    REQUIRE(a_norm(AlgebraElement(g, c), 256, 1e-4).value == Catch::Approx(2.0).margin(2e-3));
}

TEST_CASE("a-norm against the Fourier supremum")
{
    auto c = Cocycle::trivial(1);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = AlgebraElement(random_coeffs(1, 5, 6, rng), c);
        if (f.coeffs.empty()) continue;
        double grid = fourier_sup_norm(f, 4096);
        double est = a_norm(f, 256, 1e-4).value;
        REQUIRE(est == Catch::Approx(grid).margin(5e-3 * std::max(1.0, grid)));
    }
}

TEST_CASE("L_ell on deltas equals the length")
{
    auto word = LengthOracle::word(gs_z({1, 2}));
    auto c = Cocycle::trivial(1);
    for (Coord y : {-5, -2, 1, 3, 6}) {
        auto est = L_ell(AlgebraElement::delta({y}, c), word);
        REQUIRE(est.value == Catch::Approx(word({y})).epsilon(1e-12));
    }
    REQUIRE(L_ell(AlgebraElement::delta({0}, c), word).value == 0.0);

    auto l2 = LengthOracle::norm_l2(2);
    auto c2 = Cocycle::rotation(0.456);
    REQUIRE(L_ell(AlgebraElement::delta({3, -4}, c2), l2).value == Catch::Approx(5.0));
}

TEST_CASE("L_ell sandwich and monotone trace")
{
    auto word = LengthOracle::word(gs_z({1}));
    auto c = Cocycle::trivial(1);

    CoefficientFunction cf(1);
    cf.set({1}, 1.0);
    cf.set({-1}, 1.0);
    auto est = L_ell(AlgebraElement(cf, c), word, 256, 1e-4);
    REQUIRE(est.value == Catch::Approx(2.0).margin(2e-3));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
        auto f = AlgebraElement(random_coeffs(1, 3, 4, rng), c);
        if (f.coeffs.empty()) continue;
        auto e = L_ell(f, word, 64, 1e-3);
        REQUIRE(e.lower_companion <= e.value + 1e-9);
        REQUIRE(e.value <= e.upper_companion + 1e-9);
        for (std::size_t k = 1; k < e.trace.size(); ++k)
            REQUIRE(e.trace[k].second >= e.trace[k - 1].second - 1e-8);
    }
}

TEST_CASE("X_sigma scales coefficients")
{
    auto c = Cocycle::trivial(1);
    CoefficientFunction f(1);
    f.set({2}, 1.0);
    f.set({-2}, 1.0);
    auto g = X_sigma(AlgebraElement(f, c), RatVec{Rat(1, 2)});
    REQUIRE(std::abs(g.coeffs.at({2}) - Complex{1, 0}) < 1e-15);
    REQUIRE(std::abs(g.coeffs.at({-2}) - Complex{-1, 0}) < 1e-15);

    auto z = X_sigma(AlgebraElement::delta({5}, c), RatVec{Rat(0)});
    REQUIRE(z.coeffs.empty());
}

TEST_CASE("df norm values")
{
    auto c = Cocycle::trivial(1);
    auto s = gs_z({1});
    auto facets = facets_of(enumerate_faces(s));

    REQUIRE(df_norm(AlgebraElement::delta({0}, c), facets).value == 0.0);

    CoefficientFunction f(1);
    f.set({1}, 1.0);
    f.set({-1}, 1.0);
    auto rep = df_norm(AlgebraElement(f, c), facets, 256, 1e-4);
    REQUIRE(rep.value == Catch::Approx(2.0).margin(2e-3));  // sup |2 sin t|

    auto sq = gs_square();
    auto c2 = Cocycle::trivial(2);
    auto rep2 = df_norm(AlgebraElement::delta({1, 0}, c2), facets_of(enumerate_faces(sq)));
    REQUIRE(rep2.value == Catch::Approx(1.0));
}

TEST_CASE("k constants for the even facet")
{
    auto s = gs_z({1, 2});
    auto l = LengthOracle::word(s);
    auto facets = facets_of(enumerate_faces_with_data(s));
    for (const Face& f : facets) {
        auto rec = orbit(l, f, box_window(1, 8), 32);
        auto kc = k_constants(f, l, rec);
        REQUIRE(kc.per_coset.size() == 2);
        REQUIRE(kc.per_coset[0].k_q == 1.0);
        REQUIRE(kc.per_coset[1].k_q == Catch::Approx(1.0));
        REQUIRE(kc.k_f == Catch::Approx(1.5));
    }
    REQUIRE(max_k_over_facets(l, facets) == Catch::Approx(1.5));

    // single-coset degenerate case
    auto s1 = gs_z({1});
    REQUIRE(max_k_over_facets(LengthOracle::word(s1), facets_of(enumerate_faces_with_data(s1))) == 1.0);
}

TEST_CASE("main inequality on simple elements")
{
    auto c = Cocycle::trivial(1);
    auto l1 = LengthOracle::norm_l1(1);
    auto facets = facets_of(enumerate_faces(gs_z({1})));

    for (Coord y : {1, -3, 4}) {
        auto rep = main_inequality_check(AlgebraElement::delta({y}, c), l1, facets, 1.0);
        REQUIRE(rep.pass);
    }
    auto rep0 = main_inequality_check(AlgebraElement::delta({0}, c), l1, facets, 1.0);
    REQUIRE(rep0.pass);
}

TEST_CASE("main inequality on random elements")
{
    std::mt19937_64 rng(29);
    // norm-restriction case on Z^2 with the golden-ratio cocycle
    auto c2 = Cocycle::rotation((1.0 + std::sqrt(5.0)) / 2.0);
    auto sq = gs_square();
    auto facets2 = facets_of(enumerate_faces(sq));
    auto l1 = LengthOracle::norm_l1(2);
    for (int i = 0; i < 5; ++i) {
        auto f = AlgebraElement(random_coeffs(2, 2, 5, rng), c2);
        if (f.coeffs.empty()) continue;
        auto rep = main_inequality_check(f, l1, facets2, 1.0, 1e-3, 16);
        INFO("df=" << rep.df << " L=" << rep.lip);
        REQUIRE(rep.pass);
    }
    // word case on Z with generators {1,2}
    auto c1 = Cocycle::trivial(1);
    auto s = gs_z({1, 2});
    auto lw = LengthOracle::word(s);
    auto facets1 = facets_of(enumerate_faces_with_data(s));
    double k = max_k_over_facets(lw, facets1);
    for (int i = 0; i < 5; ++i) {
        auto f = AlgebraElement(random_coeffs(1, 3, 4, rng), c1);
        if (f.coeffs.empty()) continue;
        auto rep = main_inequality_check(f, lw, facets1, k, 1e-3, 64);
        INFO("df=" << rep.df << " k=" << k << " L=" << rep.lip);
        REQUIRE(rep.pass);
    }
}

TEST_CASE("dual action invariance")
{
    auto c = Cocycle::rotation(0.37);
    std::mt19937_64 rng(31);
    auto f = AlgebraElement(random_coeffs(2, 2, 5, rng), c);

    auto same = dual_action(f, {0.0, 0.0});
    for (const auto& [p, v] : f.coeffs.values()) REQUIRE(std::abs(same.coeffs.at(p) - v) < 1e-15);

    auto l1 = LengthOracle::norm_l1(2);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        std::vector<double> p{uni(rng), uni(rng)};
        auto g = dual_action(f, p);
        REQUIRE(std::abs(L_ell(g, l1, 16, 1e-7).value - L_ell(f, l1, 16, 1e-7).value) < 1e-6);
        REQUIRE(std::abs(a_norm(g, 16, 1e-7).value - a_norm(f, 16, 1e-7).value) < 1e-6);
    }
}

TEST_CASE("holder modulus inequality")
{
    auto c = Cocycle::trivial(1);
    auto word = LengthOracle::word(gs_z({1}));
    HolderContext ctx(0.8);

    auto z = holder_check(AlgebraElement::delta({0}, c), 0.8, word, 0.1, 0.3, &ctx);
    REQUIRE(z.lhs == 0.0);
    REQUIRE(z.pass);

    auto st = holder_check(AlgebraElement::delta({1}, c), 0.8, word, 0.2, 0.2, &ctx);
    REQUIRE(st.lhs <= 1e-12);
    REQUIRE(st.pass);

    HolderContext ctx1(1.0);
    auto one = holder_check(AlgebraElement::delta({1}, c), 1.0, word, 0.0, std::numbers::pi / 8.0, &ctx1);
    REQUIRE(one.pass);
    REQUIRE(one.lhs > 0.1);  // genuinely two-sided

    std::mt19937_64 rng(37);
    for (int i = 0; i < 5; ++i) {
        auto f = AlgebraElement(random_coeffs(1, 4, 5, rng), c);
        if (f.coeffs.empty()) continue;
        auto rep = holder_check(f, 0.8, word, 0.1, 0.6, &ctx);
        REQUIRE(rep.pass);
    }

    REQUIRE_THROWS_AS(HolderContext(0.4), std::domain_error);
}

TEST_CASE("holder modulus shrinks with the gap")
{
    HolderContext ctx(0.8);
    double d5 = ctx.delta_for(0.05);
    REQUIRE(d5 > 0.0);
    REQUIRE(ctx.m_bounds(d5).first <= 0.05 + 1e-9);
    double d1 = ctx.delta_for(0.01);
    REQUIRE(d1 < d5);
    // m really is small throughout [0, delta]
    for (double u : {d5 / 7, d5 / 3, d5 * 0.99}) REQUIRE(ctx.m_bounds(u).second <= 0.055);
}

TEST_CASE("radius probe")
{
    auto word = LengthOracle::word(gs_z({1}));
    auto c = Cocycle::trivial(1);
    auto probe = radius_probe(word, c, 3.0, 8, 42, 64);
    REQUIRE(probe.ratio >= 0.5);
    REQUIRE(probe.ratio <= std::numbers::pi);
    // Radius consistency: l(x) >= 1/(2k) off 0 in a ball
    for (const Point& x : word.ball(10.0))
        if (!is_zero(x)) REQUIRE(word(x) >= 1.0 / (2.0 * probe.ratio) - 1e-9);

    // the single delta gives ratio exactly 1
    auto d1 = AlgebraElement::delta({1}, c);
    REQUIRE(a_norm(d1).value / L_ell(d1, word).value == Catch::Approx(1.0));
}

TEST_CASE("c-star identity proxy")
{
    auto c = Cocycle::rotation(0.23);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 3; ++i) {
        auto f = AlgebraElement(random_coeffs(2, 2, 4, rng), c);
        if (f.coeffs.empty()) continue;
        auto ff = twisted_convolve(involution(f), f);
        double lhs = a_norm(ff, 24, 1e-4).value;
        double rhs = a_norm(f, 24, 1e-4).value;
        REQUIRE(lhs == Catch::Approx(rhs * rhs).epsilon(2e-2));
    }
}

TEST_CASE("order lipnorm dominates the reduced norm off the trace")
{
    auto word = LengthOracle::word(gs_z({1, 2}));
    auto c = Cocycle::trivial(1);
    std::mt19937_64 rng(43);
    double s = 1.0;  // min off-zero length
    for (int i = 0; i < 10; ++i) {
        auto coeffs = random_coeffs(1, 4, 5, rng);
        coeffs.set({0}, 0.0);
        if (coeffs.empty()) continue;
        auto f = AlgebraElement(coeffs, c);
        REQUIRE(a_norm(f, 64).value <= order_lipnorm(coeffs, word) / s + 1e-9);
    }
}
