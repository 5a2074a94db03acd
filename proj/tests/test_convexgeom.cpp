#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "horolip/convexgeom.hpp"

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

GeneratingSet gs_hexagon()
{
    return GeneratingSet(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}});
}

} // namespace

TEST_CASE("facets of the cross-polytope")
{
    auto faces = enumerate_faces(gs_square());
    auto facets = facets_of(faces);
    REQUIRE(facets.size() == 4);
    std::set<std::pair<Rat, Rat>> sigmas;
    for (const Face& f : facets) {
        REQUIRE(f.members.size() == 2);
        REQUIRE(f.sigma_unique);
        sigmas.insert({f.sigma[0], f.sigma[1]});
    }
    REQUIRE(sigmas == std::set<std::pair<Rat, Rat>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    // 4 facets + 4 vertices
    REQUIRE(faces.size() == 8);
}

TEST_CASE("facets on the line")
{
    auto faces = enumerate_faces(gs_z({1}));
    REQUIRE(faces.size() == 2);
    for (const Face& f : faces) {
        REQUIRE(f.is_facet);
        REQUIRE(f.members.size() == 1);
        REQUIRE(f.sigma[0] * Rat(static_cast<long>(f.members[0][0])) == 1);
    }

    auto faces2 = enumerate_faces(gs_z({1, 2}));
    REQUIRE(faces2.size() == 2);
    for (const Face& f : faces2) {
        REQUIRE(f.is_facet);
        REQUIRE(f.members.size() == 1);
        REQUIRE(std::llabs(f.members[0][0]) == 2);
        Rat expect(1, 2);
        REQUIRE(abs(f.sigma[0]) == expect);
        // +-1 lie strictly inside
        REQUIRE(f.sigma_at({1}) < 1);
        REQUIRE(f.sigma_at({-1}) < 1);
    }
}

TEST_CASE("sigma is strictly below 1 off the face")
{
    for (const auto& s : {gs_square(), gs_hexagon()}) {
        auto faces = enumerate_faces(s);
        for (const Face& f : faces) {
            for (const Point& p : s.elements()) {
                Rat v = f.sigma_at(p);
                bool member = std::binary_search(f.members.begin(), f.members.end(), p);
                if (member)
                    REQUIRE(v == 1);
                else
                    REQUIRE(v < 1);
            }
        }
    }
}

TEST_CASE("every extreme point lies in a facet")
{
    for (const auto& s : {gs_square(), gs_hexagon()}) {
        auto faces = enumerate_faces(s);
        auto facets = facets_of(faces);
        for (const Point& v : extreme_points(faces)) {
            bool found = false;
            for (const Face& f : facets)
                found = found || std::binary_search(f.members.begin(), f.members.end(), v);
            REQUIRE(found);
        }
    }
}

TEST_CASE("gauge norm")
{
    auto s = gs_z({1, 2});
    REQUIRE(gauge_norm(s, Point{3}) == Rat(3, 2));
    REQUIRE(gauge_norm(s, Point{0}) == 0);

    auto sq = gs_square();
    REQUIRE(gauge_norm(sq, Point{1, 1}) == 2);
    // cross-check against the l1 norm on a box
    for (const Point& p : box_points(2, 3))
        REQUIRE(gauge_norm(sq, p) == Rat(static_cast<long>(l1_coord(p))));
}

TEST_CASE("dual norm")
{
    REQUIRE(dual_norm(gs_square(), RatVec{1, 1}) == 1);
    REQUIRE(dual_norm(gs_square(), RatVec{0, 0}) == 0);
    REQUIRE(dual_norm(gs_z({1, 2}), RatVec{1}) == 2);
}

TEST_CASE("gauge and dual norms are mutually dual")
{
    auto s = gs_hexagon();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-12, 12);
    for (int i = 0; i < 100; ++i) {
        Point x{num(rng), num(rng)};
        RatVec tau{Rat(num(rng), 7), Rat(num(rng), 7)};
        Rat lhs = rat_dot(tau, x);
        if (lhs < 0) lhs = -lhs;
        REQUIRE(lhs <= gauge_norm(s, x) * dual_norm(s, tau));
    }
    // equality for tau = sigma_F and x in the cone over F
    for (const Face& f : facets_of(enumerate_faces(s))) {
        Point x = add(scale(3, f.members[0]), scale(2, f.members[1]));
        REQUIRE(rat_dot(f.sigma, x) == gauge_norm(s, x) * dual_norm(s, f.sigma));
        REQUIRE(gauge_norm(s, x) == 5);
    }
}

TEST_CASE("gauge norm lower-bounds the word length")
{
    for (auto gens : {std::vector<Coord>{1, 2}, std::vector<Coord>{3, 8}}) {
        auto s = gs_z(gens);
        auto l = LengthOracle::word(s);
        for (const Point& x : l.ball(12)) {
            Rat g = gauge_norm(s, x);
            REQUIRE(g <= Rat(static_cast<long>(l.word_length(x))));
        }
    }
}

TEST_CASE("support bound |sigma(x)| <= l(x)")
{
    {
        auto s = gs_z({1, 2});
        auto l = LengthOracle::word(s);
        for (const Face& f : facets_of(enumerate_faces(s))) REQUIRE(support_bound_check(f, l, 20));
    }
    {
        auto s = gs_z({3, 8});
        auto l = LengthOracle::word(s);
        for (const Face& f : facets_of(enumerate_faces(s))) REQUIRE(support_bound_check(f, l, 30));
    }
}

TEST_CASE("subgroup data: even sublattice of Z")
{
    auto s = gs_z({1, 2});
    auto faces = facets_of(enumerate_faces(s));
    for (const Face& f : faces) {
        auto sd = subgroup_data(f, s);
        REQUIRE(sd.index == 2);
        REQUIRE(sd.coset_reps == std::vector<Point>{{0}, {1}});  // 1 and -1 tie on length; 1 is canonical
    }
}

TEST_CASE("subgroup data: full lattice for the l1 facet")
{
    auto s = gs_square();
    for (const Face& f : facets_of(enumerate_faces(s))) {
        auto sd = subgroup_data(f, s);
        REQUIRE(sd.index == 1);
        REQUIRE(sd.coset_reps == std::vector<Point>{{0, 0}});
    }
}

TEST_CASE("subgroup data: index-4 sublattice")
{
    Face f;
    f.members = {{0, 2}, {2, 0}};
    f.sigma = {Rat(1, 2), Rat(1, 2)};
    auto sd = subgroup_data(f, gs_square());
    REQUIRE(sd.index == 4);
    REQUIRE(sd.coset_reps.size() == 4);
    REQUIRE(sd.coset_reps.front() == Point{0, 0});
}

TEST_CASE("rank error for thin faces")
{
    Face f;
    f.members = {{1, 0}};
    f.sigma = {1, 0};
    REQUIRE_THROWS_AS(subgroup_data(f, gs_square()), rank_error);
}

TEST_CASE("sparse generators on the line: facet data")
{
    auto s = gs_z({3, 8});
    auto facets = facets_of(enumerate_faces(s));
    REQUIRE(facets.size() == 2);
    for (const Face& f : facets) {
        REQUIRE(std::llabs(f.members[0][0]) == 8);
        auto sd = subgroup_data(f, s);
        REQUIRE(sd.index == 8);
    }
}

TEST_CASE("gauge length oracle matches exact gauge")
{
    auto s = gs_z({1, 2});
    auto l = gauge_length_oracle(s);
    REQUIRE(l({3}) == Catch::Approx(1.5));
    REQUIRE(l.is_norm_restriction());
    auto ball = l.ball(2.0);
    REQUIRE(std::binary_search(ball.begin(), ball.end(), Point{4}));
    REQUIRE(!std::binary_search(ball.begin(), ball.end(), Point{5}));
}

TEST_CASE("hexagon facets")
{
    auto s = gs_hexagon();
    auto facets = facets_of(enumerate_faces(s));
    REQUIRE(facets.size() == 6);
    for (const Face& f : facets) {
        REQUIRE(f.members.size() == 2);
        auto sd = subgroup_data(f, s);
        REQUIRE(sd.index == 1);
    }
}
