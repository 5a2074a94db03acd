#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "horolip/freegroup.hpp"

using namespace horolip;

namespace {

const std::string kLetters = "aAbB";

ReducedWord random_reduced(std::size_t len, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 3);
    std::string s;
    while (s.size() < len) {
        char c = kLetters[static_cast<std::size_t>(pick(rng))];
        if (!s.empty() && c == inverse_letter(s.back())) continue;
        s.push_back(c);
    }
    return ReducedWord(s);
}

BoundaryWord random_boundary(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> hlen(0, 4), clen(1, 4);
    for (;;) {
        try {
            ReducedWord head = random_reduced(hlen(rng), rng);
            ReducedWord cycle = random_reduced(clen(rng), rng);
            if (cycle.empty()) continue;
            return BoundaryWord(head, cycle);
        } catch (const std::invalid_argument&) {
            // junction cancelled; try again
        }
    }
}

std::vector<ReducedWord> all_words_up_to(std::size_t n)
{
    std::vector<ReducedWord> out{ReducedWord()};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : kLetters) {
                const std::string& base = out[i].str();
                if (!base.empty() && c == inverse_letter(base.back())) continue;
                if (base.size() + 1 == len) out.push_back(ReducedWord(base + c));
            }
        begin = end;
    }
    return out;
}

} // namespace

TEST_CASE("free reduction and multiplication")
{
    REQUIRE(multiply(ReducedWord("ab"), ReducedWord("BA")).empty());
    REQUIRE(multiply(ReducedWord("a"), ReducedWord("a")).str() == "aa");
    REQUIRE(multiply(ReducedWord("abA"), ReducedWord("aB")).str() == "a");

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto u = random_reduced(5, rng), v = random_reduced(4, rng), w = random_reduced(6, rng);
        REQUIRE(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
        REQUIRE(multiply(u, v).length() <= u.length() + v.length());
        REQUIRE(multiply(u, u.inverse()).empty());
    }

    REQUIRE_THROWS_AS(ReducedWord("aA"), std::invalid_argument);
    REQUIRE_THROWS_AS(ReducedWord("xyz"), std::invalid_argument);
    REQUIRE(ReducedWord::reduce("aAbBa").str() == "a");
}

TEST_CASE("boundary words canonicalize")
{
    // ab . (ab)^inf is just (ab)^inf
    auto w1 = BoundaryWord::parse("ab|ab");
    auto w2 = BoundaryWord::parse("|ab");
    REQUIRE(w1 == w2);
    REQUIRE(w1.head().empty());

    // proper powers collapse to the primitive cycle
    auto w3 = BoundaryWord::parse("|abab");
    REQUIRE(w3.cycle() == "ab");

    // junction must stay reduced
    REQUIRE_THROWS_AS(BoundaryWord::parse("aB|ba"), std::invalid_argument);
    REQUIRE_THROWS_AS(BoundaryWord::parse("|aA"), std::invalid_argument);

    for (std::size_t i = 0; i < 20; ++i) REQUIRE(w1.letter(i) == (i % 2 == 0 ? 'a' : 'b'));
}

TEST_CASE("shift agrees with the letter sequence")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto w = random_boundary(rng);
        for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{7}}) {
            auto s = w.shift(k);
            for (std::size_t i = 0; i < 12; ++i) REQUIRE(s.letter(i) == w.letter(i + k));
        }
    }
}

TEST_CASE("left multiplication agrees with prefix arithmetic")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_reduced(4, rng);
        auto w = random_boundary(rng);
        auto xw = left_multiply(x, w);
        // compare against x * (long prefix of w)
        auto p = multiply(x, w.prefix(30));
        for (std::size_t i = 0; i < p.length() && i < 20; ++i) REQUIRE(xw.letter(i) == p.letter(i));
    }
}

TEST_CASE("phi on the boundary: base cases")
{
    auto a = ReducedWord("a");
    REQUIRE(phi_boundary(a, BoundaryWord::parse("|ab")) == 1);
    REQUIRE(phi_boundary(a, BoundaryWord::parse("|b")) == -1);
    REQUIRE(phi_boundary(ReducedWord("ab"), BoundaryWord::parse("|ab")) == 2);
    REQUIRE(phi_boundary(ReducedWord(), BoundaryWord::parse("|ab")) == 0);
}

TEST_CASE("phi on the boundary matches the prefix limit")
{
    std::mt19937_64 rng(11);
    auto words = all_words_up_to(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto w = random_boundary(rng);
        for (const auto& x : words) {
            auto trace = prefix_phi_trace(x, w, 50);
            long long expect = phi_boundary(x, w);
            for (std::size_t k = 40; k < trace.size(); ++k) REQUIRE(trace[k] == expect);
        }
    }
}

TEST_CASE("phi satisfies the cocycle identity on the boundary")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_reduced(6, rng);
        auto y = random_reduced(5, rng);
        auto w = random_boundary(rng);
        long long lhs = phi_boundary(multiply(x, y), w);
        long long rhs = phi_boundary(x, w) + phi_boundary(y, left_multiply(x.inverse(), w));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("phi is bounded by the word length")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = random_reduced(static_cast<std::size_t>(trial % 7), rng);
        auto w = random_boundary(rng);
        REQUIRE(std::llabs(phi_boundary(x, w)) <= static_cast<long long>(x.length()));
    }
}

TEST_CASE("separation of boundary points")
{
    auto wit = separate(BoundaryWord::parse("|a"), BoundaryWord::parse("|b"));
    REQUIRE(wit.prefix.empty());
    REQUIRE(wit.letter == 'a');
    REQUIRE(wit.value_v == 1);
    REQUIRE(wit.value_w == -1);

    auto wit2 = separate(BoundaryWord::parse("|ab"), BoundaryWord::parse("|aB"));
    REQUIRE(wit2.prefix.str() == "a");
    REQUIRE(wit2.letter == 'b');

    REQUIRE_THROWS_AS(separate(BoundaryWord::parse("|ab"), BoundaryWord::parse("ab|ab")), no_separation_error);

    std::mt19937_64 rng(19);
    int done = 0;
    while (done < 100) {
        auto v = random_boundary(rng);
        auto w = random_boundary(rng);
        if (v == w) continue;
        auto s = separate(v, w);
        REQUIRE(s.value_v == 1);
        REQUIRE(s.value_w == -1);
        ++done;
    }
}

TEST_CASE("prefix rays are geodesic and converge to the boundary phi")
{
    auto w = BoundaryWord::parse("|a");
    auto ray = prefix_ray(w, 3);
    REQUIRE(ray.points.size() == 4);
    REQUIRE(ray.points[3].str() == "aaa");
    REQUIRE(classify_f2_ray(ray, 0.5, 0.0).cls == RayClass::geodesic);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto b = random_boundary(rng);
        auto r = prefix_ray(b, 24);
        REQUIRE(classify_f2_ray(r, 0.5, 0.0).cls == RayClass::geodesic);
    }

    // phi_a along prefixes of (ab)^inf stabilizes at 1
    auto trace = prefix_phi_trace(ReducedWord("a"), BoundaryWord::parse("|ab"), 40);
    for (std::size_t k = 5; k < trace.size(); ++k) REQUIRE(trace[k] == 1);
    // phi_b along prefixes of (aB)^inf stabilizes at -1
    auto trace2 = prefix_phi_trace(ReducedWord("b"), BoundaryWord::parse("|aB"), 40);
    for (std::size_t k = 5; k < trace2.size(); ++k) REQUIRE(trace2[k] == -1);
}
