#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace tanglecalc;

TEST_CASE("braid text")
{
    auto w = parse_braid("braid(3; 1 -2 2 1)");
    CHECK(w.strands == 3);
    CHECK(w.letters == std::vector<int>{1, -2, 2, 1});
    CHECK(format_braid(w) == "braid(3; 1 -2 2 1)");
    CHECK(parse_braid(format_braid(w)) == w);
    CHECK(parse_braid("braid(2;)").letters.empty());
    CHECK_THROWS_AS(parse_braid("braid(2; 2)"), PreconditionError);
    CHECK_THROWS_AS(parse_braid("braid(2; 0)"), ParseError);
    CHECK_THROWS_AS(parse_braid("braid(2 1 1)"), ParseError);
    CHECK_THROWS_AS(parse_braid("braid(3; [1..2)"), ParseError);
}

TEST_CASE("braid templates")
{
    auto t = parse_braid_template("braid(n+1; -[n..1]^2 {[1..n]^(n+1)} (1 2)^n)");
    auto w = instantiate_braid(t, {{"n", 3}});
    CHECK(w.strands == 4);
    std::vector<int> want{-3, -2, -1, -3, -2, -1};
    for (int k = 0; k < 4; ++k)
        for (int i = 1; i <= 3; ++i)
            want.push_back(i);
    for (int k = 0; k < 3; ++k) {
        want.push_back(1);
        want.push_back(2);
    }
    CHECK(w.letters == want);
    auto pre = instantiate_braid(t, {{"n", 3}}, false);
    CHECK(pre.letters.size() == 6 + 6);
    CHECK_THROWS_AS(instantiate_braid(t, {}), PreconditionError);
}

TEST_CASE("closures")
{
    auto tre = closure(BraidWord(2, {1, 1, 1}));
    CHECK(component_count(tre) == 1);
    CHECK(determinant(tre) == 3);
    CHECK(writhe(tre) == 3);

    auto unlink = closure(BraidWord(3, {}));
    CHECK(component_count(unlink) == 3);
    CHECK(determinant(unlink) == 0);

    // sigma_1 sigma_1^-1 is the trivial 2-braid: a two-component unlink
    auto trivial = closure(BraidWord(2, {1, -1}));
    CHECK(component_count(trivial) == 2);
    CHECK(determinant(trivial) == 0);
    CHECK(bracket(trivial) == LaurentPoly::delta());

    auto one = closure(BraidWord(2, {1}));
    CHECK(component_count(one) == 1);
    CHECK(determinant(one) == 1);
    CHECK(jones(one) == LaurentPoly(1));
}

TEST_CASE("writhe equals the exponent sum")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        int s = std::uniform_int_distribution<int>(1, 8)(rng);
        int len = s == 1 ? 0 : std::uniform_int_distribution<int>(0, 40)(rng);
        std::vector<int> letters;
        for (int i = 0; i < len; ++i) {
            int g = std::uniform_int_distribution<int>(1, s - 1)(rng);
            letters.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? g : -g);
        }
        BraidWord w(s, letters);
        auto d = closure(w);
        REQUIRE_FALSE(validate(d).has_value());
        CHECK(writhe(d) == w.exponent_sum());
    }
}

TEST_CASE("cancel to positive")
{
    auto a = cancel_to_positive(BraidWord(2, {1, -1}));
    REQUIRE(a.witness);
    CHECK(a.witness->letters.empty());

    auto b = cancel_to_positive(BraidWord(3, {2, -1, 1, 2}));
    REQUIRE(b.witness);
    CHECK(b.witness->letters == std::vector<int>{2, 2});

    // needs commutation to bring the pair together
    auto c = cancel_to_positive(BraidWord(4, {1, 3, -1, 3}));
    REQUIRE(c.witness);
    CHECK(c.witness->letters == std::vector<int>{3, 3});

    // needs a cyclic shift
    auto d = cancel_to_positive(BraidWord(3, {-2, 1, 1, 2}));
    REQUIRE(d.witness);
    CHECK(d.witness->letters == std::vector<int>{1, 1});

    // a negative generator that cannot cancel stays undetermined
    auto e = cancel_to_positive(BraidWord(3, {1, -2, 1}), {1000, false});
    CHECK_FALSE(e.witness);
    CHECK(e.states > 0);

    CHECK_THROWS_AS(cancel_to_positive(BraidWord(2, {1}), {0, false}), PreconditionError);
}

TEST_CASE("braid relation flag")
{
    // s1 s2 s1 s2^-1 s1^-1 s2^-1 is trivial but needs the braid relation
    BraidWord w(3, {1, 2, 1, -2, -1, -2});
    CHECK_FALSE(cancel_to_positive(w, {20000, false}).witness);
    auto r = cancel_to_positive(w, {20000, true});
    REQUIRE(r.witness);
    CHECK(r.witness->letters.empty());
}

TEST_CASE("cancellation preserves determinant and components")
{
    std::mt19937 rng(5);
    int found = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int s = std::uniform_int_distribution<int>(2, 5)(rng);
        std::vector<int> letters;
        for (int i = 0; i < 10; ++i)
            letters.push_back(std::uniform_int_distribution<int>(1, s - 1)(rng));
        // insert a few cancelling pairs
        for (int k = 0; k < 2; ++k) {
            int g = std::uniform_int_distribution<int>(1, s - 1)(rng);
            auto at = std::uniform_int_distribution<std::size_t>(0, letters.size())(rng);
            letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(at), {g, -g});
        }
        BraidWord w(s, letters);
        auto r = cancel_to_positive(w, {20000, false});
        if (!r.witness)
            continue;
        ++found;
        auto a = closure(w), b = closure(*r.witness);
        CHECK(determinant_info(a).value == determinant_info(b).value);
        CHECK(component_count(a) == component_count(b));
        CHECK(det_via_jones(a) == det_via_jones(b));
    }
    CHECK(found > 250);
}

TEST_CASE("positive braid genus")
{
    BraidWord tre(2, {1, 1, 1});
    CHECK(positive_braid_genus(tre) == 1);
    CHECK(is_fibered_positive(tre));
    CHECK_THROWS_AS(positive_braid_genus(BraidWord(2, {1, -1})), PreconditionError);

    // Hopf link: two components, surface is an annulus with b1 = 1
    auto hopf = braid_surface(BraidWord(2, {1, 1}));
    CHECK_FALSE(hopf.genus);
    CHECK(hopf.first_betti == 1);
    CHECK(positive_braid_genus(BraidWord(2, {1, 1})) == 1);
    CHECK_FALSE(is_fibered_positive(BraidWord(3, {1, 1, 1})));

    std::mt19937 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        int s = std::uniform_int_distribution<int>(2, 6)(rng);
        std::vector<int> letters;
        int len = std::uniform_int_distribution<int>(1, 25)(rng);
        for (int i = 0; i < len; ++i)
            letters.push_back(std::uniform_int_distribution<int>(1, s - 1)(rng));
        BraidWord w(s, letters);
        auto surf = braid_surface(w);
        if (!surf.genus)
            continue;
        auto d = closure(w);
        int circles = seifert_circles(d);
        CHECK(circles == s);
        CHECK(*surf.genus * 2 == len - circles + 1);
    }
}
