#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace tanglecalc;

TEST_CASE("closed-form predictions")
{
    CHECK(predicted_slopes(2) == std::array<std::int64_t, 3>{31, 32, 33});
    CHECK(predicted_slopes(3) == std::array<std::int64_t, 3>{61, 62, 63});
    CHECK(predicted_genus(2) == 9);
    CHECK(predicted_genus(3) == 21);
    for (std::int64_t n = 2; n < 50; ++n)
        CHECK(predicted_genus(n + 1) > predicted_genus(n));
    auto f = framing_total(2);
    CHECK(f.base == -9);
    CHECK(f.total() == 31);
    CHECK(framing_total(3).total() == 61);
    CHECK_THROWS_AS(predicted_slopes(1), PreconditionError);
    CHECK_THROWS_AS(build_family(1), PreconditionError);
}

TEST_CASE("the template's 1/0 filling is determinant one")
{
    for (int n = 2; n <= 8; ++n) {
        auto fam = build_family(n);
        auto d = to_planar_diagram(fam.fillings[0].second);
        REQUIRE_FALSE(validate(d).has_value());
        CHECK(determinant(d) == 1);
        CHECK(jones(d.with_default_orientation()) == LaurentPoly(1));
    }
}

TEST_CASE("T_2 fillings")
{
    auto fam = build_family(2);
    auto d0 = to_planar_diagram(fam.fillings[1].second);
    CHECK(determinant(d0) == 31);
    CHECK(double_cover_homology(d0) == AbelianGroup::cyclic(31));
    CHECK(faces(d0).size() == d0.crossing_count() + 2);
    CHECK(component_count(d0) == 1);
    CHECK(det_via_jones(d0.with_default_orientation()) == 31);
    CHECK(determinant(to_planar_diagram(fam.fillings[2].second)) == 32);
    CHECK(determinant(to_planar_diagram(fam.fillings[3].second)) == 33);
}

TEST_CASE("T_n fillings follow m, m+1, m+2")
{
    for (int n = 2; n <= 6; ++n) {
        auto fam = build_family(n);
        for (int k = 0; k <= 2; ++k) {
            auto d = to_planar_diagram(fam.fillings[k + 1].second);
            auto want = 5 * n * n + 5 * n + 1 + k;
            CHECK(determinant(d) == want);
            auto h = double_cover_homology(d);
            CHECK(h.is_cyclic());
            CHECK(h.rank == 0);
            CHECK(h.order() == want);
            if (component_count(d) == 1)
                CHECK(want % 2 == 1);
        }
    }
}

TEST_CASE("filling through the DSL matches the built-in template")
{
    auto file = parse_file_text(read_text_file(std::string(TANGLECALC_SOURCE_DIR) + "/fixtures/t_n.tngl"));
    CHECK_THROWS_AS(instantiate(file.expr, {{"n", 1}}, file.constraints), PreconditionError);
    auto t = instantiate(file.expr, {{"n", 4}}, file.constraints);
    auto d = to_planar_diagram(substitute_slot(t, rational_tangle(Fraction(0))));
    CHECK(determinant(d) == 101);
}

TEST_CASE("other rational fillings are supported")
{
    auto fam = build_family(2);
    auto d = to_planar_diagram(substitute_slot(fam.tangle, rational_tangle(Fraction(1, 2))));
    CHECK_FALSE(validate(d).has_value());
    CHECK(determinant(d) == det_via_jones(d.with_default_orientation()));
}

TEST_CASE("K_n braid fixture")
{
    for (int n = 2; n <= 4; ++n) {
        auto fam = build_family(n);
        CHECK(fam.braid.strands == n + 1);
        CHECK(writhe(closure(fam.braid_pre_twist)) == -3 * n);
        auto r = cancel_to_positive(fam.braid);
        REQUIRE(r.witness);
        CHECK(static_cast<int>(r.witness->letters.size()) == 5 * n * n);
        CHECK(positive_braid_genus(*r.witness) == predicted_genus(n));
        CHECK(is_fibered_positive(*r.witness));
        auto d = closure(fam.braid);
        CHECK(component_count(d) == 1);
        CHECK(determinant(d) % 2 == 1);
    }
}

TEST_CASE("verification report")
{
    VerifyOptions opt;
    opt.jobs = 3;
    auto rep = verify_family({1, 2, 3}, opt);
    REQUIRE(rep.per_n.size() == 3);
    CHECK(rep.per_n[0].n == 1);
    CHECK_FALSE(rep.per_n[0].pass());
    CHECK(rep.per_n[0].checks.front().name == "constraint");
    CHECK(rep.per_n[1].pass());
    CHECK(rep.per_n[2].pass());
    REQUIRE(rep.uniform.size() == 3);
    for (const auto& u : rep.uniform)
        CHECK_FALSE(u.gluings.empty());

    // deterministic regardless of thread count
    opt.jobs = 1;
    auto again = verify_family({1, 2, 3}, opt);
    for (std::size_t i = 0; i < rep.per_n.size(); ++i) {
        REQUIRE(rep.per_n[i].checks.size() == again.per_n[i].checks.size());
        for (std::size_t j = 0; j < rep.per_n[i].checks.size(); ++j) {
            CHECK(rep.per_n[i].checks[j].name == again.per_n[i].checks[j].name);
            CHECK(rep.per_n[i].checks[j].computed == again.per_n[i].checks[j].computed);
        }
    }
}
