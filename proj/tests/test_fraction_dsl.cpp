#include <catch_amalgamated.hpp>

#include <filesystem>

#include "oracles.hpp"

using namespace tanglecalc;

TEST_CASE("fraction normalization")
{
    CHECK(Fraction(2, 4) == Fraction(1, 2));
    CHECK(Fraction(3, -6) == Fraction(-1, 2));
    CHECK(Fraction(3, -6).num() == -1);
    CHECK(Fraction(-5, 0) == Fraction::infinity());
    CHECK(Fraction(7, 0).str() == "1/0");
    CHECK(Fraction(0, 9) == Fraction(0));
    CHECK(Fraction(-4, 2).str() == "-2");
    CHECK_THROWS_AS(Fraction(0, 0), PreconditionError);
    CHECK(-Fraction(2, 3) == Fraction(-2, 3));
    CHECK(-Fraction::infinity() == Fraction::infinity());
}

TEST_CASE("affine printing and evaluation")
{
    CHECK(Affine(1, "n", 0).str() == "n");
    CHECK(Affine(-1, "n", 0).str() == "-n");
    CHECK(Affine(1, "n", 1).str() == "n+1");
    CHECK(Affine(-1, "n", -1).str() == "-(n+1)");
    CHECK(Affine(2, "n", -3).str() == "2*n-3");
    CHECK(Affine(7).str() == "7");
    CHECK(Affine(-1, "n", -1).eval({{"n", 2}}) == -3);
    CHECK_THROWS_AS(Affine(1, "n", 0).eval({}), PreconditionError);
    CHECK(parse_affine("-(n+1)") == Affine(-1, "n", -1));
    CHECK(parse_affine("3*n + 3") == Affine(3, "n", 3));
    CHECK_THROWS_AS(parse_affine("n + m"), ParseError);
}

TEST_CASE("parse shapes")
{
    auto a = parse("N(r(1/0))");
    REQUIRE(a.kind() == NodeKind::NumeratorClosure);
    CHECK(a.child().kind() == NodeKind::Rational);
    CHECK(a.child().fraction() == Fraction::infinity());

    auto b = parse("vt(3, slot) + r(1/2)");
    REQUIRE(b.kind() == NodeKind::Sum);
    CHECK(b.child(0).kind() == NodeKind::VerticalTwists);
    CHECK(b.child(0).twist_count() == 3);
    CHECK(b.child(0).child().kind() == NodeKind::Slot);
    CHECK(b.child(1).fraction() == Fraction(1, 2));

    auto c = parse("r(1) + r(2) + r(3)");
    REQUIRE(c.kind() == NodeKind::Sum);
    CHECK(c.child(0).kind() == NodeKind::Sum); // left associative
    CHECK(c.child(1).fraction() == Fraction(3));

    auto d = parse("  # comment\n D( rot( ht(-2, r(-3/4)) ) ) ");
    CHECK(d.kind() == NodeKind::DenominatorClosure);
    CHECK(d.child().child().twist_count() == -2);
    CHECK(d.child().child().child().fraction() == Fraction(-3, 4));
}

TEST_CASE("parse errors carry spans")
{
    auto span_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return e.span();
        }
        FAIL("no parse error for " << text);
        return SourceSpan{};
    };
    auto s = span_of("slot + slot");
    CHECK(s.start == 7);
    CHECK(s.end == 11);
    s = span_of("r(3/0)");
    CHECK(s.start == 2);
    s = span_of("vt(2 r(1))");
    CHECK(s.start == 5);
    s = span_of("q(1)");
    CHECK(s.start == 0);
    CHECK_THROWS_AS(parse("r(0/5)"), ParseError);
    CHECK_THROWS_AS(parse("r(1/-2)"), ParseError);
    CHECK_THROWS_AS(parse("N(r(1)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_NOTHROW(parse("r(1/0)"));
    for (const std::string bad : {"slot + slot", "r(3/0)", "vt(2 r(1))", "N(r(1)"}) {
        try {
            parse(bad);
        } catch (const ParseError& e) {
            CHECK(e.span().start <= e.span().end);
            CHECK(e.span().end <= bad.size());
        }
    }
}

TEST_CASE("format round trip on handwritten expressions")
{
    for (const std::string s : {"N(r(1/0))", "vt(3, slot) + r(1/2)", "r(1) + (r(2) + r(3))", "D(vt(n, r(1/0)))",
                                "ht(-(n+1), r(0))", "r((n+1)/2)", "r(2/(n+1))", "rot(rot(r(-7/3)))",
                                "net(box(r(1); 1,2,3,4), box(r(-1); 2,1,4,3))",
                                "net(box(slot; 1,2,3,4), box(r(2); 2,5,6,3), B(1,5,6,4))"}) {
        auto e = parse(s);
        CHECK(parse(format(e)) == e);
    }
    CHECK(format(parse("r(1) + (r(2) + r(3))")) == "r(1) + (r(2) + r(3))");
}

TEST_CASE("instantiate")
{
    auto t = parse("ht(-(n+1), slot)");
    auto c = instantiate(t, {{"n", 2}});
    CHECK(c.twist_count() == -3);
    CHECK_FALSE(c.is_symbolic());
    CHECK_THROWS_AS(instantiate(t, {}), PreconditionError);
    std::vector<Constraint> need{{"n", 2}};
    CHECK_THROWS_AS(instantiate(t, {{"n", 1}}, need), PreconditionError);
    CHECK_NOTHROW(instantiate(t, {{"n", 2}}, need));

    auto f = parse_file_text("#! require n >= 2\nN(vt(n, r(1/0)))\n");
    REQUIRE(f.constraints.size() == 1);
    CHECK(f.constraints[0].var == "n");
    CHECK(f.constraints[0].min == 2);
    CHECK_THROWS_AS(parse_file_text("#! demand n\nr(1)"), ParseError);
}

TEST_CASE("slot substitution")
{
    CHECK(substitute_slot(TangleExpr::slot(), zero_tangle()) == zero_tangle());
    CHECK_THROWS_AS(substitute_slot(parse("r(1)"), zero_tangle()), PreconditionError);
    CHECK_THROWS_AS(substitute_slot(parse("vt(2, slot)"), parse("slot")), PreconditionError);
    CHECK_THROWS_AS(numerator_closure(parse("slot + r(1)")), PreconditionError);
    auto closed = substitute_slot(parse("ht(2, slot)"), rational_tangle(Fraction(1, 3)));
    CHECK_FALSE(closed.has_slot());
}

TEST_CASE("every fixture file parses")
{
    namespace fs = std::filesystem;
    int count = 0;
    for (const auto& entry : fs::recursive_directory_iterator(fs::path(TANGLECALC_SOURCE_DIR) / "fixtures")) {
        auto p = entry.path();
        if (p.parent_path().filename() == "bad")
            continue;
        std::string text = read_text_file(p.string());
        if (p.extension() == ".tngl") {
            CHECK_NOTHROW(parse_file_text(text));
            ++count;
        } else if (p.extension() == ".braid") {
            CHECK_NOTHROW(parse_braid_template(text));
            ++count;
        } else if (p.extension() == ".pd") {
            CHECK_NOTHROW(import_pd(text));
            ++count;
        }
    }
    CHECK(count >= 6);

    for (const auto& entry : fs::directory_iterator(fs::path(TANGLECALC_SOURCE_DIR) / "fixtures" / "bad")) {
        std::string text = read_text_file(entry.path().string());
        if (entry.path().extension() == ".tngl")
            CHECK_THROWS_AS(parse_file_text(text), ParseError);
        else
            CHECK_THROWS(import_pd(text));
    }
}

TEST_CASE("built-in templates match the fixture files")
{
    std::string dir = std::string(TANGLECALC_SOURCE_DIR) + "/fixtures/";
    CHECK(read_text_file(dir + "t_n.tngl") == kTangleTemplate);
    CHECK(read_text_file(dir + "k_n.braid") == kKnotBraid);
}
