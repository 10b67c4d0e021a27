#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apdiv/divisor_file.hpp"

#include <string>

using namespace apdiv;

TEST_CASE("parses the two-pair divisor over Q(sqrt2)") {
    const char* text =
        "# d[e1, sqrt2*e2] + d[sqrt2*e1, -e2] over Q(sqrt2)\n"
        "field { minpoly = [-2, 0, 1], interval = [1, 3/2] }\n"
        "m = 2\n"
        "pair mult=1 lambda=[1, 0] mu=[0, [0, 1]]\n"
        "pair mult=1 lambda=[[0, 1], 0] mu=[0, -1]\n";
    Divisor d = parse_divisor(text);
    CHECK(d.field()->degree() == 2);
    CHECK(d.field()->minpoly == std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});
    CHECK(d.field()->lo == Rat(1));
    CHECK(d.field()->hi == Rat(3, 2));
    CHECK(d.m() == 2);
    REQUIRE(d.pairs().size() == 2);
    auto f = d.field();
    CHECK(d.pairs()[0].lambda == ScalarVec{Scalar::one(f), Scalar::zero(f)});
    CHECK(d.pairs()[0].mu == ScalarVec{Scalar::zero(f), Scalar::theta(f)});
    CHECK(d.pairs()[1].lambda == ScalarVec{Scalar::theta(f), Scalar::zero(f)});
    CHECK(d.pairs()[1].mu == ScalarVec{Scalar::zero(f), -Scalar::one(f)});
    CHECK(d.pairs()[0].mult == 1);
}

TEST_CASE("field block is optional and defaults to Q") {
    Divisor d = parse_divisor("m = 1\npair mult=-3 lambda=[2/7] mu=[0]\n");
    CHECK(d.field()->is_rationals());
    CHECK(d.m() == 1);
    CHECK(d.pairs()[0].mult == -3);
    CHECK(d.pairs()[0].lambda[0] == Scalar::rational(d.field(), Rat(2, 7)));
}

TEST_CASE("comments, blank lines, and key order are flexible") {
    const char* text =
        "\n# leading comment\n"
        "field { interval = [1, 3/2], minpoly = [-2, 0, 1] }\n"
        "\n"
        "m = 2  # trailing comment\n"
        "pair mult=2 lambda=[1, 1] mu=[1, 1]\n";
    Divisor d = parse_divisor(text);
    CHECK(d.pairs().size() == 1);
    CHECK(d.pairs()[0].mult == 2);
}

TEST_CASE("degree-4 fields need the explicit irreducibility key") {
    const char* base =
        "field { minpoly = [1, 0, -10, 0, 1], interval = [3, 13/4]%s }\n"
        "m = 1\n"
        "pair mult=1 lambda=[1] mu=[0]\n";
    std::string with = base;
    with.replace(with.find("%s"), 2, ", assert_irreducible = true");
    Divisor d = parse_divisor(with);
    CHECK(d.field()->degree() == 4);
    CHECK(d.field()->irreducibility_asserted);

    std::string without = base;
    without.replace(without.find("%s"), 2, "");
    CHECK_THROWS_AS(parse_divisor(without), IrreducibilityNotCertified);

    std::string off = base;
    off.replace(off.find("%s"), 2, ", assert_irreducible = false");
    CHECK_THROWS_AS(parse_divisor(off), IrreducibilityNotCertified);
}

TEST_CASE("short scalar literals are padded with zeros") {
    const char* text =
        "field { minpoly = [-2, 0, 0, 1], interval = [1, 3/2] }\n"
        "m = 1\n"
        "pair mult=1 lambda=[[1, 2]] mu=[3]\n";
    Divisor d = parse_divisor(text);
    auto f = d.field();
    CHECK(d.pairs()[0].lambda[0] == Scalar(f, {Rat(1), Rat(2), Rat(0)}));
    CHECK(d.pairs()[0].mu[0] == Scalar::rational(f, 3));
}

TEST_CASE("malformed inputs are rejected with line numbers") {
    // Floats are not rationals.
    CHECK_THROWS_WITH_AS(parse_divisor("m = 1\npair mult=1 lambda=[1.5] mu=[0]\n"),
                         "line 2: malformed rational '1.5' (exact p/q only, no floats)",
                         ParseError);
    // Wrong vector length.
    CHECK_THROWS_AS(parse_divisor("m = 2\npair mult=1 lambda=[1] mu=[0, 1]\n"),
                    ParseError);
    // Scalar literal longer than the field degree (Q here, degree 1).
    CHECK_THROWS_AS(parse_divisor("m = 1\npair mult=1 lambda=[[1, 2]] mu=[0]\n"),
                    ParseError);
    // Zero pair and zero multiplicity.
    CHECK_THROWS_AS(parse_divisor("m = 1\npair mult=1 lambda=[0] mu=[0]\n"), ParseError);
    CHECK_THROWS_AS(parse_divisor("m = 1\npair mult=0 lambda=[1] mu=[0]\n"), ParseError);
    // Fractional or oversize multiplicities.
    CHECK_THROWS_AS(parse_divisor("m = 1\npair mult=1/2 lambda=[1] mu=[0]\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_divisor("m = 1\npair mult=99999999999999999999999 lambda=[1] mu=[0]\n"),
        ParseError);
    // m constraints.
    CHECK_THROWS_AS(parse_divisor("m = 0\n"), ParseError);
    CHECK_THROWS_AS(parse_divisor("pair mult=1 lambda=[1] mu=[0]\n"), ParseError);
    // Field block issues: unknown key, duplicate key, missing pieces.
    CHECK_THROWS_AS(
        parse_divisor("field { minpoly = [-2, 0, 1], interval = [1, 3/2], x = 1 }\nm = 1\n"),
        ParseError);
    CHECK_THROWS_AS(parse_divisor(
                        "field { minpoly = [-2, 0, 1], minpoly = [-3, 0, 1], "
                        "interval = [1, 3/2] }\nm = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_divisor("field { minpoly = [-2, 0, 1] }\nm = 1\n"), ParseError);
    CHECK_THROWS_AS(
        parse_divisor("field { minpoly = [-2, 0, 1], interval = [1, 3/2, 2] }\nm = 1\n"),
        ParseError);
    // Unexpected character.
    CHECK_THROWS_AS(parse_divisor("m = 1\npair mult=1 lambda=[1] mu=[0] ;\n"),
                    ParseError);
    // Field validation failures keep their own types.
    CHECK_THROWS_AS(
        parse_divisor("field { minpoly = [-2, 0, 2], interval = [1, 3/2] }\nm = 1\n"),
        NonMonic);
    CHECK_THROWS_AS(
        parse_divisor("field { minpoly = [-4, 0, 1], interval = [1, 3] }\nm = 1\n"),
        RationalRootPresent);
}

TEST_CASE("empty divisors parse to empty pair lists") {
    Divisor d = parse_divisor("m = 3\n");
    CHECK(d.m() == 3);
    CHECK(d.pairs().empty());
}

TEST_CASE("file loading reports missing paths as parse errors") {
    CHECK_THROWS_AS(load_divisor_file("/nonexistent/divisor.dspec"), ParseError);
}
