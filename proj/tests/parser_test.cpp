#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fermat/fixtures.hpp"
#include "fermat/parser.hpp"
#include "fermat/systems.hpp"
#include "test_support.hpp"

using namespace fermat;
using testsupport::random_expsum;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("literals and constant folding") {
    CHECK(parse_complex("1.25") == Complex(1.25));
    CHECK(parse_complex("-1.25*i") == Complex(0.0, -1.25));
    CHECK(std::abs(parse_complex("pi*i/2 - 2*log(2)") -
                   Complex(-2.0 * std::log(2.0), kPi / 2.0)) < 1e-15);
    CHECK(parse_complex("(5/4)") == Complex(1.25));
    CHECK(std::abs(parse_complex("exp(0)*3") - Complex(3.0)) < 1e-15);
}

TEST_CASE("expression structure") {
    // single-term exponential with constant folded prefactor
    ExpSum x = parse_expr("(5/4) * exp((1/2)*(z1 + 2*z2 + 2*pi*i))", 2);
    REQUIRE(x.size() == 1);
    Complex lead = x.terms()[0].coeff.constant_term();
    CHECK(std::abs(lead - Complex(-1.25)) < 1e-12);  // e^{pi i} folded

    CHECK(parse_expr("exp(z1) - exp(z1)", 2).is_zero());

    // precedence: ^ binds before unary minus, '*' after
    ExpSum y = parse_expr("-z1^2", 1);
    REQUIRE(y.size() == 1);
    MultiIndex sq(1);
    sq[0] = 2;
    CHECK(y.terms()[0].coeff.coeff(sq) == Complex(-1.0));

    ExpSum z = parse_expr("2*z1^2 - z1*z1*2", 1);
    CHECK(z.is_zero());
}

TEST_CASE("parse errors carry positions and reasons") {
    CHECK_THROWS_AS(parse_expr("z3 + 1", 2), ParseError);
    CHECK_THROWS_AS(parse_expr("exp(exp(z1))", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("log(-1)", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("log(z1)", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("1/z1", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("z1^(-2)", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("z1 +", 1), ParseError);
    CHECK_THROWS_AS(parse_expr("(z1", 1), ParseError);
    try {
        parse_expr("z1 + $", 1);
        FAIL("expected error");
    } catch (const ParseError& err) {
        CHECK(err.column() == 6);
    }
}

TEST_CASE("printing canonical forms") {
    CHECK(print_expr(ExpSum(2)) == "0");
    CHECK(print_expr(parse_expr("exp(z1) - exp(z1)", 2)) == "0");
    ExpSum x = parse_expr("-1.25*i*exp(z1)", 2);
    CHECK(print_expr(x) == "-1.25*i*exp(z1)");
}

TEST_CASE("print-parse round trip on 1000 random sums") {
    Rng rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t dim = 1 + static_cast<std::size_t>(rng.range(0, 2));
        ExpSum x = random_expsum(rng, dim, 3);
        std::string text = print_expr(x);
        ExpSum back = parse_expr(text, dim);
        CHECK(back == x);
        if (!(back == x)) {
            MESSAGE("failed round trip: ", text);
            break;
        }
    }
}

TEST_CASE("manifest round trip is byte identical") {
    for (const auto& fixture : builtin_fixtures()) {
        std::string text = print_manifest(fixture.doc);
        ManifestDocument parsed = parse_manifest(text);
        CHECK(print_manifest(parsed) == text);
        CHECK(parsed.manifest.f1 == fixture.doc.manifest.f1);
        CHECK(parsed.manifest.f2 == fixture.doc.manifest.f2);
    }
}

TEST_CASE("manifest validation errors") {
    CHECK_THROWS_AS(parse_manifest("system=difference\nn=2\nwhat=1\n"), ParseError);
    CHECK_THROWS_AS(parse_manifest("system=nonsense\nn=2\n"), ParseError);
    // duplicate key
    CHECK_THROWS_AS(parse_manifest("system=difference\nn=2\nn=2\n"), ParseError);
    // missing f1
    CHECK_THROWS_AS(parse_manifest("system=difference\nn=1\nc=(1)\nf2=0\ng1=0\ng2=0\n"),
                    ParseError);
    // diffpdd must not carry g's
    CHECK_THROWS_AS(
        parse_manifest("system=diffpdd\nn=2\nk=1\nc=(1, 0)\nf1=exp(z1)\nf2=exp(z1)\ng1=z1\ng2=z1\n"),
        ParseError);
}

TEST_CASE("parsed example5 manifest verifies") {
    std::string text = print_manifest(fixture_by_name("example5").doc);
    ManifestDocument doc = parse_manifest(text);
    ResidualReport report = verify(doc.manifest, doc.tol, doc.sampling);
    CHECK(report.pass());
}
