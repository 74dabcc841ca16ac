#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tsvs/errors.hpp"
#include "tsvs/io.hpp"

using namespace tsvs;
using helpers::P;

TEST_CASE("polynomial parsing and printing") {
    CHECK(io::parse_ratpoly("x^3 - 2") == P({-2, 0, 0, 1}));
    CHECK(io::parse_ratpoly("1/2*x^2 + x - 3/4") ==
          RatPoly(std::vector<Rational>{Rational(-3, 4), Rational(1), Rational(1, 2)}));
    CHECK(io::parse_ratpoly("  x ^ 3-2 ") == P({-2, 0, 0, 1}));  // whitespace-insensitive
    CHECK(io::parse_ratpoly("-x + 1") == P({1, -1}));
    CHECK(io::parse_ratpoly("(x+1)*(x-1)") == P({-1, 0, 1}));
    CHECK(io::parse_ratpoly("0").is_zero_poly());

    CHECK(io::poly_str(P({-2, 0, 0, 1})) == "x^3 - 2");
    CHECK(io::poly_str(RatPoly(std::vector<Rational>{Rational(-3, 4), Rational(1), Rational(1, 2)})) ==
          "1/2*x^2 + x - 3/4");
    CHECK(io::poly_str(RatPoly()) == "0");
    CHECK(io::poly_str(P({0, -1})) == "-x");

    // round-trip on random polynomials
    Rng rng(88);
    for (int trial = 0; trial < 50; ++trial) {
        RatPoly p = oracles::random_ratpoly(rng, 6, 9);
        CHECK(io::parse_ratpoly(io::poly_str(p)) == p);
    }
}

TEST_CASE("parse errors carry byte offsets") {
    try {
        io::parse_ratpoly("x^2 + y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);
    }
    try {
        io::parse_ratpoly("x^2 +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
    }
    CHECK_THROWS_AS(io::parse_ratpoly("x/x"), ParseError);
    CHECK_THROWS_AS(io::parse_ratpoly("1/0"), ParseError);
    CHECK_THROWS_AS(io::parse_ratpoly("x^9999"), ParseError);
}

TEST_CASE("number field elements") {
    NumberField k = helpers::q_cbrt2();
    NFElement x = io::parse_nf_element("1/2*g^2 + 1", k);
    CHECK(x == k.element(RatPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1, 2)})));
    CHECK(io::nf_str(x) == "1/2*g^2 + 1");
    CHECK(io::parse_nf_element("g^3", k) == k.from_rational(Rational(2)));  // reduced mod f
    CHECK(io::parse_nf_element("1/g", k) ==
          k.element(RatPoly(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)})));
    CHECK(io::nf_str(k.zero()) == "0");
    CHECK(io::nf_str(-k.gen()) == "-g");
}

TEST_CASE("rational functions") {
    RatFunc x = io::parse_ratfunc("(t^2+1)/(t-1)");
    CHECK(x == RatFunc(P({1, 0, 1}), P({-1, 1})));
    CHECK(io::ratfunc_str(x) == "(t^2 + 1)/(t - 1)");
    CHECK(io::parse_ratfunc(io::ratfunc_str(x)) == x);
    CHECK(io::parse_ratfunc("1/t") == RatFunc(P({1}), P({0, 1})));
    CHECK(io::parse_ratfunc("1/2*t") == RatFunc(P({0, 1}).scaled(Rational(1, 2))));
    CHECK(io::parse_ratfunc("1/(2*t)") == RatFunc(P({1}), P({0, 2})));
    CHECK(io::ratfunc_str(RatFunc()) == "0");
}

TEST_CASE("diff operators") {
    DiffOperator d0 = io::parse_diffop("D0");
    CHECK(d0.is_identity());
    DiffOperator op = io::parse_diffop("t*D1 + 2*D2");
    CHECK(op == DiffOperator::term(RatFunc::t(), 1) +
                    DiffOperator::term(RatFunc(Rational(2)), 2));
    CHECK(io::diffop_str(op) == "t*D1 + 2*D2");
    CHECK(io::parse_diffop(io::diffop_str(op)) == op);
    DiffOperator quot = DiffOperator::term(io::parse_ratfunc("(t+1)/(t-1)"), 1);
    CHECK(io::parse_diffop(io::diffop_str(quot)) == quot);
    DiffOperator neg = io::parse_diffop("-D1 + D0");
    CHECK(neg == DiffOperator::hasse(0) - DiffOperator::hasse(1));
    CHECK_THROWS_AS(io::parse_diffop("t + D1"), ParseError);  // term without D
}

TEST_CASE("field headers") {
    auto fd = io::parse_field_header("numberfield g: x^3 - 2");
    REQUIRE(std::holds_alternative<NumberField>(fd));
    CHECK(std::get<NumberField>(fd).degree() == 3);
    CHECK(io::field_str(std::get<NumberField>(fd)) == "numberfield g: x^3 - 2");

    CHECK(std::holds_alternative<io::FuncFieldTag>(io::parse_field_header("funcfield t")));
    auto q = io::parse_field_header("rationals");
    REQUIRE(std::holds_alternative<NumberField>(q));
    CHECK(std::get<NumberField>(q).is_rationals());
    CHECK(io::field_str(NumberField::rationals()) == "rationals");

    CHECK_THROWS_AS(io::parse_field_header("numberfield g: x^2 - 1"), Error);  // reducible
    CHECK_THROWS_AS(io::parse_field_header("funcfield s"), ParseError);
}

TEST_CASE("matrix documents") {
    SUBCASE("number field hom doc") {
        std::string text = "numberfield g: x^3 - 2\n[[0, -g], [g, -g]]\n";
        auto doc = io::parse_matrix_doc(text);
        REQUIRE(std::holds_alternative<io::NFMatrixDoc>(doc));
        auto& [k, m] = std::get<io::NFMatrixDoc>(doc);
        CHECK(k.degree() == 3);
        CHECK(m.at(0, 1) == -k.gen());
        CHECK(io::matrix_doc_str(k, m) == text);
    }
    SUBCASE("funcfield matrix") {
        auto doc = io::parse_matrix_doc("funcfield t\n[[t, 1], [0, t]]");
        REQUIRE(std::holds_alternative<Matrix<RatFunc>>(doc));
        CHECK(std::get<Matrix<RatFunc>>(doc).at(0, 0) == RatFunc::t());
    }
    SUBCASE("bare matrices are rational") {
        auto doc = io::parse_matrix_doc("[[2, 0, 1], [0, 2, 0], [0, 0, 2]]");
        REQUIRE(std::holds_alternative<io::NFMatrixDoc>(doc));
        CHECK(std::get<io::NFMatrixDoc>(doc).first.is_rationals());
    }
    SUBCASE("ragged rows are rejected") {
        CHECK_THROWS_AS(io::parse_matrix_doc("[[1, 2], [3]]"), ParseError);
    }
}

TEST_CASE("hs documents") {
    HigherDerivation d = io::parse_hs_doc("hs over funcfield t: [D0; D1; t*D1 + 2*D2]");
    CHECK(d.order() == 2);
    CHECK(d.identity_d0());
    CHECK(d.tail()[0].op() == DiffOperator::hasse(1));
    CHECK(io::hs_str(d) == "hs over funcfield t: [D0; D1; t*D1 + 2*D2]");
    CHECK_THROWS_AS(io::parse_hs_doc("hs over funcfield t: [D1; D1]"), ParseError);
}

TEST_CASE("basis documents") {
    NumberField k = helpers::q_cbrt2();
    auto basis = io::parse_basis_doc("[1, 1/2*g^2*X]", k);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == KPoly(k.one()));
    NFElement half_rho2 =
        k.element(RatPoly(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)}));
    CHECK(basis[1] == KPoly::monomial(half_rho2, 1));
}

TEST_CASE("kpoly printing matches the worked factor") {
    NumberField k = helpers::q_cbrt2();
    NFElement rho = k.gen();
    KPoly quad(std::vector<NFElement>{rho * rho, rho, k.one()});
    CHECK(io::kpoly_str(quad) == "x^2 + g*x + g^2");
    CHECK(io::kpoly_str(quad, "X") == "X^2 + g*X + g^2");
    // composite coefficients get parentheses and reparse
    KPoly mixed(std::vector<NFElement>{k.one() + rho, k.one()});
    std::string s = io::kpoly_str(mixed, "X");
    CHECK(io::parse_kpoly(s, k) == mixed);
}
