#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dimforge/quadrat.hpp"
#include "properties.hpp"

using namespace dimforge;

namespace {
const RingParams R35 = RingParams::make(3, 5);
}

TEST_CASE("ring parameter validation") {
    CHECK_NOTHROW(RingParams::make(2, 7));
    CHECK_NOTHROW(RingParams::make(3, 5));
    CHECK_NOTHROW(RingParams::make(10, 3));
    CHECK_THROWS_AS(RingParams::make(4, 5), PerfectSquareError);   // square d
    CHECK_THROWS_AS(RingParams::make(9, 2), PerfectSquareError);
    CHECK_THROWS_AS(RingParams::make(1, 5), Error);                // d < 2
    CHECK_THROWS_AS(RingParams::make(3, 4), Error);                // p not prime
    CHECK_THROWS_AS(RingParams::make(3, 1), Error);
    CHECK_THROWS_AS(RingParams::make(6, 3), Error);                // p | d
}

TEST_CASE("canonical form") {
    // p dividing both coordinates cancels against the denominator.
    QuadRat a(R35, 5, 10, 1);
    CHECK(a.j() == 1);
    CHECK(a.k() == 2);
    CHECK(a.e() == 0);

    // Negative exponent folds into the numerator.
    QuadRat b(R35, 2, 1, -2);
    CHECK(b.j() == 50);
    CHECK(b.k() == 25);
    CHECK(b.e() == 0);

    // p dividing only one coordinate does not reduce.
    QuadRat c(R35, 3, 5, 2);
    CHECK(c.j() == 3);
    CHECK(c.k() == 5);
    CHECK(c.e() == 2);

    // Deep cancellation.
    QuadRat d(R35, 125, 250, 5);
    CHECK(d.j() == 1);
    CHECK(d.k() == 2);
    CHECK(d.e() == 2);

    // Zero stays at denominator 1.
    QuadRat z(R35, 0, 0, 7);
    CHECK(z.is_zero());
    CHECK(z.e() == 0);
}

TEST_CASE("string forms") {
    CHECK(QuadRat(R35, 2, 1, 0).str() == "(2+1*sqrt(3))/5^0");
    CHECK(QuadRat(R35, 2, -1, 0).str() == "(2-1*sqrt(3))/5^0");
    CHECK(QuadRat(R35, -1, 2, 0).str() == "(-1+2*sqrt(3))/5^0");
    CHECK(QuadRat(R35, 3, 5, 2).str() == "(3+5*sqrt(3))/5^2");
    CHECK(QuadRat::zero(R35).str() == "(0+0*sqrt(3))/5^0");

    CHECK(QuadRat::integer(R35, 5).pretty() == "5");
    CHECK(QuadRat(R35, 2, 1, 0).pretty() == "2+sqrt(3)");
    CHECK(QuadRat(R35, -1, 2, 0).pretty() == "-1+2*sqrt(3)");
    CHECK(QuadRat(R35, 2, -1, 2).pretty() == "(2-sqrt(3))/5^2");
    CHECK(QuadRat(R35, 0, 1, 1).pretty() == "sqrt(3)/5");
    CHECK(QuadRat(R35, 0, -1, 0).pretty() == "-sqrt(3)");
    CHECK(QuadRat::zero(R35).pretty() == "0");
}

TEST_CASE("parse canonical grammar") {
    CHECK(QuadRat::parse(R35, "(2+1*sqrt(3))/5^0") == QuadRat(R35, 2, 1, 0));
    CHECK(QuadRat::parse(R35, "(-1+2*sqrt(3))/5^3") == QuadRat(R35, -1, 2, 3));
    // Non-canonical numerators are canonicalized, not rejected.
    CHECK(QuadRat::parse(R35, "(5+10*sqrt(3))/5^1") == QuadRat(R35, 1, 2, 0));

    CHECK_THROWS_AS(QuadRat::parse(R35, "2+sqrt(3)"), ParseError);
    CHECK_THROWS_AS(QuadRat::parse(R35, "(2+1*sqrt(5))/5^0"), ParseError);  // wrong d
    CHECK_THROWS_AS(QuadRat::parse(R35, "(2+1*sqrt(3))/7^0"), ParseError);  // wrong p
    CHECK_THROWS_AS(QuadRat::parse(R35, "(2+1*sqrt(3))/5^0junk"), ParseError);
}

TEST_CASE("parse human-friendly forms") {
    CHECK(QuadRat::parse_human(R35, "5") == QuadRat::integer(R35, 5));
    CHECK(QuadRat::parse_human(R35, "-7") == QuadRat::integer(R35, -7));
    CHECK(QuadRat::parse_human(R35, "2+sqrt3") == QuadRat(R35, 2, 1, 0));
    CHECK(QuadRat::parse_human(R35, "2+sqrt(3)") == QuadRat(R35, 2, 1, 0));
    CHECK(QuadRat::parse_human(R35, "2 + sqrt(3)") == QuadRat(R35, 2, 1, 0));
    CHECK(QuadRat::parse_human(R35, "7-2*sqrt(3)/5^2") == QuadRat(R35, 7, -2, 2));
    CHECK(QuadRat::parse_human(R35, "sqrt(3)") == QuadRat::sqrt_d(R35));
    CHECK(QuadRat::parse_human(R35, "-sqrt(3)") == QuadRat(R35, 0, -1, 0));
    CHECK(QuadRat::parse_human(R35, "(2+1*sqrt(3))/5^0") == QuadRat(R35, 2, 1, 0));
    CHECK_THROWS_AS(QuadRat::parse_human(R35, "sqrt(5)"), ParseError);
    CHECK_THROWS_AS(QuadRat::parse_human(R35, ""), ParseError);
}

TEST_CASE("arithmetic goldens") {
    QuadRat eps(R35, 2, 1, 0);  // 2 + sqrt(3), norm +1
    CHECK(eps.norm() == QuadRat::one(R35));
    CHECK(eps.norm_numerator() == 1);
    CHECK(eps.conjugate() == QuadRat(R35, 2, -1, 0));
    CHECK(eps.inverse() == QuadRat(R35, 2, -1, 0));
    CHECK(eps * eps == QuadRat(R35, 7, 4, 0));
    CHECK(eps.pow(2) == QuadRat(R35, 7, 4, 0));
    CHECK(eps.pow(0) == QuadRat::one(R35));
    CHECK(eps.pow(-1) == eps.conjugate());
    CHECK(eps + eps.conjugate() == QuadRat::integer(R35, 4));
    CHECK(eps - eps == QuadRat::zero(R35));
    CHECK(-eps == QuadRat(R35, -2, -1, 0));
    CHECK(eps.height() == 3);

    QuadRat five = QuadRat::integer(R35, 5);
    CHECK(five.is_unit());  // norm 25 = 5^2
    CHECK(five.inverse() == QuadRat(R35, 1, 0, 1));
    CHECK(five.inverse() * five == QuadRat::one(R35));

    QuadRat sd = QuadRat::sqrt_d(R35);
    CHECK(sd * sd == QuadRat::integer(R35, 3));
    CHECK(sd.norm_numerator() == -3);
    CHECK_FALSE(sd.is_unit());  // norm -3 is not +-5^m
    CHECK_THROWS_AS(sd.inverse(), NotAUnitError);
    CHECK_THROWS_AS(sd.pow(-2), NotAUnitError);
}

TEST_CASE("sign and comparisons") {
    CHECK(QuadRat::zero(R35).sign() == Sign::Zero);
    CHECK(QuadRat(R35, 2, 1, 0).sign() == Sign::Positive);
    CHECK(QuadRat(R35, -2, -1, 0).sign() == Sign::Negative);
    // Mixed signs decided by j^2 vs d k^2: 7 > 4*sqrt(3) since 49 > 48.
    CHECK(QuadRat(R35, 7, -4, 0).sign() == Sign::Positive);
    CHECK(QuadRat(R35, -7, 4, 0).sign() == Sign::Negative);
    // 97^2 = 9409 just beats 3*56^2 = 9408.
    CHECK(QuadRat(R35, 97, -56, 0).sign() == Sign::Positive);
    CHECK(QuadRat(R35, -97, 56, 0).sign() == Sign::Negative);
    // 1351/780 is a convergent of sqrt(3) from above: 1351^2 - 3*780^2 = 1.
    CHECK(QuadRat(R35, 1351, -780, 0).sign() == Sign::Positive);
    CHECK(QuadRat(R35, -1351, 780, 0).sign() == Sign::Negative);

    CHECK(QuadRat(R35, 1, 1, 0) < QuadRat(R35, 3, 0, 0));
    CHECK(QuadRat(R35, 2, 1, 0) > QuadRat::one(R35));
}

TEST_CASE("mod_reduce and pow_p") {
    CHECK(mod_reduce(mpz_class(17), 5) == 2);
    CHECK(mod_reduce(mpz_class(-17), 5) == 3);
    CHECK(mod_reduce(mpz_class(0), 9) == 0);
    CHECK(mod_reduce(mpz_class(-9), 9) == 0);
    CHECK(pow_p(5, 0) == 1);
    CHECK(pow_p(5, 6) == 15625);
    CHECK(pow_p(2, 10) == 1024);
}

TEST_CASE("property: ring axioms, norms, round trips (10^4 cases)") {
    auto res = props::quadrat_axioms(10000, 0x51C0FFEEu);
    INFO(res.first_failure);
    CHECK(res.failed == 0);
    CHECK(res.run >= 10000);
}

TEST_CASE("property: exact sign agrees with 512-bit float oracle") {
    auto res = props::quadrat_sign_oracle(10000, 0xA5A5A5A5u);
    INFO(res.first_failure);
    CHECK(res.failed == 0);
    CHECK(res.run >= 10000);
}
