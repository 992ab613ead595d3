#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "dimforge/fungroup.hpp"
#include "properties.hpp"

using namespace dimforge;

namespace {
const DimGroupParams P = make_params(3, 5, 6, 9, 3);
}

TEST_CASE("supernatural number parsing") {
    SupernaturalNumber n = SupernaturalNumber::parse("2:inf,3:inf");
    CHECK(n.str() == "2:inf,3:inf");
    REQUIRE(n.factors.size() == 2);
    CHECK_FALSE(n.factors.at(2).has_value());
    CHECK_FALSE(n.factors.at(3).has_value());

    CHECK(SupernaturalNumber::parse("").factors.empty());
    CHECK(SupernaturalNumber::parse("").str() == "");
    CHECK(SupernaturalNumber::parse("2:3").factors.at(2) == 3);
    CHECK(SupernaturalNumber::parse("3:inf, 2:4").str() == "2:4,3:inf");  // sorted
    CHECK(SupernaturalNumber::parse("2:∞").str() == "2:inf");
    CHECK(SupernaturalNumber::parse("104729:inf").str() == "104729:inf");

    CHECK_THROWS_AS(SupernaturalNumber::parse("4:inf"), ParseError);    // not prime
    CHECK_THROWS_AS(SupernaturalNumber::parse("2:0"), ParseError);      // exponent < 1
    CHECK_THROWS_AS(SupernaturalNumber::parse("2:-1"), ParseError);
    CHECK_THROWS_AS(SupernaturalNumber::parse("2:inf,2:3"), ParseError);  // duplicate
    CHECK_THROWS_AS(SupernaturalNumber::parse("2"), ParseError);          // no exponent
    CHECK_THROWS_AS(SupernaturalNumber::parse("x:inf"), ParseError);
    CHECK_THROWS_AS(SupernaturalNumber::parse("2:x"), ParseError);
    CHECK_THROWS_AS(SupernaturalNumber::parse("2:inf,"), ParseError);
}

TEST_CASE("UHF fundamental group goldens") {
    CHECK(uhf_fundamental_group(SupernaturalNumber::parse("2:inf,3:inf")) ==
          std::vector<std::int64_t>{2, 3});
    CHECK(uhf_fundamental_group(SupernaturalNumber::parse("2:inf")) ==
          std::vector<std::int64_t>{2});
    CHECK(uhf_fundamental_group(SupernaturalNumber::parse("")).empty());
    CHECK(uhf_fundamental_group(SupernaturalNumber::parse("2:7,3:1")).empty());
    CHECK(uhf_fundamental_group(SupernaturalNumber::parse("5:inf,2:9,3:inf")) ==
          std::vector<std::int64_t>{3, 5});
}

TEST_CASE("fundamental group of the reference instance is established") {
    FundamentalGroupReport rep = fundamental_group(P);
    CHECK(rep.equality == Equality::Established);
    CHECK(rep.unwitnessed.empty());
    CHECK(rep.search_bound == 50);
    CHECK(rep.classify_modulus == 9);
    CHECK(rep.upper_bound.rank == 2);

    REQUIRE(rep.witnessed.size() == 2);
    CHECK(rep.witnessed[0].lambda == QuadRat::integer(P.ring, 5));
    CHECK(rep.witnessed[1].lambda == QuadRat(P.ring, 2, 1, 0));

    // Deterministic minimal witnesses: smallest max-|entry|, then
    // lexicographic.
    CHECK(rep.witnessed[0].phi.mat == IntMat2::parse("-4,-9,-3,-7"));
    CHECK(rep.witnessed[1].phi.mat == IntMat2::parse("2,3,1,2"));

    // The witnessed scaling factors are exactly the upper-bound generators.
    std::set<std::string> expected, actual;
    for (const QuadRat& g : rep.upper_bound.generators) expected.insert(g.str());
    for (const WitnessedGenerator& w : rep.witnessed) actual.insert(w.lambda.str());
    CHECK(expected == actual);

    // Every witness survives independent re-verification and lies in the
    // upper bound group.
    for (const WitnessedGenerator& w : rep.witnessed) {
        WitnessCheck chk = verify_witness(P, w.lambda, w.phi.mat);
        CHECK(chk.verified);
        CHECK(contains(rep.upper_bound, w.lambda));
        CHECK(apply(w.phi, DimElem::unit(P)).trace_state() == w.lambda);
    }
}

TEST_CASE("fundamental group without congruence constraints") {
    DimGroupParams Q = make_params(3, 5, 6, 1, 1);
    FundamentalGroupReport rep = fundamental_group(Q, /*search_bound=*/5);
    CHECK(rep.equality == Equality::Established);
    CHECK(rep.classify_modulus == 1);
    REQUIRE(rep.witnessed.size() == 2);
    for (const WitnessedGenerator& w : rep.witnessed) {
        CHECK(verify_witness(Q, w.lambda, w.phi.mat).verified);
        mpz_class det = w.phi.mat.det();
        CHECK((det == 1 || det == -1));
    }
}

TEST_CASE("insufficient search bound reports the equality as open") {
    // Entries in [-1, 1] cannot even reach the residue 5 (mod 9).
    FundamentalGroupReport rep = fundamental_group(P, /*search_bound=*/1);
    CHECK(rep.equality == Equality::Open);
    CHECK(rep.witnessed.empty());
    CHECK(rep.unwitnessed.size() == 2);
    CHECK(rep.search_bound == 1);

    // Entries in [-4, 4] reach [[2,3],[1,2]] but no unimodular lift for 5.
    FundamentalGroupReport partial = fundamental_group(P, /*search_bound=*/4);
    CHECK(partial.equality == Equality::Open);
    REQUIRE(partial.witnessed.size() == 1);
    CHECK(partial.witnessed[0].lambda == QuadRat(P.ring, 2, 1, 0));
    CHECK(partial.witnessed[0].phi.mat == IntMat2::parse("2,3,1,2"));
    REQUIRE(partial.unwitnessed.size() == 1);
    CHECK(partial.unwitnessed[0] == QuadRat::integer(P.ring, 5));

    // The full bound recovers both witnesses.
    CHECK(fundamental_group(P, 9).equality == Equality::Established);
}

TEST_CASE("generators with empty classification stay unwitnessed") {
    // In E[3,2,4,5,3] both positive-unit generators fail the residue
    // classification outright, so no search bound can witness them.
    DimGroupParams Q = make_params(3, 2, 4, 5, 3);
    FundamentalGroupReport rep = fundamental_group(Q, 50);
    CHECK(rep.equality == Equality::Open);
    CHECK(rep.witnessed.empty());
    CHECK(rep.unwitnessed.size() == 2);
}

TEST_CASE("verify_witness goldens") {
    WitnessCheck ok = verify_witness(P, QuadRat::integer(P.ring, 5), IntMat2::parse("5,9,6,11"));
    CHECK(ok.verified);
    CHECK(ok.reason.empty());
    REQUIRE(ok.image_of_unit.has_value());
    CHECK(*ok.image_of_unit == make_elem(P, 0, 5, 0, 5, 6));

    WitnessCheck ok2 = verify_witness(P, QuadRat(P.ring, 2, 1, 0), IntMat2::parse("2,3,1,2"));
    CHECK(ok2.verified);
    CHECK(*ok2.image_of_unit == make_elem(P, 0, 2, 1, 2, 1));

    WitnessCheck mixed = verify_witness(P, QuadRat::integer(P.ring, 5), IntMat2::parse("2,3,1,2"));
    CHECK_FALSE(mixed.verified);
    CHECK(mixed.reason == "image of (1,(1,0)) is not in E");
    CHECK_FALSE(mixed.image_of_unit.has_value());

    WitnessCheck bad = verify_witness(P, QuadRat::integer(P.ring, 5), IntMat2::parse("5,0,0,2"));
    CHECK_FALSE(bad.verified);
    CHECK(bad.reason == "det=10");
}
