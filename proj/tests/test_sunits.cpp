#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "dimforge/sunits.hpp"
#include "properties.hpp"

using namespace dimforge;

TEST_CASE("splitting goldens") {
    CHECK(to_string(SplitKind::Inert) == "inert");
    CHECK(to_string(SplitKind::Split) == "split");
    CHECK(to_string(SplitKind::Ramified) == "ramified");

    SUBCASE("5 is inert in Z[sqrt(3)]") {
        RingParams r = RingParams::make(3, 5);
        SplittingType st = splitting_type(r);
        CHECK(st.kind == SplitKind::Inert);
        CHECK_FALSE(st.witness.has_value());
        REQUIRE(st.inert_certificates.has_value());
        CHECK(st.inert_certificates->first.modulus == 3);   // +5 ruled out mod 3
        CHECK(st.inert_certificates->second.modulus == 4);  // -5 ruled out mod 4
        CHECK(replay_certificate(3, 5, st.inert_certificates->first));
        CHECK(replay_certificate(3, -5, st.inert_certificates->second));
    }

    SUBCASE("2 is ramified in Z[sqrt(3)]") {
        RingParams r = RingParams::make(3, 2);
        SplittingType st = splitting_type(r);
        CHECK(st.kind == SplitKind::Ramified);
        REQUIRE(st.witness.has_value());
        CHECK(*st.witness == QuadRat(r, 1, 1, 0));  // 1 + sqrt(3), norm -2
        CHECK(st.witness->norm_numerator() == -2);
        // The ramification relation: (1+sqrt(3))^2 = 2 * (2+sqrt(3)).
        CHECK(*st.witness * *st.witness == QuadRat::integer(r, 2) * QuadRat(r, 2, 1, 0));
    }

    SUBCASE("11 splits in Z[sqrt(3)]") {
        RingParams r = RingParams::make(3, 11);
        SplittingType st = splitting_type(r);
        CHECK(st.kind == SplitKind::Split);
        REQUIRE(st.witness.has_value());
        CHECK(*st.witness == QuadRat(r, 1, 2, 0));  // 1 + 2*sqrt(3), norm -11
        CHECK(st.witness->norm_numerator() == -11);
    }

    SUBCASE("7 is inert in Z[sqrt(3)]") {
        CHECK(splitting_type(RingParams::make(3, 7)).kind == SplitKind::Inert);
    }

    SUBCASE("7 splits in Z[sqrt(2)]") {
        RingParams r = RingParams::make(2, 7);
        SplittingType st = splitting_type(r);
        CHECK(st.kind == SplitKind::Split);
        CHECK(*st.witness == QuadRat(r, 1, 2, 0));  // height 3 beats 3+sqrt(2)
    }
}

TEST_CASE("positive unit group generators") {
    SUBCASE("inert: {p, eps}") {
        RingParams r = RingParams::make(3, 5);
        PositiveUnitGroup g = positive_unit_generators(r);
        CHECK(g.rank == 2);
        REQUIRE(g.generators.size() == 2);
        CHECK(g.generators[0] == QuadRat::integer(r, 5));
        CHECK(g.generators[1] == QuadRat(r, 2, 1, 0));
        CHECK(g.eps == QuadRat(r, 2, 1, 0));
        CHECK_FALSE(g.pi.has_value());

        RingParams r7 = RingParams::make(3, 7);
        PositiveUnitGroup g7 = positive_unit_generators(r7);
        CHECK(g7.generators[0] == QuadRat::integer(r7, 7));
        CHECK(g7.generators[1] == QuadRat(r7, 2, 1, 0));
    }

    SUBCASE("ramified: {eps, pi}") {
        RingParams r = RingParams::make(3, 2);
        PositiveUnitGroup g = positive_unit_generators(r);
        CHECK(g.rank == 2);
        REQUIRE(g.generators.size() == 2);
        CHECK(g.generators[0] == QuadRat(r, 2, 1, 0));
        CHECK(g.generators[1] == QuadRat(r, 1, 1, 0));
        CHECK(*g.pi == QuadRat(r, 1, 1, 0));
    }

    SUBCASE("split: {pi, pibar, eps}") {
        RingParams r = RingParams::make(3, 11);
        PositiveUnitGroup g = positive_unit_generators(r);
        CHECK(g.rank == 3);
        REQUIRE(g.generators.size() == 3);
        CHECK(g.generators[0] == QuadRat(r, 1, 2, 0));
        CHECK(g.generators[1] == QuadRat(r, -1, 2, 0));
        CHECK(g.generators[2] == QuadRat(r, 2, 1, 0));
        // pi * pibar recovers p up to the recorded unit normalization.
        CHECK(*g.pi * *g.pi_bar == QuadRat::integer(r, 11));

        RingParams r2 = RingParams::make(2, 7);
        PositiveUnitGroup g2 = positive_unit_generators(r2);
        CHECK(g2.rank == 3);
        CHECK(g2.generators[0] == QuadRat(r2, 1, 2, 0));
        CHECK(g2.generators[1] == QuadRat(r2, -1, 2, 0));
        CHECK(g2.generators[2] == QuadRat(r2, 1, 1, 0));
        CHECK(*g2.pi * *g2.pi_bar == QuadRat::integer(r2, 7));
    }

    SUBCASE("every generator is a positive unit with a positive inverse") {
        for (auto [d, p] : {std::pair<long, long>{3, 5}, {3, 2}, {3, 11}, {3, 7}, {2, 7}}) {
            PositiveUnitGroup g = positive_unit_generators(RingParams::make(d, p));
            for (const QuadRat& gen : g.generators) {
                CHECK(gen.is_unit());
                CHECK(gen.sign() == Sign::Positive);
                CHECK(gen.inverse().sign() == Sign::Positive);
                CHECK(contains(g, gen));
                CHECK(contains(g, gen.inverse()));
            }
        }
    }
}

TEST_CASE("independence: small product boxes are collision free") {
    auto all_distinct = [](const PositiveUnitGroup& g, int lo, int hi) {
        std::set<std::string> seen;
        long count = 0;
        if (g.rank == 2) {
            for (int a = lo; a <= hi; ++a)
                for (int b = lo; b <= hi; ++b) {
                    QuadRat u = g.generators[0].pow(a) * g.generators[1].pow(b);
                    seen.insert(u.str());
                    ++count;
                }
        } else {
            for (int a = lo; a <= hi; ++a)
                for (int b = lo; b <= hi; ++b)
                    for (int c = lo; c <= hi; ++c) {
                        QuadRat u = g.generators[0].pow(a) * g.generators[1].pow(b) *
                                    g.generators[2].pow(c);
                        seen.insert(u.str());
                        ++count;
                    }
        }
        return seen.size() == static_cast<size_t>(count);
    };
    CHECK(all_distinct(positive_unit_generators(RingParams::make(3, 5)), -3, 3));
    CHECK(all_distinct(positive_unit_generators(RingParams::make(3, 2)), -3, 3));
    CHECK(all_distinct(positive_unit_generators(RingParams::make(3, 11)), -2, 2));
    CHECK(all_distinct(positive_unit_generators(RingParams::make(2, 7)), -2, 2));
}

TEST_CASE("membership: products of generators are always members") {
    for (auto [d, p] : {std::pair<long, long>{3, 5}, {3, 2}, {3, 11}}) {
        PositiveUnitGroup g = positive_unit_generators(RingParams::make(d, p));
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b) {
                QuadRat u = g.generators[0].pow(a) * g.generators[1].pow(b);
                INFO("d=", d, " p=", p, " u=", u.str());
                CHECK(contains(g, u));
            }
    }
}

TEST_CASE("membership: non-members are rejected") {
    RingParams r = RingParams::make(3, 5);
    PositiveUnitGroup g = positive_unit_generators(r);
    CHECK_FALSE(contains(g, QuadRat(r, 1, 1, 0)));    // norm -2: not a unit
    CHECK_FALSE(contains(g, QuadRat::sqrt_d(r)));     // norm -3: not a unit
    CHECK_FALSE(contains(g, -QuadRat(r, 2, 1, 0)));   // negative
    CHECK_FALSE(contains(g, QuadRat::zero(r)));
    CHECK_FALSE(contains(g, QuadRat::integer(r, 3))); // norm 9: not a unit

    // 1 + sqrt(10) is a positive unit of Z[1/3] + Z[1/3]sqrt(10) (norm -9)
    // but is not a product of 3 and the fundamental unit 3 + sqrt(10):
    // the valuation sits in a nonprincipal factor.
    RingParams r10 = RingParams::make(10, 3);
    PositiveUnitGroup g10 = positive_unit_generators(r10);
    CHECK(g10.splitting.kind == SplitKind::Inert);
    QuadRat outsider(r10, 1, 1, 0);
    CHECK(outsider.is_unit());
    CHECK(outsider.sign() == Sign::Positive);
    CHECK_FALSE(contains(g10, outsider));
    // ... while genuine products are still recognized there.
    CHECK(contains(g10, QuadRat::integer(r10, 3) * g10.eps.pow(2)));
}

namespace {

// Every positive unit (j + k sqrt(d))/p^e with |j|, |k| <= coeff_bound and
// e <= 4: unit norms are +-p^t, so scan j^2 = d k^2 +- p^t per k.
void check_completeness(const RingParams& ring, long coeff_bound) {
    PositiveUnitGroup g = positive_unit_generators(ring);
    long found = 0;
    bool saw_eps = false, saw_p = false;
    mpz_class limit = mpz_class(coeff_bound) * coeff_bound;
    for (mpz_class k = 0; k <= coeff_bound; ++k) {
        mpz_class dk2 = ring.d * k * k;
        for (int sign : {1, -1}) {
            mpz_class pt = 1;
            while (true) {
                mpz_class j2 = dk2 + sign * pt;
                if (j2 > limit + dk2 && sign > 0) break;
                if (j2 >= 0 && j2 <= limit && mpz_perfect_square_p(j2.get_mpz_t())) {
                    mpz_class j;
                    mpz_sqrt(j.get_mpz_t(), j2.get_mpz_t());
                    for (const mpz_class& jj : {j, mpz_class(-j)})
                        for (const mpz_class& kk : {k, mpz_class(-k)})
                            for (long e = 0; e <= 4; ++e) {
                                QuadRat u(ring, jj, kk, e);
                                if (u.sign() != Sign::Positive || !u.is_unit()) continue;
                                INFO("unit ", u.str());
                                CHECK(contains(g, u));
                                ++found;
                                if (u == g.eps) saw_eps = true;
                                if (u == QuadRat::integer(ring, ring.p)) saw_p = true;
                            }
                }
                if (sign < 0 && pt > dk2) break;
                pt *= ring.p;
            }
        }
    }
    CHECK(found > 0);
    CHECK(saw_eps);
    CHECK(saw_p);
}

}  // namespace

TEST_CASE("completeness: every bounded positive unit is generated") {
    check_completeness(RingParams::make(3, 5), 10000);   // inert
    check_completeness(RingParams::make(3, 2), 10000);   // ramified
    check_completeness(RingParams::make(3, 11), 10000);  // split
}
