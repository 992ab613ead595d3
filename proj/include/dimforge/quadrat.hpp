#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "dimforge/errors.hpp"

namespace dimforge {

// Parameters of the ring Z[1/p] + Z[1/p]*sqrt(d).
struct RingParams {
    std::int64_t d;  // radicand, >= 2 and not a perfect square
    std::int64_t p;  // inverted prime, p prime and p does not divide d

    static RingParams make(std::int64_t d, std::int64_t p);  // validates

    bool operator==(const RingParams&) const = default;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline Sign operator*(Sign a, Sign b) {
    return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

// An element (j + k*sqrt(d)) / p^e in canonical form:
//   e >= 0, and if e > 0 then p does not divide both j and k.
// Immutable after construction; equality is structural.
class QuadRat {
  public:
    // Canonicalizing constructor. e may be negative: p^{-e} is folded
    // into the numerator.
    QuadRat(RingParams ring, mpz_class j, mpz_class k, long e = 0);

    static QuadRat zero(RingParams ring) { return {ring, 0, 0, 0}; }
    static QuadRat one(RingParams ring) { return {ring, 1, 0, 0}; }
    static QuadRat integer(RingParams ring, mpz_class n) { return {ring, std::move(n), 0, 0}; }
    static QuadRat sqrt_d(RingParams ring) { return {ring, 0, 1, 0}; }

    const RingParams& ring() const { return ring_; }
    const mpz_class& j() const { return j_; }
    const mpz_class& k() const { return k_; }
    unsigned long e() const { return e_; }

    bool is_zero() const { return j_ == 0 && k_ == 0; }
    bool is_one() const { return j_ == 1 && k_ == 0 && e_ == 0; }

    QuadRat conjugate() const;          // (j - k*sqrt(d))/p^e
    QuadRat norm() const;               // x * conjugate(x), k == 0
    mpz_class norm_numerator() const;   // j^2 - d*k^2 (denominator is p^{2e})
    bool is_unit() const;               // norm == +-p^m for some integer m
    QuadRat inverse() const;            // throws NotAUnitError
    Sign sign() const;                  // exact, integer comparisons only

    friend QuadRat operator+(const QuadRat& a, const QuadRat& b);
    friend QuadRat operator-(const QuadRat& a, const QuadRat& b);
    friend QuadRat operator*(const QuadRat& a, const QuadRat& b);
    QuadRat operator-() const;
    QuadRat pow(long n) const;  // negative n requires a unit

    bool operator==(const QuadRat& o) const {
        return ring_ == o.ring_ && j_ == o.j_ && k_ == o.k_ && e_ == o.e_;
    }
    bool operator!=(const QuadRat& o) const { return !(*this == o); }
    bool operator<(const QuadRat& o) const { return (*this - o).sign() == Sign::Negative; }
    bool operator>(const QuadRat& o) const { return o < *this; }

    // Height |j| + |k| used by the deterministic positive-associate rule.
    mpz_class height() const;

    // Canonical textual form, bit-exact: (2+1*sqrt(3))/5^0
    std::string str() const;
    // Human-friendly form: 5, 2+sqrt(3), (2-sqrt(3))/5^2, ...
    std::string pretty() const;

    // Parses the canonical grammar (non-canonical numerators are accepted
    // and canonicalized). Throws ParseError.
    static QuadRat parse(RingParams ring, std::string_view text);
    // Lenient parser for command-line input: "5", "2+sqrt3", "2+sqrt(3)",
    // "7-2*sqrt(3)/5^2", as well as the canonical grammar.
    static QuadRat parse_human(RingParams ring, std::string_view text);

  private:
    RingParams ring_;
    mpz_class j_, k_;
    unsigned long e_;
};

// p^t as an mpz.
mpz_class pow_p(std::int64_t p, unsigned long t);

// Mathematical remainder in [0, m).
std::int64_t mod_reduce(const mpz_class& v, std::int64_t m);

}  // namespace dimforge
