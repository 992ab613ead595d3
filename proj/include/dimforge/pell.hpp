#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimforge/errors.hpp"

namespace dimforge {

// Continued fraction of sqrt(d): [a0; period repeating], minimal period.
// The last period element always equals 2*a0.
struct CfExpansion {
    mpz_class a0;
    std::vector<mpz_class> period;
};

CfExpansion cf_expand(const mpz_class& d);  // throws PerfectSquareError

// Smallest x + y*sqrt(d) > 1 with x^2 - d y^2 = +-1.
struct FundamentalUnit {
    mpz_class x, y;
    int norm_sign;  // +1 or -1
};

FundamentalUnit fundamental_unit(const mpz_class& d);  // throws PerfectSquareError

enum class SieveResult { Impossible, Inconclusive };

// Impossible iff x^2 - d y^2 = n (mod m) has no solution among all m^2
// residue pairs.
SieveResult residue_sieve(const mpz_class& d, const mpz_class& n, long m);

// Machine-checkable evidence for an unsolvability verdict.
struct Certificate {
    enum class Kind { ModularSieve, ExhaustedBound };
    Kind kind;
    long modulus = 0;       // sieve case
    mpz_class bound;        // exhausted-bound case: all 0 <= y <= bound searched
    mpz_class unit_x, unit_y;  // justification constant: fundamental +1 solution

    std::string str() const;
};

struct NormEqVerdict {
    bool solvable;
    // Class representatives with x >= 0 and 0 <= y <= search_bound,
    // sorted by (y, x). Every pair satisfies x^2 - d y^2 = n exactly.
    std::vector<std::pair<mpz_class, mpz_class>> solutions;
    std::optional<Certificate> certificate;  // present iff unsolvable
    mpz_class search_bound;
};

// Decides solvability of x^2 - d y^2 = n over the integers. Unsolvable
// verdicts carry a certificate: a modular sieve over the smallest working
// modulus in 2..sieve_cap, or the exhausted search bound derived from the
// fundamental unit.
NormEqVerdict solve_norm_equation(const mpz_class& d, const mpz_class& n, long sieve_cap = 360);

// Re-verifies a certificate independently of the solver path.
bool replay_certificate(const mpz_class& d, const mpz_class& n, const Certificate& cert);

}  // namespace dimforge
