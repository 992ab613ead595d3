#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimforge/orderauto.hpp"
#include "dimforge/sunits.hpp"

namespace dimforge {

// Formal product of primes with exponents in {1, 2, ...} ∪ {infinity};
// infinity is std::nullopt.
struct SupernaturalNumber {
    std::map<std::int64_t, std::optional<std::int64_t>> factors;

    // "2:inf,3:inf", "2:3", "" (empty product). Exponents: digits or "inf".
    static SupernaturalNumber parse(std::string_view text);
    std::string str() const;
};

// The primes occurring with infinite exponent: the free-abelian generator
// set of the fundamental group of the matching UHF algebra.
std::vector<std::int64_t> uhf_fundamental_group(const SupernaturalNumber& n);

struct WitnessedGenerator {
    QuadRat lambda;
    OrderAuto phi;
};

enum class Equality { Established, Open };

struct FundamentalGroupReport {
    PositiveUnitGroup upper_bound;           // the positive-unit-group bound
    std::vector<WitnessedGenerator> witnessed;
    std::vector<QuadRat> unwitnessed;        // generators lacking a witness
    Equality equality;                       // Established iff unwitnessed empty
    long search_bound;                       // matrix entries searched in [-B, B]
    long classify_modulus;
};

// Bounds the group by the positive units, then tries to realize every
// generator as the scaling factor of an order automorphism: residue
// classes from classify_residues at lcm(m1, m2), lifted by bounded search
// over integer entries (minimal max-|entry|, then lexicographic (a,b,c,d)).
// A miss downgrades equality to Open; it is never a nonexistence claim.
FundamentalGroupReport fundamental_group(const DimGroupParams& params, long search_bound = 50,
                                         long sieve_cap = 360);

struct WitnessCheck {
    bool verified;
    std::string reason;                 // empty iff verified
    std::optional<DimElem> image_of_unit;
};

// is_well_defined plus the trace condition trace_state(phi(u)) = lambda.
WitnessCheck verify_witness(const DimGroupParams& params, const QuadRat& lambda,
                            const IntMat2& M);

}  // namespace dimforge
