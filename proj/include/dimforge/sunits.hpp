#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimforge/pell.hpp"
#include "dimforge/quadrat.hpp"

namespace dimforge {

enum class SplitKind { Inert, Split, Ramified };

std::string to_string(SplitKind k);

// How p factors in Z[sqrt(d)], decided by solvability of x^2 - d y^2 = +-p:
// split/ramified verdicts carry a norm +-p witness, inert carries the two
// unsolvability certificates.
struct SplittingType {
    SplitKind kind;
    std::optional<QuadRat> witness;
    std::optional<std::pair<Certificate, Certificate>> inert_certificates;  // for +p, -p
};

SplittingType splitting_type(const RingParams& ring, long sieve_cap = 360);

// Generators of the group of positive units of Z[1/p] + Z[1/p]*sqrt(d).
struct PositiveUnitGroup {
    RingParams ring;
    std::vector<QuadRat> generators;  // deterministic order, all positive units
    int rank;
    SplittingType splitting;
    QuadRat eps;                    // fundamental unit of Z[sqrt(d)], > 1
    std::optional<QuadRat> pi;      // norm +-p witness (split/ramified)
    std::optional<QuadRat> pi_bar;  // positive associate of conjugate(pi) (split)
};

PositiveUnitGroup positive_unit_generators(const RingParams& ring, long sieve_cap = 360);

// Exact membership of a positive unit in the generated subgroup, by
// valuation extraction and fundamental-unit descent. No floating point.
bool contains(const PositiveUnitGroup& group, const QuadRat& u);

}  // namespace dimforge
