#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dimforge/dimgroup.hpp"

namespace dimforge {

// Row-major 2x2 integer matrix.
struct IntMat2 {
    mpz_class a, b, c, d;

    static IntMat2 identity() { return {1, 0, 0, 1}; }
    mpz_class det() const { return a * d - b * c; }
    IntMat2 adjugate() const { return {d, -b, -c, a}; }

    friend IntMat2 operator*(const IntMat2& l, const IntMat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
                l.c * r.b + l.d * r.d};
    }
    bool operator==(const IntMat2&) const = default;

    std::string str() const;  // [[a,b],[c,d]]
    // Accepts "a,b,c,d" or "[[a,b],[c,d]]" (whitespace ignored).
    static IntMat2 parse(std::string_view text);
};

// A congruence class of matrices modulo `modulus`, tagged with the exact
// determinant sign its integer lifts must have.
struct ResidueClass {
    long modulus;
    std::array<long, 4> m;  // entries in [0, modulus)
    int det_sign;           // +1 or -1

    auto key() const { return std::tuple(m[0], m[1], m[2], m[3], det_sign); }
    bool operator==(const ResidueClass&) const = default;
    bool operator<(const ResidueClass& o) const { return key() < o.key(); }

    std::string str() const;  // [[5,0],[0,2]] (det=+1, mod 9)
};

struct WellDefined {
    bool ok;
    std::string reason;  // empty iff ok
};

// phi(r, v) = (lambda*r, M*v) maps E into E iff: det M = +-1, lambda is a
// positive unit, and the images of the four determining elements
// (1,(1,0)), (sqrt(d),(0,1)), (0,(m1,0)), (0,(0,m2)) land in E — for the
// pair itself and for the inverse pair (lambda^-1, det*adjugate(M)).
// These finitely many congruences imply phi(E) ⊆ E and phi bijective.
WellDefined is_well_defined(const DimGroupParams& params, const QuadRat& lambda,
                            const IntMat2& M);

struct OrderAuto {
    DimGroupParams params;
    QuadRat lambda;
    IntMat2 mat;
};

// Validates via is_well_defined; throws Error when rejected.
OrderAuto make_order_auto(const DimGroupParams& params, const QuadRat& lambda, const IntMat2& M);

DimElem apply(const OrderAuto& phi, const DimElem& elem);
OrderAuto compose(const OrderAuto& f, const OrderAuto& g);  // (λf·λg, Mf·Mg)
OrderAuto inverse(const OrderAuto& f);

// All residue classes mod `modulus` (a multiple of lcm(m1, m2)) that
// matrices of well-defined automorphisms with the given scaling factor
// must inhabit: the generator-image congruences for (lambda, M) and
// (lambda^-1, M^-1), plus det = detSign (mod modulus). Sorted.
std::vector<ResidueClass> classify_residues(const DimGroupParams& params, const QuadRat& lambda,
                                            long modulus);

// One row of the impossibility certificate: a class pair whose products
// differ, with the first differing entry (row-major index).
struct ObstructionPair {
    ResidueClass c1, c2;
    std::array<long, 4> prod12, prod21;
    int mismatch;
};

struct ObstructionResult {
    bool impossible;
    long modulus;
    // When impossible: every class pair, each with its mismatch.
    std::vector<ObstructionPair> failures;
    // When possible: the first commuting pair in sorted class order. A
    // residue-level match is a necessary condition only.
    std::optional<std::pair<ResidueClass, ResidueClass>> witness;
};

ObstructionResult commutation_obstruction(const DimGroupParams& params, const QuadRat& lambda1,
                                          const QuadRat& lambda2, long modulus);

// Re-multiplies every recorded pair (or the witness) and checks the table.
bool replay_obstruction(const ObstructionResult& result);

}  // namespace dimforge
