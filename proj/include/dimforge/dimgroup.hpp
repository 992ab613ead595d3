#pragma once

#include <string>

#include "dimforge/quadrat.hpp"

namespace dimforge {

// Parameters of the ordered group
//   E = { ((j + k*sqrt(d))/p^(s*i), (x, y)) : x = j (mod m1), y = k (mod m2) }
// with positive cone { r > 0 } plus the zero element.
struct DimGroupParams {
    RingParams ring;
    std::int64_t s;   // denominator step: denominators are p^(s*i)
    std::int64_t m1;  // couples x to j
    std::int64_t m2;  // couples y to k

    bool operator==(const DimGroupParams&) const = default;
    std::string str() const;  // E[d,p,s,m1,m2]
};

// The congruences are representation-independent iff p^s = 1 (mod m1) and
// (mod m2): rescaling (j,k,i) -> (p^s j, p^s k, i+1) must not change
// residues. Throws BadModulusError otherwise (also for nonpositive s, m1,
// m2 or p sharing a factor with a modulus).
void validate_params(const DimGroupParams& params);

// RingParams::make + validate_params in one step.
DimGroupParams make_params(std::int64_t d, std::int64_t p, std::int64_t s, std::int64_t m1,
                           std::int64_t m2);

// Element ((j + k*sqrt(d))/p^(s*i), (x, y)), canonical: i is minimal, so
// if i > 0 then p^s does not divide both j and k.
class DimElem {
  public:
    const DimGroupParams& params() const { return params_; }
    unsigned long i() const { return i_; }
    const mpz_class& j() const { return j_; }
    const mpz_class& k() const { return k_; }
    const mpz_class& x() const { return x_; }
    const mpz_class& y() const { return y_; }

    bool is_zero() const { return j_ == 0 && k_ == 0 && x_ == 0 && y_ == 0; }
    // True iff the real coordinate is strictly positive, or the element is
    // exactly zero. Elements with zero real coordinate but nonzero vector
    // (infinitesimals) are neither positive nor negative.
    bool is_positive() const;

    // The real coordinate (j + k*sqrt(d))/p^(s*i).
    QuadRat trace_state() const;

    DimElem operator-() const;
    friend DimElem operator+(const DimElem& a, const DimElem& b);
    friend DimElem operator-(const DimElem& a, const DimElem& b);

    bool operator==(const DimElem& o) const {
        return params_ == o.params_ && i_ == o.i_ && j_ == o.j_ && k_ == o.k_ && x_ == o.x_ &&
               y_ == o.y_;
    }
    bool operator!=(const DimElem& o) const { return !(*this == o); }

    // E[3,5,6,9,3]: ((1+0*sqrt(3))/5^(6*0), [1, 0])
    std::string str() const;

    static DimElem zero(const DimGroupParams& params);
    static DimElem unit(const DimGroupParams& params);  // (1, (1, 0))

  private:
    friend DimElem make_elem(const DimGroupParams&, long, mpz_class, mpz_class, mpz_class,
                             mpz_class);
    DimElem(DimGroupParams params, unsigned long i, mpz_class j, mpz_class k, mpz_class x,
            mpz_class y)
        : params_(params),
          i_(i),
          j_(std::move(j)),
          k_(std::move(k)),
          x_(std::move(x)),
          y_(std::move(y)) {}

    DimGroupParams params_;
    unsigned long i_;
    mpz_class j_, k_, x_, y_;
};

// Canonicalizing constructor. Negative i is folded into the numerator.
// Throws CongruenceViolationError when x != j (mod m1) or y != k (mod m2).
DimElem make_elem(const DimGroupParams& params, long i, mpz_class j, mpz_class k, mpz_class x,
                  mpz_class y);

// Parses "i,j,k,x,y".
DimElem parse_elem(const DimGroupParams& params, std::string_view text);

}  // namespace dimforge
