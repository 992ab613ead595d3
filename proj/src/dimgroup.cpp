#include "dimforge/dimgroup.hpp"

#include <numeric>
#include <sstream>
#include <vector>

namespace dimforge {

std::string DimGroupParams::str() const {
    std::ostringstream os;
    os << "E[" << ring.d << "," << ring.p << "," << s << "," << m1 << "," << m2 << "]";
    return os.str();
}

void validate_params(const DimGroupParams& params) {
    if (params.s < 1 || params.m1 < 1 || params.m2 < 1)
        throw BadModulusError("s, m1, m2 must be positive in " + params.str());
    for (std::int64_t m : {params.m1, params.m2}) {
        if (std::gcd(params.ring.p, m) != 1)
            throw BadModulusError("gcd(p, " + std::to_string(m) + ") != 1 in " + params.str());
        mpz_class r;
        mpz_class base(static_cast<long>(params.ring.p)), ex(static_cast<long>(params.s)),
            mod(static_cast<long>(m));
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), ex.get_mpz_t(), mod.get_mpz_t());
        mpz_class one_mod = mpz_class(1) % mod;  // 0 when m = 1
        if (r != one_mod)
            throw BadModulusError("p^s = " + std::to_string(params.ring.p) + "^" +
                                  std::to_string(params.s) + " ≢ 1 (mod " + std::to_string(m) +
                                  "): the congruence coupling would depend on the representative");
    }
}

DimGroupParams make_params(std::int64_t d, std::int64_t p, std::int64_t s, std::int64_t m1,
                           std::int64_t m2) {
    DimGroupParams params{RingParams::make(d, p), s, m1, m2};
    validate_params(params);
    return params;
}

DimElem make_elem(const DimGroupParams& params, long i, mpz_class j, mpz_class k, mpz_class x,
                  mpz_class y) {
    if (i < 0) {
        mpz_class f = pow_p(params.ring.p, static_cast<unsigned long>(-i) *
                                               static_cast<unsigned long>(params.s));
        j *= f;
        k *= f;
        i = 0;
    }
    // p^s = 1 (mod m1) and (mod m2), so the checks are representative-free.
    if ((x - j) % params.m1 != 0)
        throw CongruenceViolationError("x≢j mod " + std::to_string(params.m1));
    if ((y - k) % params.m2 != 0)
        throw CongruenceViolationError("y≢k mod " + std::to_string(params.m2));

    unsigned long ii = static_cast<unsigned long>(i);
    const mpz_class step = pow_p(params.ring.p, static_cast<unsigned long>(params.s));
    while (ii > 0 && mpz_divisible_p(j.get_mpz_t(), step.get_mpz_t()) &&
           mpz_divisible_p(k.get_mpz_t(), step.get_mpz_t())) {
        j /= step;
        k /= step;
        --ii;
    }
    return DimElem(params, ii, std::move(j), std::move(k), std::move(x), std::move(y));
}

DimElem parse_elem(const DimGroupParams& params, std::string_view text) {
    std::vector<mpz_class> vals;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw ParseError("empty field in element tuple");
        vals.emplace_back(cur, 10);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    flush();
    if (vals.size() != 5) throw ParseError("element tuple needs 5 fields i,j,k,x,y");
    if (!vals[0].fits_slong_p()) throw ParseError("element index i out of range");
    return make_elem(params, vals[0].get_si(), vals[1], vals[2], vals[3], vals[4]);
}

bool DimElem::is_positive() const {
    if (is_zero()) return true;
    return QuadRat(params_.ring, j_, k_, 0).sign() == Sign::Positive;
}

QuadRat DimElem::trace_state() const {
    return QuadRat(params_.ring, j_, k_, static_cast<long>(params_.s) * static_cast<long>(i_));
}

DimElem DimElem::operator-() const { return DimElem(params_, i_, -j_, -k_, -x_, -y_); }

DimElem operator+(const DimElem& a, const DimElem& b) {
    if (!(a.params_ == b.params_)) throw Error("add: mismatched group parameters");
    unsigned long i = std::max(a.i_, b.i_);
    unsigned long s = static_cast<unsigned long>(a.params_.s);
    mpz_class fa = pow_p(a.params_.ring.p, (i - a.i_) * s);
    mpz_class fb = pow_p(a.params_.ring.p, (i - b.i_) * s);
    // Route through make_elem so closure (the congruences) is re-verified.
    return make_elem(a.params_, static_cast<long>(i), a.j_ * fa + b.j_ * fb, a.k_ * fa + b.k_ * fb,
                     a.x_ + b.x_, a.y_ + b.y_);
}

DimElem operator-(const DimElem& a, const DimElem& b) { return a + (-b); }

std::string DimElem::str() const {
    std::ostringstream os;
    os << params_.str() << ": ((" << j_ << (sgn(k_) < 0 ? "-" : "+") << abs(k_) << "*sqrt("
       << params_.ring.d << "))/" << params_.ring.p << "^(" << params_.s << "*" << i_ << "), ["
       << x_ << ", " << y_ << "])";
    return os.str();
}

DimElem DimElem::zero(const DimGroupParams& params) { return make_elem(params, 0, 0, 0, 0, 0); }

DimElem DimElem::unit(const DimGroupParams& params) { return make_elem(params, 0, 1, 0, 1, 0); }

}  // namespace dimforge
