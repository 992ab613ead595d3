#include "dimforge/pell.hpp"

#include <sstream>

namespace dimforge {

namespace {

void require_nonsquare(const mpz_class& d) {
    if (d < 2 || mpz_perfect_square_p(d.get_mpz_t()))
        throw PerfectSquareError("sqrt(" + d.get_str() + ") is rational");
}

}  // namespace

CfExpansion cf_expand(const mpz_class& d) {
    require_nonsquare(d);
    mpz_class a0;
    mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());

    // Standard (P, Q) recurrence; the period of sqrt(d) closes when the
    // state returns to its first interior value.
    CfExpansion cf;
    cf.a0 = a0;
    mpz_class P = a0, Q = d - a0 * a0;  // state after emitting a0
    mpz_class P1 = P, Q1 = Q;
    while (true) {
        mpz_class a = (a0 + P) / Q;
        cf.period.push_back(a);
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (P == P1 && Q == Q1) break;
    }
    return cf;
}

FundamentalUnit fundamental_unit(const mpz_class& d) {
    CfExpansion cf = cf_expand(d);
    // Convergents h_i/k_i over a0, period[0..L-2]; the convergent just
    // before the period closes carries the fundamental solution.
    mpz_class h_prev = 1, h = cf.a0;
    mpz_class k_prev = 0, k = 1;
    size_t steps = cf.period.size() - 1;  // indices 0..L-2
    for (size_t i = 0; i < steps; ++i) {
        mpz_class a = cf.period[i];
        mpz_class h_next = a * h + h_prev;
        mpz_class k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    int norm_sign = (cf.period.size() % 2 == 0) ? 1 : -1;
    return {h, k, norm_sign};
}

SieveResult residue_sieve(const mpz_class& d, const mpz_class& n, long m) {
    if (m < 2) throw Error("residue_sieve: modulus must be >= 2");
    mpz_class mm(m);
    mpz_class dr, nr;
    mpz_mod(dr.get_mpz_t(), d.get_mpz_t(), mm.get_mpz_t());
    mpz_mod(nr.get_mpz_t(), n.get_mpz_t(), mm.get_mpz_t());
    long dl = dr.get_si(), nl = nr.get_si();
    for (long x = 0; x < m; ++x) {
        long x2 = static_cast<long>((static_cast<unsigned long>(x) * x) % m);
        for (long y = 0; y < m; ++y) {
            long y2 = static_cast<long>((static_cast<unsigned long>(y) * y) % m);
            long v = (x2 - dl % m * y2) % m;
            v = ((v % m) + m) % m;
            if (v == nl) return SieveResult::Inconclusive;
        }
    }
    return SieveResult::Impossible;
}

namespace {

// Fundamental solution of x^2 - d y^2 = +1 (square of the unit when the
// continued fraction yields norm -1).
FundamentalUnit plus_one_unit(const mpz_class& d) {
    FundamentalUnit u = fundamental_unit(d);
    if (u.norm_sign < 0) {
        mpz_class x = u.x * u.x + d * u.y * u.y;
        mpz_class y = 2 * u.x * u.y;
        return {x, y, 1};
    }
    return u;
}

// Every solution class of x^2 - d y^2 = n has a representative with
// 0 <= y <= v1 * sqrt(|n| / (2 (u1 -+ 1))) where (u1, v1) solves
// x^2 - d y^2 = 1 (sign by the sign of n). Rounded up with one unit of slop.
mpz_class class_bound(const mpz_class& d, const mpz_class& n, const FundamentalUnit& u1) {
    mpz_class absn = abs(n);
    mpz_class denom = 2 * (n > 0 ? mpz_class(u1.x + 1) : mpz_class(u1.x - 1));
    mpz_class q = (u1.y * u1.y * absn) / denom + 1;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    return r + 1;
}

std::vector<std::pair<mpz_class, mpz_class>> search_solutions(const mpz_class& d,
                                                              const mpz_class& n,
                                                              const mpz_class& bound) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    for (mpz_class y = 0; y <= bound; ++y) {
        mpz_class t = n + d * y * y;
        if (t < 0) continue;
        if (mpz_perfect_square_p(t.get_mpz_t())) {
            mpz_class x;
            mpz_sqrt(x.get_mpz_t(), t.get_mpz_t());
            out.emplace_back(x, y);
        }
    }
    return out;  // already sorted by (y, x): y strictly increases
}

}  // namespace

NormEqVerdict solve_norm_equation(const mpz_class& d, const mpz_class& n, long sieve_cap) {
    require_nonsquare(d);
    if (n == 0) throw Error("solve_norm_equation: n must be nonzero");

    FundamentalUnit u1 = plus_one_unit(d);
    mpz_class bound = class_bound(d, n, u1);
    auto sols = search_solutions(d, n, bound);
    if (!sols.empty()) return {true, std::move(sols), std::nullopt, bound};

    // Unsolvable; prefer a small replayable sieve certificate.
    for (long m = 2; m <= sieve_cap; ++m) {
        if (residue_sieve(d, n, m) == SieveResult::Impossible) {
            Certificate cert;
            cert.kind = Certificate::Kind::ModularSieve;
            cert.modulus = m;
            return {false, {}, cert, bound};
        }
    }
    Certificate cert;
    cert.kind = Certificate::Kind::ExhaustedBound;
    cert.bound = bound;
    cert.unit_x = u1.x;
    cert.unit_y = u1.y;
    return {false, {}, cert, bound};
}

bool replay_certificate(const mpz_class& d, const mpz_class& n, const Certificate& cert) {
    if (cert.kind == Certificate::Kind::ModularSieve) {
        return residue_sieve(d, n, cert.modulus) == SieveResult::Impossible;
    }
    // Exhausted bound: the recorded unit must solve x^2 - d y^2 = 1, the
    // recorded bound must dominate the class bound it justifies, and the
    // re-run search must come up empty.
    if (cert.unit_x * cert.unit_x - d * cert.unit_y * cert.unit_y != 1) return false;
    FundamentalUnit u{cert.unit_x, cert.unit_y, 1};
    if (cert.bound < class_bound(d, n, u)) return false;
    return search_solutions(d, n, cert.bound).empty();
}

std::string Certificate::str() const {
    std::ostringstream os;
    if (kind == Kind::ModularSieve) {
        os << "certificate kind=modular-sieve modulus=" << modulus;
    } else {
        os << "certificate kind=exhausted-bound bound=" << bound << " unit=(" << unit_x << ","
           << unit_y << ")";
    }
    return os.str();
}

}  // namespace dimforge
