#include "dimforge/sunits.hpp"

#include <algorithm>
#include <tuple>

namespace dimforge {

std::string to_string(SplitKind k) {
    switch (k) {
        case SplitKind::Inert: return "inert";
        case SplitKind::Split: return "split";
        case SplitKind::Ramified: return "ramified";
    }
    return "?";
}

namespace {

// pi and conjugate(pi) are associates in Z[sqrt(d)] exactly when
// pi/conjugate(pi) = pi^2 / norm(pi) has integral coordinates; the
// condition is symmetric in pi and its conjugate.
bool factors_are_associates(const QuadRat& pi) {
    const QuadRat sq = pi * pi;
    const mpz_class n = pi.norm_numerator();  // +-p, pi has no denominator
    return sq.j() % n == 0 && sq.k() % n == 0;
}

// Smallest positive associate of v: scan sigma * v * eps^t over a
// bounded exponent window, keep the positive ones, and take the minimum
// by (height, j, k). The height is strictly increasing in |t| once the
// two coordinates stop trading places, so the window is generous.
QuadRat min_height_positive_associate(const QuadRat& v, const QuadRat& eps) {
    const QuadRat eps_inv = eps.inverse();
    QuadRat w = v;
    for (int t = 0; t < 32; ++t) w = w * eps_inv;

    std::optional<QuadRat> best;
    auto offer = [&](const QuadRat& c) {
        if (c.sign() != Sign::Positive) return;
        if (!best) {
            best = c;
            return;
        }
        auto key = [](const QuadRat& q) { return std::tuple(q.height(), q.j(), q.k()); };
        if (key(c) < key(*best)) best = c;
    };
    for (int t = -32; t <= 32; ++t) {
        offer(w);
        offer(-w);
        w = w * eps;
    }
    return *best;
}

}  // namespace

SplittingType splitting_type(const RingParams& ring, long sieve_cap) {
    const mpz_class d(ring.d);
    const NormEqVerdict plus = solve_norm_equation(d, mpz_class(ring.p), sieve_cap);
    const NormEqVerdict minus = solve_norm_equation(d, mpz_class(-ring.p), sieve_cap);

    if (!plus.solvable && !minus.solvable) {
        SplittingType st{SplitKind::Inert, std::nullopt, std::nullopt};
        st.inert_certificates = std::make_pair(*plus.certificate, *minus.certificate);
        return st;
    }

    // Candidate witnesses: the least solution of each solvable sign.
    // Solutions are sorted by (y, x) with x determined by y, so the first
    // entry of each list already has minimal height within its list.
    std::optional<QuadRat> witness;
    auto offer = [&](const NormEqVerdict& v) {
        if (!v.solvable) return;
        const auto& [x, y] = v.solutions.front();
        QuadRat cand(ring, x, y, 0);
        if (!witness) {
            witness = cand;
            return;
        }
        auto key = [](const QuadRat& q) { return std::tuple(q.height(), q.j(), q.k()); };
        if (key(cand) < key(*witness)) witness = cand;
    };
    offer(plus);
    offer(minus);

    SplitKind kind = factors_are_associates(*witness) ? SplitKind::Ramified : SplitKind::Split;
    return SplittingType{kind, witness, std::nullopt};
}

PositiveUnitGroup positive_unit_generators(const RingParams& ring, long sieve_cap) {
    const FundamentalUnit fu = fundamental_unit(mpz_class(ring.d));
    const QuadRat eps(ring, fu.x, fu.y, 0);
    SplittingType st = splitting_type(ring, sieve_cap);

    PositiveUnitGroup g{ring, {}, 0, st, eps, std::nullopt, std::nullopt};
    switch (st.kind) {
        case SplitKind::Inert:
            g.generators = {QuadRat::integer(ring, ring.p), eps};
            break;
        case SplitKind::Ramified:
            g.pi = *st.witness;
            g.generators = {eps, *g.pi};
            break;
        case SplitKind::Split:
            g.pi = *st.witness;
            g.pi_bar = min_height_positive_associate(g.pi->conjugate(), eps);
            g.generators = {*g.pi, *g.pi_bar, eps};
            break;
    }
    g.rank = static_cast<int>(g.generators.size());
    return g;
}

namespace {

// Largest t with p^t dividing |n| exactly; requires |n| = p^t (unit norm),
// returns -1 otherwise.
long p_power_valuation(mpz_class n, std::int64_t p) {
    n = abs(n);
    if (n == 0) return -1;
    long t = 0;
    while (n % p == 0) {
        n /= p;
        ++t;
    }
    return n == 1 ? t : -1;
}

// v / w within Z[sqrt(d)]: succeeds iff the quotient has no p-power
// denominator after canonicalization.
std::optional<QuadRat> exact_divide(const QuadRat& v, const QuadRat& w_inv) {
    QuadRat q = v * w_inv;
    if (q.e() != 0) return std::nullopt;
    return q;
}

}  // namespace

bool contains(const PositiveUnitGroup& group, const QuadRat& u) {
    if (!u.is_unit() || u.sign() != Sign::Positive) return false;
    const RingParams& ring = group.ring;

    // Clear the denominator: p itself lies in the group in every splitting
    // case, so membership of u and of p^e * u coincide.
    QuadRat v(ring, u.j(), u.k(), 0);
    const long t = p_power_valuation(v.norm_numerator(), ring.p);
    if (t < 0) return false;

    switch (group.splitting.kind) {
        case SplitKind::Inert: {
            // An inert prime contributes norm p^2 per factor of p.
            if (t % 2 != 0) return false;
            const mpz_class ph = pow_p(ring.p, static_cast<unsigned long>(t / 2));
            if (v.j() % ph != 0 || v.k() % ph != 0) return false;
            v = QuadRat(ring, v.j() / ph, v.k() / ph, 0);
            break;
        }
        case SplitKind::Ramified: {
            const QuadRat pi_inv = group.pi->inverse();
            for (long i = 0; i < t; ++i) {
                auto q = exact_divide(v, pi_inv);
                if (!q) return false;
                v = *q;
            }
            break;
        }
        case SplitKind::Split: {
            const QuadRat pi_inv = group.pi->inverse();
            const QuadRat pibar_inv = group.pi_bar->inverse();
            while (true) {
                auto q = exact_divide(v, pi_inv);
                if (!q) break;
                v = *q;
            }
            while (true) {
                auto q = exact_divide(v, pibar_inv);
                if (!q) break;
                v = *q;
            }
            mpz_class residual = abs(v.norm_numerator());
            if (residual != 1) return false;
            break;
        }
    }

    // v is now a positive element of Z[sqrt(d)] with norm +-1, hence a
    // power of the fundamental unit if and only if it reduces to 1.
    const QuadRat one = QuadRat::one(ring);
    const QuadRat eps_inv = group.eps.inverse();
    while (v > one) v = v * eps_inv;
    while (v < one) v = v * group.eps;
    return v == one;
}

}  // namespace dimforge
