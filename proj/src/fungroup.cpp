#include "dimforge/fungroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace dimforge {

SupernaturalNumber SupernaturalNumber::parse(std::string_view text) {
    SupernaturalNumber n;
    std::string buf;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) buf.push_back(ch);
    if (buf.empty()) return n;

    size_t pos = 0;
    while (pos <= buf.size()) {
        size_t comma = buf.find(',', pos);
        std::string item = buf.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t colon = item.find(':');
        if (item.empty() || colon == std::string::npos)
            throw ParseError("supernatural number entries look like prime:exp, got '" + item +
                             "'");
        std::int64_t prime = 0;
        try {
            prime = std::stoll(item.substr(0, colon));
        } catch (const std::exception&) {
            throw ParseError("bad prime in '" + item + "'");
        }
        mpz_class pz(static_cast<long>(prime));
        if (prime < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
            throw ParseError(std::to_string(prime) + " is not prime");
        std::string exp = item.substr(colon + 1);
        std::optional<std::int64_t> e;
        if (exp == "inf" || exp == "∞") {
            e = std::nullopt;
        } else {
            try {
                e = std::stoll(exp);
            } catch (const std::exception&) {
                throw ParseError("bad exponent in '" + item + "'");
            }
            if (*e < 1) throw ParseError("exponent must be >= 1 in '" + item + "'");
        }
        if (n.factors.count(prime)) throw ParseError("duplicate prime " + std::to_string(prime));
        n.factors[prime] = e;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return n;
}

std::string SupernaturalNumber::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [prime, e] : factors) {
        if (!first) os << ",";
        first = false;
        os << prime << ":" << (e ? std::to_string(*e) : "inf");
    }
    return os.str();
}

std::vector<std::int64_t> uhf_fundamental_group(const SupernaturalNumber& n) {
    std::vector<std::int64_t> primes;
    for (const auto& [prime, e] : n.factors)
        if (!e) primes.push_back(prime);
    return primes;  // map iteration is already sorted
}

namespace {

// Deterministic witness order: max absolute entry first, then (a,b,c,d).
std::tuple<long, long, long, long, long> witness_key(const IntMat2& w) {
    long a = w.a.get_si(), b = w.b.get_si(), c = w.c.get_si(), d = w.d.get_si();
    return {std::max({std::labs(a), std::labs(b), std::labs(c), std::labs(d)}), a, b, c, d};
}

// Smallest integer lift of `cls` with entries in [-bound, bound] and exact
// determinant det_sign, minimal by witness_key.
std::optional<IntMat2> minimal_lift(const ResidueClass& cls, long bound) {
    const long M0 = cls.modulus;
    std::array<std::vector<long>, 4> choices;
    for (int t = 0; t < 4; ++t) {
        long lo = cls.m[t];  // in [0, M0)
        while (lo - M0 >= -bound) lo -= M0;
        for (long v = lo; v <= bound; v += M0) choices[t].push_back(v);
    }
    std::optional<IntMat2> best;
    for (long a : choices[0])
        for (long b : choices[1])
            for (long c : choices[2])
                for (long d : choices[3]) {
                    if (a * d - b * c != cls.det_sign) continue;
                    IntMat2 cand{a, b, c, d};
                    if (!best || witness_key(cand) < witness_key(*best)) best = cand;
                }
    return best;
}

}  // namespace

FundamentalGroupReport fundamental_group(const DimGroupParams& params, long search_bound,
                                         long sieve_cap) {
    validate_params(params);
    PositiveUnitGroup upper = positive_unit_generators(params.ring, sieve_cap);
    const long modulus = std::lcm(params.m1, params.m2);

    FundamentalGroupReport report{upper,        {}, {}, Equality::Established,
                                  search_bound, modulus};
    for (const QuadRat& lam : upper.generators) {
        std::optional<IntMat2> best;
        for (const ResidueClass& cls : classify_residues(params, lam, modulus)) {
            std::optional<IntMat2> lift = minimal_lift(cls, search_bound);
            if (!lift) continue;
            if (!is_well_defined(params, lam, *lift).ok) continue;
            if (!best || witness_key(*lift) < witness_key(*best)) best = *lift;
        }
        if (best) {
            report.witnessed.push_back(WitnessedGenerator{lam, make_order_auto(params, lam, *best)});
        } else {
            report.unwitnessed.push_back(lam);
        }
    }
    report.equality = report.unwitnessed.empty() ? Equality::Established : Equality::Open;
    return report;
}

WitnessCheck verify_witness(const DimGroupParams& params, const QuadRat& lambda,
                            const IntMat2& M) {
    WellDefined w = is_well_defined(params, lambda, M);
    if (!w.ok) return {false, w.reason, std::nullopt};
    OrderAuto phi{params, lambda, M};
    DimElem image = apply(phi, DimElem::unit(params));
    if (image.trace_state() != lambda)
        return {false,
                "trace of the order-unit image is " + image.trace_state().pretty() +
                    ", expected " + lambda.pretty(),
                image};
    return {true, "", image};
}

}  // namespace dimforge
