#include "dimforge/orderauto.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace dimforge {

std::string IntMat2::str() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

IntMat2 IntMat2::parse(std::string_view text) {
    std::string buf;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '[' || ch == ']') continue;
        buf.push_back(ch);
    }
    std::vector<mpz_class> vals;
    std::string cur;
    for (char ch : buf) {
        if (ch == ',') {
            if (cur.empty()) throw ParseError("empty matrix entry in " + std::string(text));
            vals.emplace_back(cur, 10);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (cur.empty()) throw ParseError("empty matrix entry in " + std::string(text));
    vals.emplace_back(cur, 10);
    if (vals.size() != 4) throw ParseError("matrix needs 4 entries a,b,c,d");
    return {vals[0], vals[1], vals[2], vals[3]};
}

std::string ResidueClass::str() const {
    std::ostringstream os;
    os << "[[" << m[0] << "," << m[1] << "],[" << m[2] << "," << m[3] << "]] (det="
       << (det_sign > 0 ? "+1" : "-1") << ", mod " << modulus << ")";
    return os.str();
}

namespace {

// The residues mod (m1, m2) that the canonical expansion of a ring element
// occupies once lifted to a denominator p^(s*i): scaling by p^(s*i - e)
// multiplies by 1 modulo both moduli, so only e mod s matters.
struct GeneratorResidues {
    long r1;   // first coordinate mod m1  (constrains column entries paired with j)
    long r2;   // second coordinate mod m2
};

GeneratorResidues residues_of(const DimGroupParams& P, const QuadRat& q) {
    unsigned long e = q.e();
    unsigned long s = static_cast<unsigned long>(P.s);
    unsigned long i = (e + s - 1) / s;  // ceil(e/s)
    mpz_class scale = pow_p(P.ring.p, i * s - e);
    return {mod_reduce(q.j() * scale, P.m1), mod_reduce(q.k() * scale, P.m2)};
}

bool congruent(const mpz_class& u, long v, std::int64_t m) { return (u - v) % m == 0; }

}  // namespace

WellDefined is_well_defined(const DimGroupParams& params, const QuadRat& lambda,
                            const IntMat2& M) {
    const mpz_class det = M.det();
    if (det != 1 && det != -1) return {false, "det=" + det.get_str()};
    if (!lambda.is_unit()) return {false, "lambda=" + lambda.pretty() + " is not a unit"};
    if (lambda.sign() != Sign::Positive)
        return {false, "lambda=" + lambda.pretty() + " is not positive"};

    const QuadRat sqrt_d = QuadRat::sqrt_d(params.ring);
    const long sign = det == 1 ? 1 : -1;
    const IntMat2 adj = M.adjugate();
    const IntMat2 Minv{sign * adj.a, sign * adj.b, sign * adj.c, sign * adj.d};

    struct Side {
        const char* tag;
        QuadRat lam;
        const IntMat2& mat;
    };
    const Side sides[2] = {{"", lambda, M}, {" under the inverse pair", lambda.inverse(), Minv}};

    for (const Side& side : sides) {
        const GeneratorResidues one = residues_of(params, side.lam);
        const GeneratorResidues root = residues_of(params, side.lam * sqrt_d);
        const IntMat2& W = side.mat;
        auto fail = [&](const std::string& what) -> WellDefined {
            return {false, "image of " + what + side.tag + " is not in E"};
        };
        // (1,(1,0)) -> (lambda, (a, c))
        if (!congruent(W.a, one.r1, params.m1)) return fail("(1,(1,0))");
        if (!congruent(W.c, one.r2, params.m2)) return fail("(1,(1,0))");
        // (sqrt(d),(0,1)) -> (lambda*sqrt(d), (b, d))
        if (!congruent(W.b, root.r1, params.m1)) return fail("(sqrt(d),(0,1))");
        if (!congruent(W.d, root.r2, params.m2)) return fail("(sqrt(d),(0,1))");
        // (0,(m1,0)) -> (0, (a*m1, c*m1)): only the second congruence binds
        if (W.c * params.m1 % params.m2 != 0) return fail("(0,(m1,0))");
        // (0,(0,m2)) -> (0, (b*m2, d*m2)): only the first congruence binds
        if (W.b * params.m2 % params.m1 != 0) return fail("(0,(0,m2))");
    }
    return {true, ""};
}

OrderAuto make_order_auto(const DimGroupParams& params, const QuadRat& lambda, const IntMat2& M) {
    WellDefined w = is_well_defined(params, lambda, M);
    if (!w.ok) throw Error("not an order automorphism: " + w.reason);
    return {params, lambda, M};
}

DimElem apply(const OrderAuto& phi, const DimElem& elem) {
    const DimGroupParams& P = phi.params;
    const QuadRat traced = phi.lambda * elem.trace_state();
    unsigned long e = traced.e();
    unsigned long s = static_cast<unsigned long>(P.s);
    unsigned long i = (e + s - 1) / s;
    mpz_class scale = pow_p(P.ring.p, i * s - e);
    return make_elem(P, static_cast<long>(i), traced.j() * scale, traced.k() * scale,
                     phi.mat.a * elem.x() + phi.mat.b * elem.y(),
                     phi.mat.c * elem.x() + phi.mat.d * elem.y());
}

OrderAuto compose(const OrderAuto& f, const OrderAuto& g) {
    if (!(f.params == g.params)) throw Error("compose: mismatched group parameters");
    return make_order_auto(f.params, f.lambda * g.lambda, f.mat * g.mat);
}

OrderAuto inverse(const OrderAuto& f) {
    const long sign = f.mat.det() == 1 ? 1 : -1;
    const IntMat2 adj = f.mat.adjugate();
    return make_order_auto(f.params, f.lambda.inverse(),
                           {sign * adj.a, sign * adj.b, sign * adj.c, sign * adj.d});
}

std::vector<ResidueClass> classify_residues(const DimGroupParams& params, const QuadRat& lambda,
                                            long modulus) {
    if (!lambda.is_unit() || lambda.sign() != Sign::Positive)
        throw NotAUnitError("classify_residues: lambda must be a positive unit");
    const long lcm = std::lcm(params.m1, params.m2);
    if (modulus < 1 || modulus % lcm != 0)
        throw Error("classify_residues: modulus must be a positive multiple of lcm(m1,m2)=" +
                    std::to_string(lcm));

    const QuadRat sqrt_d = QuadRat::sqrt_d(params.ring);
    const QuadRat mu = lambda.inverse();
    const GeneratorResidues lam1 = residues_of(params, lambda);
    const GeneratorResidues lamr = residues_of(params, lambda * sqrt_d);
    const GeneratorResidues mu1 = residues_of(params, mu);
    const GeneratorResidues mur = residues_of(params, mu * sqrt_d);

    const long m1 = params.m1, m2 = params.m2, M0 = modulus;
    auto cong = [](long u, long v, long m) { return ((u - v) % m + m) % m == 0; };

    std::vector<ResidueClass> out;
    for (int sigma : {1, -1}) {
        for (long a = 0; a < M0; ++a) {
            // a from phi(1,(1,0)); sigma*a is Minv's d-entry, from the
            // inverse image of (sqrt(d),(0,1)).
            if (!cong(a, lam1.r1, m1)) continue;
            if (!cong(sigma * a, mur.r2, m2)) continue;
            for (long b = 0; b < M0; ++b) {
                if (!cong(b, lamr.r1, m1)) continue;
                if (!cong(-sigma * b, mur.r1, m1)) continue;  // Minv's b-entry
                if (b * m2 % m1 != 0) continue;
                for (long c = 0; c < M0; ++c) {
                    if (!cong(c, lam1.r2, m2)) continue;
                    if (!cong(-sigma * c, mu1.r2, m2)) continue;  // Minv's c-entry
                    if (c * m1 % m2 != 0) continue;
                    for (long d = 0; d < M0; ++d) {
                        if (!cong(d, lamr.r2, m2)) continue;
                        if (!cong(sigma * d, mu1.r1, m1)) continue;  // Minv's a-entry
                        if (!cong(a * d - b * c, sigma, M0)) continue;
                        out.push_back(ResidueClass{M0, {a, b, c, d}, sigma});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::array<long, 4> mat_mul_mod(const std::array<long, 4>& l, const std::array<long, 4>& r,
                                long m) {
    auto red = [m](long v) { return ((v % m) + m) % m; };
    return {red(l[0] * r[0] + l[1] * r[2]), red(l[0] * r[1] + l[1] * r[3]),
            red(l[2] * r[0] + l[3] * r[2]), red(l[2] * r[1] + l[3] * r[3])};
}

int first_mismatch(const std::array<long, 4>& u, const std::array<long, 4>& v) {
    for (int t = 0; t < 4; ++t)
        if (u[t] != v[t]) return t;
    return -1;
}

}  // namespace

ObstructionResult commutation_obstruction(const DimGroupParams& params, const QuadRat& lambda1,
                                          const QuadRat& lambda2, long modulus) {
    const std::vector<ResidueClass> cls1 = classify_residues(params, lambda1, modulus);
    const std::vector<ResidueClass> cls2 = classify_residues(params, lambda2, modulus);

    ObstructionResult res{true, modulus, {}, std::nullopt};
    for (const ResidueClass& c1 : cls1) {
        for (const ResidueClass& c2 : cls2) {
            std::array<long, 4> p12 = mat_mul_mod(c1.m, c2.m, modulus);
            std::array<long, 4> p21 = mat_mul_mod(c2.m, c1.m, modulus);
            int miss = first_mismatch(p12, p21);
            if (miss < 0) {
                if (!res.witness) res.witness = std::make_pair(c1, c2);
            } else {
                res.failures.push_back(ObstructionPair{c1, c2, p12, p21, miss});
            }
        }
    }
    // No admissible class at all for one factor also means no commuting
    // pair exists, vacuously; report that as impossible with an empty table.
    res.impossible = !res.witness.has_value();
    if (res.impossible == false) res.failures.clear();
    return res;
}

bool replay_obstruction(const ObstructionResult& result) {
    const long m = result.modulus;
    if (result.impossible) {
        for (const ObstructionPair& f : result.failures) {
            std::array<long, 4> p12 = mat_mul_mod(f.c1.m, f.c2.m, m);
            std::array<long, 4> p21 = mat_mul_mod(f.c2.m, f.c1.m, m);
            if (p12 != f.prod12 || p21 != f.prod21) return false;
            if (f.mismatch < 0 || f.mismatch > 3) return false;
            if (p12[f.mismatch] == p21[f.mismatch]) return false;
            if (first_mismatch(p12, p21) != f.mismatch) return false;
        }
        return true;
    }
    if (!result.witness) return false;
    std::array<long, 4> p12 = mat_mul_mod(result.witness->first.m, result.witness->second.m, m);
    std::array<long, 4> p21 = mat_mul_mod(result.witness->second.m, result.witness->first.m, m);
    return p12 == p21;
}

}  // namespace dimforge
