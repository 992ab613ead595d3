// Command-line driver: every subcommand prints a verdict (text mode) or
// line-delimited JSON records (structured mode). Exit codes: 0 success,
// 1 malformed arguments, 2 invalid group parameters, 3 failed certificate
// replay.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimforge/config.hpp"
#include "dimforge/dimgroup.hpp"
#include "dimforge/fungroup.hpp"
#include "dimforge/orderauto.hpp"
#include "dimforge/pell.hpp"
#include "dimforge/quadrat.hpp"
#include "dimforge/sunits.hpp"

using json = nlohmann::ordered_json;
using namespace dimforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadParams = 2;
constexpr int kExitReplayFailure = 3;

struct Out {
    OutputMode mode;
    void text(const std::string& line) const {
        if (mode == OutputMode::Text) std::cout << line << "\n";
    }
    void record(const json& j) const {
        if (mode == OutputMode::Structured) std::cout << j.dump() << "\n";
    }
};

std::string join_pretty(const std::vector<QuadRat>& xs) {
    std::string s = "{";
    for (size_t t = 0; t < xs.size(); ++t) {
        if (t) s += ", ";
        s += xs[t].pretty();
    }
    return s + "}";
}

json cert_json(const Certificate& cert) {
    json j;
    if (cert.kind == Certificate::Kind::ModularSieve) {
        j["kind"] = "modular-sieve";
        j["modulus"] = cert.modulus;
    } else {
        j["kind"] = "exhausted-bound";
        j["bound"] = cert.bound.get_str();
        j["unit"] = {cert.unit_x.get_str(), cert.unit_y.get_str()};
    }
    return j;
}

json class_json(const ResidueClass& cls) {
    return json{{"entries", cls.m}, {"detSign", cls.det_sign}, {"modulus", cls.modulus}};
}

std::string equation_str(std::int64_t d, std::int64_t n) {
    std::ostringstream os;
    os << "x^2 - " << d << "*y^2 = " << n;
    return os.str();
}

std::string mat4_str(const std::array<long, 4>& m) {
    std::ostringstream os;
    os << "[[" << m[0] << "," << m[1] << "],[" << m[2] << "," << m[3] << "]]";
    return os.str();
}

// ---------------------------------------------------------------- pell --

int run_pell(const Out& out, std::int64_t d, std::int64_t n, long sieve_cap, bool replay) {
    NormEqVerdict v = solve_norm_equation(d, n, sieve_cap);
    json rec{{"command", "pell"}, {"equation", equation_str(d, n)}};
    if (v.solvable) {
        out.text(equation_str(d, n) + ": solvable");
        rec["verdict"] = "solvable";
        json sols = json::array();
        for (const auto& [x, y] : v.solutions) {
            out.text("solution x=" + x.get_str() + " y=" + y.get_str());
            sols.push_back({x.get_str(), y.get_str()});
        }
        out.text("class representatives searched for 0 <= y <= " + v.search_bound.get_str());
        rec["solutions"] = sols;
        rec["searchBound"] = v.search_bound.get_str();
        out.record(rec);
        return kExitOk;
    }
    out.text(equation_str(d, n) + ": unsolvable");
    out.text(v.certificate->str());
    rec["verdict"] = "unsolvable";
    rec["certificate"] = cert_json(*v.certificate);
    if (replay) {
        bool ok = replay_certificate(d, n, *v.certificate);
        out.text(std::string("certificate replay: ") + (ok ? "ok" : "FAILED"));
        rec["replay"] = ok ? "ok" : "failed";
        out.record(rec);
        return ok ? kExitOk : kExitReplayFailure;
    }
    out.record(rec);
    return kExitOk;
}

// ---------------------------------------------------------------- unit --

int run_unit(const Out& out, std::int64_t d) {
    FundamentalUnit u = fundamental_unit(mpz_class(static_cast<long>(d)));
    std::ostringstream pretty;
    pretty << u.x << "+" << u.y << "*sqrt(" << d << ")";
    out.text("fundamental unit of Z[sqrt(" + std::to_string(d) + ")]: " + pretty.str() +
             " (norm " + (u.norm_sign > 0 ? "+1" : "-1") + ")");
    out.record(json{{"command", "unit"},
                    {"verdict", "ok"},
                    {"d", d},
                    {"x", u.x.get_str()},
                    {"y", u.y.get_str()},
                    {"normSign", u.norm_sign}});
    return kExitOk;
}

// -------------------------------------------------------------- implus --

int run_implus(const Out& out, std::int64_t d, std::int64_t p, long sieve_cap, bool replay) {
    RingParams ring = RingParams::make(d, p);
    PositiveUnitGroup g = positive_unit_generators(ring, sieve_cap);
    out.text("splitting of " + std::to_string(p) + " in Z[sqrt(" + std::to_string(d) +
             ")]: " + to_string(g.splitting.kind));
    json rec{{"command", "implus"},
             {"verdict", "ok"},
             {"splitting", to_string(g.splitting.kind)}};
    bool replay_ok = true;
    if (g.splitting.kind == SplitKind::Inert) {
        const auto& [cplus, cminus] = *g.splitting.inert_certificates;
        out.text("certificate (n=+" + std::to_string(p) + "): " + cplus.str());
        out.text("certificate (n=-" + std::to_string(p) + "): " + cminus.str());
        rec["certificate"] = {{"plus", cert_json(cplus)}, {"minus", cert_json(cminus)}};
        if (replay) {
            replay_ok = replay_certificate(d, p, cplus) && replay_certificate(d, -p, cminus);
            out.text(std::string("certificate replay: ") + (replay_ok ? "ok" : "FAILED"));
            rec["replay"] = replay_ok ? "ok" : "failed";
        }
    } else {
        out.text("norm +-" + std::to_string(p) + " witness: " + g.splitting.witness->pretty());
        rec["witness"] = g.splitting.witness->str();
    }
    out.text("positive unit group generators: " + join_pretty(g.generators) + ", rank " +
             std::to_string(g.rank));
    json gens = json::array();
    for (const QuadRat& q : g.generators) gens.push_back(q.str());
    rec["generators"] = gens;
    rec["rank"] = g.rank;
    out.record(rec);
    return replay_ok ? kExitOk : kExitReplayFailure;
}

// ------------------------------------------------------------- dimcheck --

int run_dimcheck(const Out& out, const DimGroupParams& params, const std::string& elem) {
    json rec{{"command", "dimcheck"}, {"element", elem}};
    try {
        DimElem e = parse_elem(params, elem);
        out.text("MEMBER: " + e.str());
        out.text("trace = " + e.trace_state().pretty() +
                 ", positive = " + (e.is_positive() ? "yes" : "no"));
        rec["verdict"] = "member";
        rec["canonical"] = e.str();
        rec["trace"] = e.trace_state().str();
        rec["positive"] = e.is_positive();
    } catch (const CongruenceViolationError& err) {
        out.text(std::string("NOT A MEMBER: ") + err.what());
        rec["verdict"] = "not-a-member";
        rec["reason"] = err.what();
    }
    out.record(rec);
    return kExitOk;
}

// ------------------------------------------------------------- classify --

int run_classify(const Out& out, const DimGroupParams& params, const std::string& lambda_text,
                 long modulus) {
    QuadRat lambda = QuadRat::parse_human(params.ring, lambda_text);
    std::vector<ResidueClass> classes = classify_residues(params, lambda, modulus);
    size_t plus = 0, minus = 0;
    for (const ResidueClass& c : classes) (c.det_sign > 0 ? plus : minus)++;
    out.text("residue classes mod " + std::to_string(modulus) + " for lambda = " +
             lambda.pretty() + ": " + std::to_string(classes.size()) + " (det +1: " +
             std::to_string(plus) + ", det -1: " + std::to_string(minus) + ")");
    for (const ResidueClass& c : classes) out.text(c.str());
    json arr = json::array();
    for (const ResidueClass& c : classes) arr.push_back(class_json(c));
    out.record(json{{"command", "classify"},
                    {"verdict", "ok"},
                    {"lambda", lambda.str()},
                    {"modulus", modulus},
                    {"classes", arr}});
    return kExitOk;
}

// -------------------------------------------------------- verify-witness --

int run_verify_witness(const Out& out, const DimGroupParams& params,
                       const std::string& lambda_text, const std::string& matrix_text) {
    QuadRat lambda = QuadRat::parse_human(params.ring, lambda_text);
    IntMat2 M = IntMat2::parse(matrix_text);
    WitnessCheck check = verify_witness(params, lambda, M);
    json rec{{"command", "verify-witness"}, {"lambda", lambda.str()}, {"matrix", M.str()}};
    if (check.verified) {
        out.text("VERIFIED: lambda = " + lambda.pretty() + ", M = " + M.str());
        out.text("image of order unit: " + check.image_of_unit->str());
        rec["verdict"] = "verified";
        rec["imageOfUnit"] = check.image_of_unit->str();
    } else {
        out.text("REJECTED: " + check.reason);
        rec["verdict"] = "rejected";
        rec["reason"] = check.reason;
    }
    out.record(rec);
    return kExitOk;
}

// ---------------------------------------------------------- obstruction --

json obstruction_json(const ObstructionResult& res) {
    json rec{{"modulus", res.modulus},
             {"verdict", res.impossible ? "impossible" : "possible"}};
    if (res.impossible) {
        json table = json::array();
        for (const ObstructionPair& f : res.failures) {
            table.push_back(json{{"class1", class_json(f.c1)},
                                 {"class2", class_json(f.c2)},
                                 {"prod12", f.prod12},
                                 {"prod21", f.prod21},
                                 {"mismatch", f.mismatch}});
        }
        rec["certificate"] = table;
    } else {
        rec["witness"] = {class_json(res.witness->first), class_json(res.witness->second)};
    }
    return rec;
}

void print_obstruction_text(const Out& out, const ObstructionResult& res,
                            const QuadRat& l1, const QuadRat& l2) {
    std::string head = "obstruction for (" + l1.pretty() + ", " + l2.pretty() + ") mod " +
                       std::to_string(res.modulus) + ": ";
    if (res.impossible) {
        out.text(head + "impossible — no residue-class pair commutes (" +
                 std::to_string(res.failures.size()) + " pairs checked)");
        for (const ObstructionPair& f : res.failures) {
            out.text("  C1=" + mat4_str(f.c1.m) + " C2=" + mat4_str(f.c2.m) + ": C1*C2=" +
                     mat4_str(f.prod12) + " C2*C1=" + mat4_str(f.prod21) +
                     " first mismatch at (" + std::to_string(f.mismatch / 2) + "," +
                     std::to_string(f.mismatch % 2) + ")");
        }
    } else {
        out.text(head + "possible");
        out.text("  commuting residue pair: C1=" + mat4_str(res.witness->first.m) +
                 " C2=" + mat4_str(res.witness->second.m));
        out.text("  note: a residue-level match is a necessary condition only");
    }
}

int run_obstruction(const Out& out, const DimGroupParams& params, const std::string& l1_text,
                    const std::string& l2_text, long modulus, bool replay) {
    QuadRat l1 = QuadRat::parse_human(params.ring, l1_text);
    QuadRat l2 = QuadRat::parse_human(params.ring, l2_text);
    ObstructionResult res = commutation_obstruction(params, l1, l2, modulus);
    print_obstruction_text(out, res, l1, l2);
    json rec = obstruction_json(res);
    rec["command"] = "obstruction";
    bool replay_ok = true;
    if (replay) {
        replay_ok = replay_obstruction(res);
        out.text(std::string("certificate replay: ") + (replay_ok ? "ok" : "FAILED"));
        rec["replay"] = replay_ok ? "ok" : "failed";
    }
    out.record(rec);
    return replay_ok ? kExitOk : kExitReplayFailure;
}

// ------------------------------------------------------------- fungroup --

int run_fungroup_uhf(const Out& out, const std::string& uhf_text) {
    SupernaturalNumber n = SupernaturalNumber::parse(uhf_text);
    std::vector<std::int64_t> primes = uhf_fundamental_group(n);
    std::string set = "{";
    for (size_t t = 0; t < primes.size(); ++t) {
        if (t) set += ", ";
        set += std::to_string(primes[t]);
    }
    set += "}";
    out.text("UHF fundamental group generators: " + set);
    out.record(json{{"command", "fungroup"},
                    {"verdict", "ok"},
                    {"uhf", n.str()},
                    {"generators", primes}});
    return kExitOk;
}

int run_fungroup(const Out& out, const DimGroupParams& params, long search_bound,
                 long sieve_cap) {
    FundamentalGroupReport rep = fundamental_group(params, search_bound, sieve_cap);
    out.text("upper bound (positive units): " + join_pretty(rep.upper_bound.generators) +
             ", rank " + std::to_string(rep.upper_bound.rank));
    json witnesses = json::array();
    for (const WitnessedGenerator& w : rep.witnessed) {
        out.text("witness for " + w.lambda.pretty() + ": M = " + w.phi.mat.str());
        witnesses.push_back(json{{"lambda", w.lambda.str()}, {"matrix", w.phi.mat.str()}});
    }
    for (const QuadRat& lam : rep.unwitnessed)
        out.text("no witness found for " + lam.pretty() + " with entries <= " +
                 std::to_string(rep.search_bound));
    bool established = rep.equality == Equality::Established;
    out.text(std::string("equality: ") + (established ? "established" : "open"));
    if (established)
        out.text("fundamental group = <" + join_pretty(rep.upper_bound.generators).substr(1,
                 join_pretty(rep.upper_bound.generators).size() - 2) + ">");
    json gens = json::array();
    for (const QuadRat& q : rep.upper_bound.generators) gens.push_back(q.str());
    out.record(json{{"command", "fungroup"},
                    {"verdict", established ? "established" : "open"},
                    {"generators", gens},
                    {"witnesses", witnesses},
                    {"searchBound", rep.search_bound},
                    {"classifyModulus", rep.classify_modulus}});
    return kExitOk;
}

// --------------------------------------------------------------- report --

int run_report(const Out& out, const Config& cfg, bool replay) {
    DimGroupParams params = cfg.params();  // BadModulusError -> exit 2 in main
    out.text("dimension group " + params.str() + ": parameters valid (" +
             std::to_string(params.ring.p) + "^" + std::to_string(params.s) + " = 1 mod " +
             std::to_string(params.m1) + " and mod " + std::to_string(params.m2) + ")");
    out.record(json{{"command", "report"}, {"step", "validate"}, {"verdict", "ok"},
                    {"params", params.str()}});

    int rc = run_implus(out, params.ring.d, params.ring.p, cfg.sieve_cap, replay);
    if (rc != kExitOk) return rc;

    FundamentalGroupReport rep = fundamental_group(params, cfg.search_bound, cfg.sieve_cap);
    rc = run_fungroup(out, params, cfg.search_bound, cfg.sieve_cap);
    if (rc != kExitOk) return rc;

    const long modulus = std::lcm(params.m1, params.m2);
    for (const QuadRat& lam : rep.upper_bound.generators) {
        std::vector<ResidueClass> classes = classify_residues(params, lam, modulus);
        out.text("residue classes mod " + std::to_string(modulus) + " for " + lam.pretty() +
                 ": " + std::to_string(classes.size()));
        json arr = json::array();
        for (const ResidueClass& c : classes) arr.push_back(class_json(c));
        out.record(json{{"command", "report"}, {"step", "classify"},
                        {"lambda", lam.str()}, {"classes", arr}});
    }

    bool all_impossible = true;
    const std::vector<QuadRat>& gens = rep.upper_bound.generators;
    for (size_t ia = 0; ia < gens.size(); ++ia) {
        for (size_t ib = ia + 1; ib < gens.size(); ++ib) {
            ObstructionResult res = commutation_obstruction(params, gens[ia], gens[ib], modulus);
            if (!res.impossible) {
                // A residue-level match is only a necessary condition;
                // tighten the modulus once before giving up.
                long escalated = modulus * params.m1;
                out.text("pair (" + gens[ia].pretty() + ", " + gens[ib].pretty() +
                         ") commutes mod " + std::to_string(modulus) + "; escalating to mod " +
                         std::to_string(escalated));
                res = commutation_obstruction(params, gens[ia], gens[ib], escalated);
            }
            print_obstruction_text(out, res, gens[ia], gens[ib]);
            json rec = obstruction_json(res);
            rec["command"] = "report";
            rec["step"] = "obstruction";
            if (replay) {
                bool ok = replay_obstruction(res);
                rec["replay"] = ok ? "ok" : "failed";
                out.text(std::string("certificate replay: ") + (ok ? "ok" : "FAILED"));
                if (!ok) {
                    out.record(rec);
                    return kExitReplayFailure;
                }
            }
            out.record(rec);
            if (!res.impossible) all_impossible = false;
        }
    }

    std::string genset = join_pretty(gens);
    if (all_impossible && gens.size() >= 2) {
        out.text("NO commuting trace-scaling pair at K0 level for generators " + genset);
        out.record(json{{"command", "report"}, {"step", "verdict"},
                        {"verdict", "no-commuting-pair"}, {"generators", genset}});
    } else {
        out.text("OBSTRUCTION NOT FOUND (residue level), escalation modulus " +
                 std::to_string(modulus * params.m1));
        out.record(json{{"command", "report"}, {"step", "verdict"},
                        {"verdict", "obstruction-not-found"},
                        {"escalationModulus", modulus * params.m1}});
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimforge: exact arithmetic, norm-equation certificates, and order-"
                 "automorphism obstructions for congruence-constrained dimension groups"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    bool replay = false;
    app.add_option("--config", config_path, "config file (key=value); falls back to $DIMFORGE_CONFIG");
    app.add_option("--output", output_override, "output mode: text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--replay", replay, "re-verify every produced certificate independently");

    // pell
    auto* pell = app.add_subcommand("pell", "decide x^2 - d*y^2 = n with certificates");
    std::int64_t pell_d = 0, pell_n = 0;
    pell->add_option("--d", pell_d, "radicand (nonsquare, >= 2)")->required();
    pell->add_option("--n", pell_n, "right-hand side (nonzero)")->required();

    // unit
    auto* unit = app.add_subcommand("unit", "fundamental unit of Z[sqrt(d)]");
    std::int64_t unit_d = 0;
    unit->add_option("--d", unit_d, "radicand (nonsquare, >= 2)")->required();

    // implus
    auto* implus = app.add_subcommand("implus", "positive unit group of Z[1/p]+Z[1/p]sqrt(d)");
    std::int64_t implus_d = -1, implus_p = -1;
    implus->add_option("--d", implus_d, "radicand (default: config)");
    implus->add_option("--p", implus_p, "inverted prime (default: config)");

    // dimcheck
    auto* dimcheck = app.add_subcommand("dimcheck", "membership of a tuple i,j,k,x,y in E");
    std::string dimcheck_elem;
    dimcheck->add_option("--elem", dimcheck_elem, "tuple \"i,j,k,x,y\"")->required();

    // classify
    auto* classify = app.add_subcommand("classify", "admissible matrix residue classes for lambda");
    std::string classify_lambda;
    long classify_mod = 0;
    classify->add_option("--lambda", classify_lambda, "scaling factor, e.g. 5 or 2+sqrt3")
        ->required();
    classify->add_option("--mod", classify_mod, "modulus (default: lcm(m1,m2))");

    // verify-witness
    auto* verify = app.add_subcommand("verify-witness", "check a (lambda, M) automorphism witness");
    std::string verify_lambda, verify_matrix;
    verify->add_option("--lambda", verify_lambda, "scaling factor")->required();
    verify->add_option("--matrix", verify_matrix, "matrix [[a,b],[c,d]] or a,b,c,d")->required();

    // obstruction
    auto* obstruction = app.add_subcommand("obstruction",
                                           "exhaustive commutation check for two scaling factors");
    std::string obs_l1, obs_l2;
    long obs_mod = 0;
    obstruction->add_option("--l1", obs_l1, "first scaling factor")->required();
    obstruction->add_option("--l2", obs_l2, "second scaling factor")->required();
    obstruction->add_option("--mod", obs_mod, "modulus (default: lcm(m1,m2))");

    // fungroup
    auto* fungroup = app.add_subcommand("fungroup", "fundamental group report (or --uhf)");
    std::string fungroup_uhf;
    fungroup->add_option("--uhf", fungroup_uhf,
                         "supernatural number, e.g. 2:inf,3:inf (UHF special case)");

    // report
    app.add_subcommand("report", "end-to-end pipeline with the final verdict");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Config cfg;
        if (!config_path.empty()) {
            cfg = load_config_file(config_path);
        } else if (const char* env = std::getenv("DIMFORGE_CONFIG"); env && *env) {
            cfg = load_config_file(env);
        }
        if (output_override == "text") cfg.output_mode = OutputMode::Text;
        if (output_override == "structured") cfg.output_mode = OutputMode::Structured;
        Out out{cfg.output_mode};

        if (*pell) {
            if (pell_n == 0) throw ParseError("pell: n must be nonzero");
            return run_pell(out, pell_d, pell_n, cfg.sieve_cap, replay);
        }
        if (*unit) return run_unit(out, unit_d);
        if (*implus) {
            return run_implus(out, implus_d < 0 ? cfg.d : implus_d,
                              implus_p < 0 ? cfg.p : implus_p, cfg.sieve_cap, replay);
        }
        if (*dimcheck) return run_dimcheck(out, cfg.params(), dimcheck_elem);
        if (*classify) {
            DimGroupParams params = cfg.params();
            long mod = classify_mod > 0 ? classify_mod : std::lcm(params.m1, params.m2);
            return run_classify(out, params, classify_lambda, mod);
        }
        if (*verify) return run_verify_witness(out, cfg.params(), verify_lambda, verify_matrix);
        if (*obstruction) {
            DimGroupParams params = cfg.params();
            long mod = obs_mod > 0 ? obs_mod : std::lcm(params.m1, params.m2);
            return run_obstruction(out, params, obs_l1, obs_l2, mod, replay);
        }
        if (*fungroup) {
            if (!fungroup_uhf.empty()) return run_fungroup_uhf(Out{cfg.output_mode}, fungroup_uhf);
            return run_fungroup(out, cfg.params(), cfg.search_bound, cfg.sieve_cap);
        }
        return run_report(out, cfg, replay);
    } catch (const BadModulusError& e) {
        std::cerr << "invalid group parameters: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const ParseError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitUsage;
    }
}
