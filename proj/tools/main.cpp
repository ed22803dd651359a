// charq: singular points of low-degree surfaces in P^3 over GF(2^m).
//
// Subcommands: analyze, conic, critical, verify-paper, families.  Exit
// codes: 0 success, 1 verification mismatch, 2 parse/input error,
// 3 inconclusive result under --strict, 4 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "charq/report.hpp"
#include "charq/verify.hpp"

using namespace charq;

namespace {

struct RunConfig {
    std::string field_spec = "GF(2^12)";
    bool json = false;
    std::uint64_t seed = Rng::kDefaultSeed;
    int dmax = 12;
    int threads = 0;
    bool strict = false;
    int subfield = 0;
};

std::uint64_t parse_modulus(const std::string& text) {
    // terms t^k, t, 1 joined by '+'
    std::uint64_t bits = 0;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError("field modulus: " + msg, i);
    };
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        if (i >= text.size()) break;
        if (text[i] == '1') {
            bits |= 1;
            ++i;
        } else if (text[i] == 't') {
            ++i;
            int e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                e = 0;
                if (i >= text.size() || !isdigit(text[i])) fail("expected exponent");
                while (i < text.size() && isdigit(text[i])) e = e * 10 + (text[i++] - '0');
            }
            if (e > 24) fail("exponent too large");
            bits |= std::uint64_t{1} << e;
        } else {
            fail("unexpected character");
        }
        while (i < text.size() && text[i] == ' ') ++i;
        if (i < text.size()) {
            if (text[i] != '+') fail("expected '+'");
            ++i;
        }
    }
    if (bits == 0) fail("empty modulus");
    return bits;
}

FieldCtx make_field(const std::string& spec) {
    const std::string prefix = "GF(2^";
    if (spec.rfind(prefix, 0) != 0) throw ParseError("field spec must start with GF(2^", 0);
    std::size_t i = prefix.size();
    int m = 0;
    while (i < spec.size() && isdigit(spec[i])) m = m * 10 + (spec[i++] - '0');
    if (i >= spec.size() || spec[i] != ')') throw ParseError("expected ')' in field spec", i);
    ++i;
    if (i == spec.size()) return FieldCtx(m);
    if (spec[i] != ':') throw ParseError("expected ':' before explicit modulus", i);
    return FieldCtx(m, parse_modulus(spec.substr(i + 1)));
}

std::vector<std::string> read_polynomial_lines(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open input file: " + path);
        in = &file;
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(*in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("no polynomial found in input");
    return lines;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const RunConfig& cfg, const std::string& path) {
    FieldCtx F = make_field(cfg.field_spec);
    AnalyzeOptions opt;
    opt.seed = cfg.seed;
    opt.dmax = cfg.dmax;
    opt.threads = cfg.threads;
    opt.subfield = cfg.subfield;
    bool inconclusive = false;
    Json all = Json::array();
    for (const auto& text : read_polynomial_lines(path)) {
        MultiPoly P = MultiPoly::parse(text, F, 4);
        if (!P.is_homogeneous() || P.is_zero())
            throw ParseError("input must be a nonzero homogeneous polynomial", 0);
        SingularReport rep = analyze_surface(P, opt);
        for (const auto& rec : rep.records)
            if (!rec.local.conclusive) inconclusive = true;
        if (rep.normality == Normality::Inconclusive) inconclusive = true;
        if (cfg.json) {
            all.push_back(report_json(rep, F, cfg.seed));
        } else {
            std::cout << "field: " << F.spec_string() << "  seed: " << cfg.seed << "\n";
            std::cout << report_table(rep) << "\n";
        }
    }
    if (cfg.json) emit_json(all.size() == 1 ? all[0] : all);
    return (cfg.strict && inconclusive) ? 3 : 0;
}

int cmd_conic(const RunConfig& cfg, const std::string& path) {
    FieldCtx F = make_field(cfg.field_spec);
    for (const auto& text : read_polynomial_lines(path)) {
        MultiPoly Q = MultiPoly::parse(text, F, 3, 2);
        ConicClass cls = conic_normal_form(Q);
        if (cfg.json) {
            Json j;
            j["schema"] = 1;
            j["conic"] = Q.str();
            j["kind"] = conic_kind_name(cls.kind);
            j["point_name"] = cone_point_name(cls.kind);
            j["rational_split"] = cls.rational_split;
            if (cls.transform) {
                Json m = Json::array();
                for (int i = 0; i < 3; ++i) {
                    Json row = Json::array();
                    for (int k = 0; k < 3; ++k) row.push_back(element_json(F, cls.transform->at(i, k)));
                    m.push_back(std::move(row));
                }
                j["transform"] = std::move(m);
                j["scale"] = element_json(F, cls.scale.bits);
                j["normal_form"] = cls.normal_form(F).str();
            } else {
                j["transform"] = nullptr;
            }
            emit_json(j);
        } else {
            std::cout << "conic: " << Q.str() << "\n";
            std::cout << "class: " << conic_kind_name(cls.kind) << " (double point type "
                      << cone_point_name(cls.kind) << ")\n";
            if (cls.transform) {
                std::cout << "transform to " << cls.normal_form(F).str() << " (scale "
                          << cls.scale.str() << "):\n";
                for (int i = 0; i < 3; ++i) {
                    std::cout << "  [";
                    for (int k = 0; k < 3; ++k)
                        std::cout << (k ? ", " : " ") << F.element_str(cls.transform->at(i, k));
                    std::cout << " ]\n";
                }
            } else {
                std::cout << "transform: none over " << F.spec_string()
                          << " (conjugate line pair)\n";
            }
        }
    }
    return 0;
}

int cmd_critical(const RunConfig& cfg, const std::string& path) {
    FieldCtx F = make_field(cfg.field_spec);
    EnumOptions opt;
    opt.threads = cfg.threads;
    opt.subfield = cfg.subfield;
    for (const auto& text : read_polynomial_lines(path)) {
        MultiPoly B = MultiPoly::parse(text, F, 3);
        PlaneLocus crit = critical_points_plane(B, opt);
        std::map<int, int> hist;
        for (const auto& p : crit.points) ++hist[p.defdeg()];
        if (cfg.json) {
            Json j;
            j["schema"] = 1;
            j["curve"] = B.str();
            j["field"] = F.spec_string();
            j["identically_critical"] = crit.identically_zero;
            Json pts = Json::array();
            for (const auto& p : crit.points) {
                Json pj;
                pj["coords"] = point_json(p);
                pj["defdeg"] = p.defdeg();
                pts.push_back(std::move(pj));
            }
            j["points"] = std::move(pts);
            j["total"] = crit.points.size();
            Json h = Json::object();
            for (const auto& [d, n] : hist) h[std::to_string(d)] = n;
            j["by_defdeg"] = std::move(h);
            j["truncated"] = crit.truncated;
            emit_json(j);
        } else {
            std::cout << "curve: " << B.str() << "\n";
            if (crit.identically_zero) {
                std::cout << "gradient vanishes identically (the curve is a square); "
                             "every point is critical\n";
                continue;
            }
            std::cout << "critical points: " << crit.points.size()
                      << (crit.truncated ? " (truncated)" : "") << "\n";
            for (const auto& p : crit.points)
                std::cout << "  " << p.str() << "  defdeg=" << p.defdeg() << "\n";
            std::cout << "by definition degree:";
            for (const auto& [d, n] : hist) std::cout << "  " << d << ":" << n;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& filter) {
    FieldCtx F(12);  // verification always runs on the canonical ambient field
    VerifyEnv env{F};
    env.seed = cfg.seed;
    env.threads = cfg.threads;
    env.dmax = cfg.dmax;
    int failures = 0;
    Json rows = Json::array();
    for (const auto& claim : verification_claims()) {
        if (!filter.empty() && claim.id.find(filter) == std::string::npos) continue;
        ClaimResult res;
        try {
            claim.run(env, res);
        } catch (const std::exception& e) {
            res.pass = false;
            res.observed = std::string("exception: ") + e.what();
        }
        if (!res.pass) ++failures;
        if (cfg.json) {
            Json j;
            j["id"] = claim.id;
            j["criterion"] = claim.criterion;
            j["anchor"] = claim.anchor;
            j["expected"] = res.expected;
            j["observed"] = res.observed;
            j["verdict"] = res.pass ? "PASS" : "FAIL";
            rows.push_back(std::move(j));
        } else {
            std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << claim.id << "\n";
            std::cout << "       claim:    " << claim.anchor << "\n";
            std::cout << "       expected: " << res.expected << "\n";
            std::cout << "       observed: " << res.observed << "\n";
        }
    }
    if (cfg.json) emit_json(rows);
    if (rows.empty() && !cfg.json && filter.empty()) std::cout << "no claims matched\n";
    return failures == 0 ? 0 : 1;
}

int emit_family(const RunConfig& cfg, const FieldCtx& F, const Family& fam,
                const std::string& name, bool verify) {
    ExpectationDiff diff;
    std::vector<ProjPoint> found;
    if (verify && !fam.expect.degenerate()) {
        EnumOptions opt;
        opt.threads = cfg.threads;
        opt.subfield = cfg.subfield;
        found = singular_points(fam.surface, opt);
        diff = compare_expectation(fam.expect, found);
    }
    if (cfg.json) {
        Json j;
        j["schema"] = 1;
        j["family"] = name;
        j["field"] = F.spec_string();
        j["surface"] = fam.surface.str();
        j["expectation"] = expectation_json(fam.expect);
        if (verify && !fam.expect.degenerate()) {
            j["enumerated_total"] = found.size();
            j["diff"] = diff_json(diff);
        }
        emit_json(j);
    } else {
        std::cout << "family:  " << name << "\n";
        std::cout << "surface: " << fam.surface.str() << "\n";
        if (fam.expect.degenerate()) {
            std::cout << "degenerate:";
            if (fam.expect.reducible) std::cout << " reducible";
            if (fam.expect.infinite_singular) std::cout << " infinite-singular-locus";
            std::cout << "\n";
        } else {
            std::cout << "expected singular points (" << fam.expect.total() << " rational";
            if (fam.expect.total_geometric)
                std::cout << ", " << *fam.expect.total_geometric << " geometric";
            std::cout << "):\n";
            for (const auto& g : fam.expect.groups) {
                std::cout << "  " << g.label;
                if (g.cone) std::cout << " [" << cone_point_name(*g.cone) << "]";
                std::cout << ":";
                for (const auto& p : g.points) std::cout << " " << p.str();
                std::cout << "\n";
            }
        }
        for (const auto& n : fam.expect.notes) std::cout << "note: " << n << "\n";
        if (verify && !fam.expect.degenerate()) {
            std::cout << "enumeration: " << found.size() << " points, diff "
                      << (diff.clean() ? "clean" : "DIRTY") << "\n";
            for (const auto& p : diff.missing) std::cout << "  missing " << p.str() << "\n";
            for (const auto& p : diff.extra) std::cout << "  extra   " << p.str() << "\n";
        }
    }
    return (verify && !fam.expect.degenerate() && !diff.clean()) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"singular points of low-degree surfaces in P^3 over GF(2^m)"};
    app.require_subcommand(1);
    app.add_option("--field", cfg.field_spec, "ambient field, GF(2^m) or GF(2^m):<modulus in t>");
    app.add_flag("--json", cfg.json, "machine-readable output");
    app.add_option("--seed", cfg.seed, "seed for randomized subroutines");
    app.add_option("--dmax", cfg.dmax, "truncation bound for local multiplicities");
    app.add_option("--threads", cfg.threads, "worker threads for the enumeration (0 = auto)");
    app.add_flag("--strict", cfg.strict, "exit 3 on inconclusive results");
    app.add_option("--subfield", cfg.subfield,
                   "restrict scans to the subfield GF(2^k) of the given degree");

    std::string in_path, filter, curve = "klein", ell = "x1";
    std::vector<std::string> coeffs;
    bool fam_verify = false;

    auto* analyze = app.add_subcommand("analyze", "full singular-locus report for a surface");
    analyze->add_option("file", in_path, "input file of polynomials ('-' for stdin)")->required();

    auto* conic = app.add_subcommand("conic", "classify a plane conic");
    conic->add_option("file", in_path)->required();

    auto* critical = app.add_subcommand("critical", "critical points of a plane curve");
    critical->add_option("file", in_path)->required();

    auto* verify = app.add_subcommand("verify-paper", "run the pinned verification matrix");
    verify->add_option("--case", filter, "only claims whose id contains this substring");

    auto* families = app.add_subcommand("families", "constructors for the studied surfaces");
    families->require_subcommand(1);
    families->add_flag("--verify", fam_verify, "enumerate and diff against the expectation");
    auto* f_cayley = families->add_subcommand("cayley", "the four-node cubic s3");
    auto* f_triple = families->add_subcommand("triple", "pinned quartic with a triple point");
    auto* f_f16 = families->add_subcommand("f16", "the 14-point quartic over GF(16)");
    auto* f_step4 = families->add_subcommand("step4", "inseparable quartic z^2(x1x2+x3^2)+y1y2y3y4");
    f_step4->add_option("a", coeffs, "a1 a2 a3 (field elements in u-syntax)")->expected(3);
    auto* f_schuett = families->add_subcommand("schuett", "w^4 + w^2 l^2 + B(x)");
    f_schuett->add_option("--curve", curve, "klein|lines")->check(CLI::IsMember({"klein", "lines"}));
    f_schuett->add_option("--ell", ell, "linear form in x1..x3");
    auto* f_symmetric = families->add_subcommand("symmetric", "a1 s1^4 + a2 s1^2 s2 + a3 s1 s3 + a4 s4 + beta s2^2");
    f_symmetric->add_option("a", coeffs, "a1 a2 a3 a4 beta")->expected(5);
    auto* f_pencil = families->add_subcommand("pencil", "c s1 s3 + s4");
    f_pencil->add_option("c", coeffs, "pencil parameter")->expected(1);
    auto* f_d4 = families->add_subcommand("d4", "s4 + beta s2^2");
    f_d4->add_option("beta", coeffs, "family parameter")->expected(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, in_path);
        if (conic->parsed()) return cmd_conic(cfg, in_path);
        if (critical->parsed()) return cmd_critical(cfg, in_path);
        if (verify->parsed()) return cmd_verify(cfg, filter);
        if (families->parsed()) {
            FieldCtx F = make_field(cfg.field_spec);
            auto elem = [&](const std::string& s) { return F.parse_element(s); };
            if (f_cayley->parsed()) {
                Family fam{cayley_cubic(F), {}};
                fam.expect.groups.push_back({"coordinate points",
                                             s4_orbit(ProjPoint(&F, {0, 0, 0, 1})),
                                             ConicKind::SmoothConic});
                fam.expect.total_geometric = 4;
                return emit_family(cfg, F, fam, "cayley", fam_verify);
            }
            if (f_triple->parsed())
                return emit_family(cfg, F, triple_point_example(F), "triple", fam_verify);
            if (f_f16->parsed())
                return emit_family(cfg, F, f16_instance(F), "f16", fam_verify);
            if (f_step4->parsed())
                return emit_family(cfg, F,
                                   inseparable_step4(elem(coeffs[0]), elem(coeffs[1]),
                                                     elem(coeffs[2])),
                                   "step4", fam_verify);
            if (f_schuett->parsed()) {
                MultiPoly B = curve == "klein"
                                  ? klein_quartic(F)
                                  : [&] {
                                        const FieldElement u = F.gf4_generator();
                                        Family s4f = inseparable_step4(u * u, u * u, u);
                                        // extract B as the z-free part
                                        MultiPoly B3(&F, 3);
                                        for (const auto& [m, c] : s4f.surface.terms())
                                            if (m.e[3] == 0) {
                                                Monomial m3;
                                                for (int i = 0; i < 3; ++i) m3.e[i] = m.e[i];
                                                B3.add_term(m3, c);
                                            }
                                        return B3;
                                    }();
                return emit_family(cfg, F,
                                   schuett_quartic(B, MultiPoly::parse(ell, F, 3, 1)),
                                   "schuett-" + curve, fam_verify);
            }
            if (f_symmetric->parsed()) {
                SymmetricFamilySpec s{elem(coeffs[0]), elem(coeffs[1]), elem(coeffs[2]),
                                      elem(coeffs[3]), elem(coeffs[4])};
                Family fam{symmetric_quartic(s), classify_symmetric(s)};
                return emit_family(cfg, F, fam, "symmetric" + s.str(), fam_verify);
            }
            if (f_pencil->parsed())
                return emit_family(cfg, F, pencil_quartic(F, elem(coeffs[0])), "pencil",
                                   fam_verify);
            if (f_d4->parsed())
                return emit_family(cfg, F, d4_quartic(F, elem(coeffs[0])), "d4", fam_verify);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const FamilyError& e) {
        std::cerr << "family construction rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}
