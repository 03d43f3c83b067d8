#include "whitney/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "whitney/bounds.hpp"
#include "whitney/bump.hpp"
#include "whitney/errors.hpp"
#include "whitney/expr.hpp"
#include "whitney/transforms.hpp"

namespace whitney {

namespace {

const char* const kCommands[] = {"approximate", "verify", "bound", "bump-audit", "weierstrass-audit", "transform"};

bool known_command(const std::string& c) {
    for (const char* k : kCommands)
        if (c == k) return true;
    return false;
}

Expr parse_field(const std::optional<std::string>& text, const char* name) {
    if (!text) throw UsageError(std::string("missing --") + name);
    try {
        return parse(*text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("cannot parse --") + name + ": " + e.what());
    }
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> g;
    g.reserve(points);
    if (points == 1) return {lo};
    for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
    return g;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out && c.command != "approximate") {
        std::ofstream f(*c.out);
        if (!f) throw UsageError("cannot write " + *c.out);
        f << text;
    } else {
        out << text;
    }
}

template <class Row>
std::string verify_csv(const std::vector<Row>& rows) {
    std::string s = "t,k,deviation,eps,pass\n";
    for (const Row& r : rows)
        s += format_double(r.t) + "," + std::to_string(r.k) + "," + format_double(r.deviation) + "," + format_double(r.eps) +
             "," + (r.pass ? "PASS" : "FAIL") + "\n";
    return s;
}

std::string load_path(const RunConfig& c) {
    if (!c.approximant) throw UsageError("missing --approximant");
    return *c.approximant;
}

int cmd_approximate(const RunConfig& c, std::ostream& out) {
    const Expr f = parse_field(c.f, "f"), eps = parse_field(c.eps, "eps"), rho = parse_field(c.rho, "rho");
    const ProblemSpec spec = ProblemSpec::from_expressions(f, eps, rho, c.r, domain_case_from_string(c.domain),
                                                           c.delta_or_default());
    BuildOptions o;
    o.mode = mode_from_string(c.mode);
    const int N = c.stages.value_or(4);
    const Approximant g = Approximant::build(spec, N, o);
    const std::string path = c.out.value_or("approximant.json");
    save_approximant(g, path);
    std::ostringstream s;
    s << "stages: " << N << "\n";
    s << "mode: " << to_string(g.mode()) << "\n";
    s << "case: " << to_string(g.scheme().domain) << "\n";
    for (const LedgerRow& row : g.ledger())
        s << "stage " << row.n << ": r_n=" << row.r_n << " log_lambda=" << format_double(row.log_lambda)
          << " delta=" << format_double(row.delta) << "\n";
    const Interval P = g.protected_region();
    s << "protected_region: [" << format_double(P.lo) << ", " << format_double(P.hi) << "]\n";
    s << "log_tail_constant: " << format_double(g.log_tail_constant()) << "\n";
    s << "wrote: " << path << "\n";
    out << s.str();
    return kExitPass;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const Approximant g = load_approximant(load_path(c));
    const Interval P = g.protected_region();
    if (P.lo > P.hi) throw PreconditionError("the approximant has fewer than 2 stages; its protected region is empty");
    const auto grid = linspace(c.grid.lo.value_or(P.lo), c.grid.hi.value_or(P.hi), c.grid.points);
    const VerifyReport rep = g.verify(grid, c.grid.kmax);
    emit(c, verify_csv(rep.rows), out);
    return rep.pass ? kExitPass : kExitFail;
}

int cmd_bound(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Approximant g = load_approximant(load_path(c));
    const std::string thm = c.theorem.value_or(g.scheme().domain == DomainCase::R ? "thm2" : "thm3");
    if (g.mode() != Mode::Certified)
        throw PreconditionError("growth envelopes need certified-mode lambda_n; this file was built in practical mode");
    const DerivedConstants dc = derive_constants(g);
    for (const std::string& l : dc.trace) err << "# " << l << "\n";
    ComparisonReport rep;
    if (thm == "thm2") {
        if (g.scheme().domain != DomainCase::R) throw PreconditionError("thm2 needs a case R approximant");
        rep = compare_thm2(g, c.ts, dc, c.angles);
    } else if (thm == "thm3") {
        if (g.scheme().domain != DomainCase::Rpos) throw PreconditionError("thm3 needs a case Rpos approximant");
        const Thm3Constants k = derive_thm3_constants(g, dc, c.t_max);
        for (const std::string& l : k.trace) err << "# " << l << "\n";
        rep = compare_thm3(g, sample_region_V(k.alpha, c.t_max, c.v_samples, c.seed), k);
    } else {
        throw UsageError("theorem must be thm2 or thm3");
    }
    for (const LambdaCheckRow& r : dc.lambda_rows)
        err << "# lambda check n=" << r.n << " log(lambda_n - 1)=" << format_double(r.log_lambda_minus_one)
            << " log lambda(s)=" << format_double(r.log_bound) << (r.pass ? " PASS" : " FAIL") << "\n";
    emit(c, rep.csv(), out);
    return rep.pass && dc.lambda_pass ? kExitPass : kExitFail;
}

int cmd_transform(const RunConfig& c, std::ostream& out) {
    const Expr f = parse_field(c.f, "f"), eps = parse_field(c.eps, "eps"), rho = parse_field(c.rho, "rho");
    ChainOptions o;
    o.stages = c.stages.value_or(9);
    o.build.mode = mode_from_string(c.mode);
    std::vector<double> grid;
    std::optional<ComposedApproximant> g;
    if (c.halfline) {
        g = build_halfline_chain(f, eps, rho, c.r, o);
        grid = linspace(c.grid.lo.value_or(0.5), c.grid.hi.value_or(2.0), c.grid.points);
    } else {
        if (!c.interval) throw UsageError("transform needs an interval [a, b] or halfline = true");
        const double a = (*c.interval)[0], b = (*c.interval)[1];
        g = build_bounded_chain(f, eps, rho, c.r, a, b, o);
        const double m = 0.05 * (b - a);
        grid = linspace(c.grid.lo.value_or(a + m), c.grid.hi.value_or(b - m), c.grid.points);
    }
    const ComposedVerifyReport rep = g->verify(jet_fn(f), scalar_fn(eps), scalar_fn(rho), grid, c.grid.kmax);
    emit(c, verify_csv(rep.rows), out);
    return rep.pass ? kExitPass : kExitFail;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.command == "approximate") return cmd_approximate(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "bound") return cmd_bound(c, out, err);
    if (c.command == "transform") return cmd_transform(c, out);
    if (c.command == "bump-audit") {
        const AuditReport rep = bump_audit();
        emit(c, rep.csv(), out);
        return rep.pass ? kExitPass : kExitFail;
    }
    if (c.command == "weierstrass-audit") {
        const AuditReport rep = weierstrass_audit();
        emit(c, rep.csv(), out);
        return rep.pass ? kExitPass : kExitFail;
    }
    throw UsageError("unknown command " + c.command);
}

}  // namespace

double RunConfig::delta_or_default() const {
    if (delta) return *delta;
    return domain == "Rpos" ? std::sqrt(0.5) : std::numbers::sqrt2;
}

void RunConfig::validate() const {
    if (!known_command(command)) throw UsageError("unknown command '" + command + "'");
    if (domain != "R" && domain != "Rpos") throw UsageError("case must be R or Rpos");
    if (mode != "certified" && mode != "practical") throw UsageError("mode must be certified or practical");
    if (delta && !(*delta > 0.0)) throw UsageError("delta must be positive");
    if (r && *r < 0) throw UsageError("r must be >= 0");
    if (stages && (*stages < 1 || *stages > 64)) throw UsageError("stages must be in [1, 64]");
    if (grid.points < 1 || grid.points > 1000000) throw UsageError("grid.points must be in [1, 1000000]");
    if (grid.kmax < 0 || grid.kmax > 30) throw UsageError("grid.kmax must be in [0, 30]");
    if (grid.lo && grid.hi && *grid.lo > *grid.hi) throw UsageError("grid.lo exceeds grid.hi");
    if (angles < 1) throw UsageError("angles must be >= 1");
    if (!(t_max > 0.0)) throw UsageError("t_max must be positive");
    if (v_samples < 1) throw UsageError("v_samples must be >= 1");
    for (double t : ts)
        if (!(t >= 0.0)) throw UsageError("ts entries must be >= 0");
    if (theorem && *theorem != "thm2" && *theorem != "thm3") throw UsageError("theorem must be thm2 or thm3");
    if (interval && !((*interval)[0] < (*interval)[1])) throw UsageError("interval needs a < b");
    for (const auto* e : {&f, &eps, &rho})
        if (*e) parse_field(*e, "expression");
}

Json config_to_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    auto opt = [&j](const char* k, const auto& v) {
        if (v) j[k] = *v;
        else j[k] = nullptr;
    };
    opt("f", c.f);
    opt("eps", c.eps);
    opt("rho", c.rho);
    j["case"] = c.domain;
    opt("delta", c.delta);
    opt("r", c.r);
    opt("stages", c.stages);
    j["mode"] = c.mode;
    Json g;
    g["lo"] = c.grid.lo ? Json(*c.grid.lo) : Json(nullptr);
    g["hi"] = c.grid.hi ? Json(*c.grid.hi) : Json(nullptr);
    g["points"] = c.grid.points;
    g["kmax"] = c.grid.kmax;
    j["grid"] = g;
    j["ts"] = c.ts;
    j["angles"] = c.angles;
    j["t_max"] = c.t_max;
    j["v_samples"] = c.v_samples;
    opt("theorem", c.theorem);
    j["interval"] = c.interval ? Json(std::vector<double>{(*c.interval)[0], (*c.interval)[1]}) : Json(nullptr);
    j["halfline"] = c.halfline;
    opt("out", c.out);
    opt("approximant", c.approximant);
    j["seed"] = c.seed;
    return j;
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    static const std::vector<std::string> keys = {"command", "f",         "eps",       "rho",     "case",
                                                  "delta",   "r",         "stages",    "mode",    "grid",
                                                  "ts",      "angles",    "t_max",     "v_samples", "theorem",
                                                  "interval", "halfline", "out",       "approximant", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) throw UsageError("unknown config key " + it.key());
    RunConfig c;
    try {
        auto str = [&j](const char* k, std::optional<std::string>& dst) {
            if (j.contains(k) && !j[k].is_null()) dst = j[k].get<std::string>();
        };
        if (j.contains("command") && !j["command"].is_null()) c.command = j["command"].get<std::string>();
        str("f", c.f);
        str("eps", c.eps);
        str("rho", c.rho);
        if (j.contains("case")) c.domain = j["case"].get<std::string>();
        if (j.contains("delta") && !j["delta"].is_null()) c.delta = j["delta"].get<double>();
        if (j.contains("r") && !j["r"].is_null()) c.r = j["r"].get<int>();
        if (j.contains("stages") && !j["stages"].is_null()) c.stages = j["stages"].get<int>();
        if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
        if (j.contains("grid")) {
            const Json& g = j["grid"];
            if (g.contains("lo") && !g["lo"].is_null()) c.grid.lo = g["lo"].get<double>();
            if (g.contains("hi") && !g["hi"].is_null()) c.grid.hi = g["hi"].get<double>();
            if (g.contains("points")) c.grid.points = g["points"].get<int>();
            if (g.contains("kmax")) c.grid.kmax = g["kmax"].get<int>();
        }
        if (j.contains("ts")) c.ts = j["ts"].get<std::vector<double>>();
        if (j.contains("angles")) c.angles = j["angles"].get<int>();
        if (j.contains("t_max")) c.t_max = j["t_max"].get<double>();
        if (j.contains("v_samples")) c.v_samples = j["v_samples"].get<int>();
        str("theorem", c.theorem);
        if (j.contains("interval") && !j["interval"].is_null()) {
            const auto v = j["interval"].get<std::vector<double>>();
            if (v.size() != 2) throw UsageError("interval must have two entries");
            c.interval = std::array<double, 2>{v[0], v[1]};
        }
        if (j.contains("halfline")) c.halfline = j["halfline"].get<bool>();
        str("out", c.out);
        str("approximant", c.approximant);
        if (j.contains("seed")) c.seed = j["seed"].get<unsigned>();
    } catch (const Json::exception& e) {
        throw UsageError(std::string("bad config field: ") + e.what());
    }
    return c;
}

void AuditReport::add(AuditRow row) {
    pass = pass && row.pass;
    rows.push_back(std::move(row));
}

std::string AuditReport::csv() const {
    std::string s = "check,n,measured,bound,pass\n";
    for (const AuditRow& r : rows)
        s += r.check + "," + std::to_string(r.n) + "," + r.measured + "," + r.bound + "," + (r.pass ? "PASS" : "FAIL") + "\n";
    return s;
}

AuditReport bump_audit(unsigned pn_max, unsigned theta_max, unsigned alpha_max, std::size_t grid) {
    AuditReport rep;
    for (unsigned n = 1; n <= pn_max; ++n) {
        const BigInt m = pn_poly(n).max_abs_coeff();
        const BigInt b = (BigInt(1) << (n - 1)) * factorial(n);
        rep.add({"pn_max_coeff", static_cast<int>(n), m.str(), b.str(), m <= b});
    }
    const unsigned top = std::max(theta_max, alpha_max);
    std::vector<double> theta_sup(top + 1, 0.0), alpha_sup(top + 1, 0.0);
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
        const Jet<double> th = theta_jet(t, theta_max);
        const Jet<double> al = alpha_jet(t, alpha_max);
        for (unsigned n = 0; n <= theta_max; ++n) theta_sup[n] = std::max(theta_sup[n], std::abs(th[n]));
        for (unsigned n = 0; n <= alpha_max; ++n) alpha_sup[n] = std::max(alpha_sup[n], std::abs(al[n]));
    }
    for (unsigned n = 1; n <= theta_max; ++n) {
        const double b = std::pow(static_cast<double>(n), 3.0 * n);
        rep.add({"theta_sup", static_cast<int>(n), format_double(theta_sup[n]), format_double(b), theta_sup[n] <= b});
    }
    for (unsigned n = 1; n <= alpha_max; ++n) {
        const double b = derivative_bound(n).sharper();
        rep.add({"alpha_sup", static_cast<int>(n), format_double(alpha_sup[n]), format_double(b), alpha_sup[n] <= b});
    }
    return rep;
}

SupportedFn windowed_cubic() {
    const BumpSpec h = BumpSpec::hump(0.0, 1.0, 2.0, 3.0);
    SupportedFn f = make_supported(
        [h](double t, std::size_t k) {
            Jet<double> x = Jet<double>::variable(t, k);
            return x * x * x * hump_jet(h, t, k);
        },
        0.0, 3.0);
    return f;
}

AuditReport weierstrass_audit(std::size_t grid) {
    AuditReport rep;
    const SupportedFn f = windowed_cubic();
    for (int m = 0; m <= 2; ++m) {
        for (double eps : {1e-1, 1e-2}) {
            const NormEstimate n = sup_norm(f.eval, f.support.lo, f.support.hi, m + 1);
            const double thr = lambda_for_eps(n.up_to(m).inflated(), n.inflated(), eps);
            const CertifyReport c = certify_approx(f, m, eps, 1.01 * thr, {}, grid);
            rep.add({"approx_eps=" + format_double(eps), m, format_double(c.max_deviation), format_double(eps), c.pass});
        }
    }
    const SupportedFn one = make_supported([](double t, std::size_t k) { return Jet<double>::constant(t, k, 1.0); },
                                           -50.0, 50.0);
    int i = 0;
    for (double lam : {1.0, 1e2, 1e6, 1e12}) {
        const double v = transform_jet(one, lam, 0.0, 0)[0];
        const double err = std::abs(v - 1.0);
        rep.add({"kernel_mass_lambda=" + format_double(lam), i++, format_double(err), "1e-10", err <= 1e-10});
    }
    return rep;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"whitney: holomorphic approximants with certified error and growth bounds"};
    std::string command, config_path;
    std::optional<std::string> f, eps, rho, domain, mode, outp, approx;
    std::optional<double> delta;
    std::optional<int> stages;
    std::optional<unsigned> seed;
    app.add_option("command", command, "approximate | verify | bound | bump-audit | weierstrass-audit | transform")->required();
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--f", f, "function expression in t");
    app.add_option("--eps", eps, "tolerance expression in t");
    app.add_option("--rho", rho, "derivative order expression in t");
    app.add_option("--case", domain, "R or Rpos");
    app.add_option("--delta", delta, "ring spacing");
    app.add_option("--stages", stages, "number of stages");
    app.add_option("--mode", mode, "certified or practical");
    app.add_option("--out", outp, "output path");
    app.add_option("--approximant", approx, "approximant file (verify, bound)");
    app.add_option("--seed", seed, "seed for randomized samples");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }
    RunConfig c;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot read config " + config_path);
            Json j;
            try {
                in >> j;
            } catch (const Json::exception& e) {
                throw UsageError("config is not valid JSON: " + std::string(e.what()));
            }
            c = config_from_json(j);
        }
        c.command = command;
        if (f) c.f = f;
        if (eps) c.eps = eps;
        if (rho) c.rho = rho;
        if (domain) c.domain = *domain;
        if (delta) c.delta = delta;
        if (stages) c.stages = stages;
        if (mode) c.mode = *mode;
        if (outp) c.out = outp;
        if (approx) c.approximant = approx;
        if (seed) c.seed = *seed;
        c.validate();
        return dispatch(c, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ProtectedRegionError& e) {
        err << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const PreconditionError& e) {
        err << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const DomainError& e) {
        err << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace whitney
