#include "whitney/serialization.hpp"

#include <cmath>
#include <fstream>

#include "whitney/errors.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

namespace {

constexpr const char* kFormat = "whitney-approximant/1";

Json numbers(const std::vector<double>& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(number_to_json(x));
    return out;
}

std::vector<double> numbers_from(const Json& j) {
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number_from_json(x));
    return out;
}

Json norm_to_json(const NormEstimate& e) {
    return Json{{"lower", number_to_json(e.lower)},
                {"inflation", e.inflation},
                {"kind", e.kind == NormKind::Inflated ? "inflated" : "lower-sample"},
                {"lo", number_to_json(e.lo)},
                {"hi", number_to_json(e.hi)},
                {"samples", e.samples},
                {"order", e.order},
                {"per_order", numbers(e.per_order)}};
}

NormEstimate norm_from_json(const Json& j) {
    NormEstimate e;
    e.lower = number_from_json(j.at("lower"));
    e.inflation = j.at("inflation").get<double>();
    e.kind = j.at("kind").get<std::string>() == "inflated" ? NormKind::Inflated : NormKind::LowerSample;
    e.lo = number_from_json(j.at("lo"));
    e.hi = number_from_json(j.at("hi"));
    e.samples = j.at("samples").get<std::size_t>();
    e.order = j.at("order").get<int>();
    e.per_order = numbers_from(j.at("per_order"));
    return e;
}

}  // namespace

Json number_to_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kPosInf;
        if (s == "-inf") return kNegInf;
        if (s == "nan") return std::nan("");
    }
    throw DomainError("expected a number in approximant file");
}

Json approximant_to_json(const Approximant& a) {
    const ProblemSpec& spec = a.spec();
    if (!spec.f_text || !spec.eps_text || !spec.rho_text)
        throw PreconditionError("approximant was built from function handles; only expression-based problems serialize");
    const RingScheme& s = a.scheme();
    Json j;
    j["format"] = kFormat;
    j["mode"] = to_string(a.mode());
    j["case"] = to_string(spec.domain);
    j["delta"] = spec.delta;
    j["r"] = spec.r ? Json(*spec.r) : Json(nullptr);
    j["f"] = *spec.f_text;
    j["eps"] = *spec.eps_text;
    j["rho"] = *spec.rho_text;
    j["scheme"] = {{"stages", s.stages},
                   {"a", numbers(s.a)},
                   {"b", numbers(s.b)},
                   {"eps_n", numbers(s.eps_n)},
                   {"r_n", s.r_n},
                   {"rho_n", numbers(s.rho_n)},
                   {"k_n", s.k_n},
                   {"condition_v_constant", s.condition_v_constant}};
    const auto& gh = gauss_hermite64();
    j["quadrature"] = {{"rule", "gauss-hermite-64, substituted u = sqrt(lambda)(s - t)"},
                       {"fallback", "adaptive gauss-legendre-16 panels within 6/sqrt(lambda) of a support boundary"},
                       {"nodes", numbers(gh.x)},
                       {"weights", numbers(gh.w)}};
    Json stages = Json::array();
    for (int n = 0; n < a.stages(); ++n) {
        const LedgerRow& r = a.ledger()[n];
        Json pieces = Json::array();
        for (const auto& p : a.window(n).pieces) pieces.push_back({p.lo, p.hi});
        stages.push_back({{"n", r.n},
                          {"r_n", r.r_n},
                          {"eps_n", r.eps_n},
                          {"eps_next", r.eps_next},
                          {"log_D", numbers(r.log_D)},
                          {"log_N_next", number_to_json(r.log_N_next)},
                          {"delta", r.delta},
                          {"log_delta", number_to_json(r.log_delta)},
                          {"phi_norm", numbers(r.phi_norm)},
                          {"log_M", number_to_json(r.log_M)},
                          {"f_norm", numbers(r.f_norm)},
                          {"log_G0", number_to_json(r.log_G0)},
                          {"log_G", number_to_json(r.log_G)},
                          {"log_mu", number_to_json(r.log_mu)},
                          {"log_lambda", number_to_json(r.log_lambda)},
                          {"support", {s.a[n + 2], s.b[n + 2]}},
                          {"support_pieces", pieces},
                          {"h_norm", norm_to_json(r.h_norm)},
                          {"log_H", number_to_json(r.log_H)},
                          {"log_tail_term", number_to_json(r.log_tail_term)}});
    }
    j["stages"] = stages;
    j["tail"] = {{"log_c_star", number_to_json(a.log_c_star())},
                 {"log_chain_c", number_to_json(a.log_chain_c())},
                 {"log_M", number_to_json(a.log_tail_constant())}};
    const Interval P = a.protected_region();
    j["protected_region"] = {number_to_json(P.lo), number_to_json(P.hi)};
    return j;
}

Approximant approximant_from_json(const Json& j) {
    if (j.value("format", std::string()) != kFormat) throw DomainError("not a whitney approximant file");
    std::optional<int> r;
    if (!j.at("r").is_null()) r = j.at("r").get<int>();
    ProblemSpec spec = ProblemSpec::from_expressions(parse(j.at("f").get<std::string>()), parse(j.at("eps").get<std::string>()),
                                                     parse(j.at("rho").get<std::string>()), r,
                                                     domain_case_from_string(j.at("case").get<std::string>()),
                                                     j.at("delta").get<double>());
    RingScheme s;
    const Json& js = j.at("scheme");
    s.domain = spec.domain;
    s.delta = spec.delta;
    s.stages = js.at("stages").get<int>();
    s.a = numbers_from(js.at("a"));
    s.b = numbers_from(js.at("b"));
    s.eps_n = numbers_from(js.at("eps_n"));
    s.r_n = js.at("r_n").get<std::vector<int>>();
    s.rho_n = numbers_from(js.at("rho_n"));
    s.k_n = js.at("k_n").get<std::vector<long long>>();
    s.condition_v_constant = js.at("condition_v_constant").get<double>();
    std::vector<LedgerRow> ledger;
    for (const auto& st : j.at("stages")) {
        LedgerRow row;
        row.n = st.at("n").get<int>();
        row.r_n = st.at("r_n").get<int>();
        row.eps_n = st.at("eps_n").get<double>();
        row.eps_next = st.at("eps_next").get<double>();
        row.log_D = numbers_from(st.at("log_D"));
        row.log_N_next = number_from_json(st.at("log_N_next"));
        row.delta = st.at("delta").get<double>();
        row.log_delta = number_from_json(st.at("log_delta"));
        row.phi_norm = numbers_from(st.at("phi_norm"));
        row.log_M = number_from_json(st.at("log_M"));
        row.f_norm = numbers_from(st.at("f_norm"));
        row.log_G0 = number_from_json(st.at("log_G0"));
        row.log_G = number_from_json(st.at("log_G"));
        row.log_mu = number_from_json(st.at("log_mu"));
        row.log_lambda = number_from_json(st.at("log_lambda"));
        row.h_norm = norm_from_json(st.at("h_norm"));
        row.norm_samples = row.h_norm.samples;
        row.log_H = number_from_json(st.at("log_H"));
        row.log_tail_term = number_from_json(st.at("log_tail_term"));
        ledger.push_back(std::move(row));
    }
    const Json& tail = j.at("tail");
    return Approximant::from_parts(spec, s, mode_from_string(j.at("mode").get<std::string>()), std::move(ledger),
                                   number_from_json(tail.at("log_c_star")), number_from_json(tail.at("log_chain_c")));
}

void save_approximant(const Approximant& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << approximant_to_json(a).dump(1) << '\n';
}

Approximant load_approximant(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw DomainError(std::string("malformed approximant file: ") + e.what());
    }
    return approximant_from_json(j);
}

}  // namespace whitney
