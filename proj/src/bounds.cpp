#include "whitney/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "whitney/combinatorics.hpp"
#include "whitney/errors.hpp"

namespace whitney {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::string fmt(const char* f, double a) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt2(const char* f, double a, double b) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

int norm_order(const ProblemSpec& spec, double rho) {
    int m = static_cast<int>(std::floor(rho + 1e-12)) + 1;
    if (spec.r) m = std::min(m, *spec.r + 1);
    return m;
}

double delta_eps(const ProblemSpec& spec, double s) {
    const double de = delta_difference([&spec](double t) { return spec.eps_at(t); }, s);
    if (!(de > 0.0)) throw DomainError("Delta eps(s) <= 0 at s = " + format_double(s) + ": eps is not strictly decreasing");
    return de;
}

void check_CD(double C, double D) {
    if (!(C > 0.0)) throw DomainError("envelope constant C must be positive");
    if (!(D >= 1.0)) throw DomainError("envelope constant D must be >= 1");
}

// sup over s >= s_min of log(s/delta) / s^2 is attained at s_min when s_min / delta >= e^{1/2}.
double log_ratio_over_square(double s_min, double delta) { return std::log(s_min / delta) / (s_min * s_min); }

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Thm2: return "thm2";
        case Provenance::Thm3: return "thm3";
        case Provenance::Cor2: return "cor2";
        case Provenance::Cor3: return "cor3";
        case Provenance::Cor4: return "cor4";
    }
    return "?";
}

Interval norm_window(DomainCase c, double s) {
    if (!(s > 0.0)) throw DomainError("window radius must be positive");
    return c == DomainCase::R ? Interval{-s, s} : Interval{0.0, s};
}

double window_norm(const ProblemSpec& spec, double s, int m, const BoundsOptions& opts) {
    if (spec.f_zero) return 0.0;
    const Interval w = norm_window(spec.domain, s);
    SamplingOptions so;
    so.samples = opts.samples;
    so.inflation = opts.inflation;
    return sup_norm(spec.f, w.lo, w.hi, m, so).inflated();
}

double lambda_formula(double D, double rho, double s, double norm, double delta_eps, int s_power) {
    if (!(s > 0.0)) throw DomainError("lambda(s) requires s > 0");
    if (!(D >= 1.0)) throw DomainError("lambda(s) requires D >= 1");
    if (!(delta_eps > 0.0)) throw DomainError("lambda(s) requires Delta eps(s) > 0");
    if (!(norm > 0.0)) return kNegInf;
    const double P = D * (rho + 1.0);
    return P * std::pow(s, s_power) * std::log(P) + 3.0 * (std::log(norm) - std::log(delta_eps));
}

double envelope_formula(double C, double s, int s_power, double log_plus_norm, double log_lambda) {
    const double inner = log_add(std::log1p(log_plus_norm), log_lambda);
    return std::log(C) + s_power * std::log(s) + inner;
}

double thm2_lambda(double s, const ProblemSpec& spec, double D, const BoundsOptions& opts) {
    const double rho = spec.rho_at(s);
    const double de = delta_eps(spec, s);
    return lambda_formula(D, rho, s, window_norm(spec, s, norm_order(spec, rho), opts), de, 1);
}

double thm2_envelope(double t, const ProblemSpec& spec, double C, double D, const BoundsOptions& opts) {
    if (!(t >= 0.0)) throw DomainError("thm2 envelope requires t >= 0");
    check_CD(C, D);
    const double s = kSqrt2 * t + 1.0;
    const double w = s + 3.0 * kSqrt2;
    const double lp = log_plus(window_norm(spec, w, 0, opts));
    return envelope_formula(C, s, 2, lp, thm2_lambda(w, spec, D, opts));
}

bool in_region_V(std::complex<double> z, double alpha) {
    const double x = z.real(), y = z.imag();
    return x > 0.0 && y * y <= x * x - alpha;
}

double thm3_lambda(double s, const ProblemSpec& spec, double D, const BoundsOptions& opts) {
    const double rho = spec.rho_at(s);
    const double de = delta_eps(spec, s);
    return lambda_formula(D, rho, s, window_norm(spec, s, norm_order(spec, rho), opts), de, 2);
}

double thm3_envelope(std::complex<double> z, double alpha, const ProblemSpec& spec, double C, double D,
                     const BoundsOptions& opts) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (!in_region_V(z, alpha))
        throw DomainError("z = " + format_double(z.real()) + "+" + format_double(z.imag()) +
                          "i is outside V = {Re z > 0, (Im z)^2 <= (Re z)^2 - alpha}");
    check_CD(C, D);
    const double t = std::abs(z);
    const double s = D * (t * t + 1.0);
    const double lp = log_plus(window_norm(spec, s, 0, opts));
    return envelope_formula(C, s, 1, lp, thm3_lambda(s, spec, D, opts));
}

DerivedConstants derive_constants(const Approximant& g, const BoundsOptions& opts) {
    DerivedConstants k;
    const ProblemSpec& spec = g.spec();
    const RingScheme& sc = g.scheme();
    k.domain = sc.domain;
    const double c = k.c, d = k.d, dl = sc.delta;
    auto& tr = k.trace;
    tr.push_back(fmt2("bump constants: c = %.17g, d = %.17g", c, d));

    double s_min, X;
    int s_power;
    if (sc.domain == DomainCase::R) {
        // delta_n^{-1} = 2^{n+4} D_{n+1} / (eps_n - eps_{n+1}) with eps_n - eps_{n+1} >= delta Delta eps(s), s = delta (n+2).
        k.c0 = std::pow(4.0 * c / dl, 3.0);
        k.d0 = 3.0 * d;
        k.c1 = 2.0 * c;
        k.d1 = 3.0 * d / dl;
        s_power = 1;
        s_min = 2.0 * dl;
        tr.push_back(fmt("case R, s = delta (n+2), delta = %.17g", dl));
        tr.push_back(fmt("c0 = (4c/delta)^3 = %.17g (the stated chain has (2c)^3 with delta_n^{-1} = 2^{n+3} D / gap)", k.c0));
        tr.push_back(fmt("d0 = 3d = %.17g", k.d0));
        tr.push_back(fmt("c1 = 2c = %.17g", k.c1));
        tr.push_back(fmt("d1 = 3d/delta = %.17g", k.d1));
        const double L1 = std::log(k.c1);
        const double K0 = std::log(128.0 * kSqrt2 * k.c0);
        X = k.d0 / s_min + ((3.0 / dl) * std::log(2.0) / L1) + std::max(K0, 0.0) / (s_min * L1);
        tr.push_back(fmt("L1 = log c1 = %.17g", L1));
        tr.push_back(fmt("K0 = log(128 sqrt2 c0) = %.17g", K0));
        tr.push_back(fmt("X = d0/s_min + (3/delta) log2 / L1 + max(K0,0)/(s_min L1) = %.17g", X));
    } else {
        // s = delta (n+3), n >= 1; 2^{n+4} = 2 * 2^{s/delta}; eps_n - eps_{n+1} >= delta Delta eps(s).
        k.c0 = std::pow(2.0 * c / dl, 3.0);
        k.d0 = 3.0 * d;
        k.c1 = 2.0 * c;
        k.d1 = 3.0 * d / (dl * dl);
        s_power = 2;
        s_min = 4.0 * dl;
        tr.push_back(fmt("case Rpos, s = delta (n+3), n >= 1, delta = %.17g", dl));
        tr.push_back(fmt("c0 = (2c/delta)^3 = %.17g (the stated chain has (c/delta)^3 with delta_n^{-1} = 2^{n+3} D / gap)", k.c0));
        tr.push_back(fmt("d0 = 3d = %.17g", k.d0));
        tr.push_back(fmt("c1 = 2c = %.17g", k.c1));
        tr.push_back(fmt("d1 = 3d/delta^2 = %.17g", k.d1));
        const double L1 = std::log(k.c1);
        const double K0 = std::log(128.0 * kSqrt2 * k.c0);
        X = k.d0 / (s_min * s_min) +
            (std::max(K0, 0.0) / (s_min * s_min) + (3.0 / dl) * std::log(2.0) / s_min +
             k.d0 * log_ratio_over_square(s_min, dl)) / L1;
        tr.push_back(fmt("L1 = log c1 = %.17g", L1));
        tr.push_back(fmt("K0 = log(128 sqrt2 c0) = %.17g", K0));
        tr.push_back(fmt("X = d0/s_min^2 + (max(K0,0)/s_min^2 + (3/delta) log2/s_min + d0 log4/(16 delta^2)) / L1 = %.17g", X));
    }
    k.D = std::max(k.c1, k.d1 + X);
    tr.push_back(fmt("D = max(c1, d1 + X) = %.17g", k.D));

    k.log_M = g.log_tail_constant();
    k.N = log_add(0.0, k.log_M) + 3.0;
    k.C = 2.0 * k.N;
    tr.push_back(fmt("log M = %.17g (M = c_* pi^2 / 6)", k.log_M));
    tr.push_back(fmt("N = log(1+M) + 3 = %.17g", k.N));
    tr.push_back(fmt("C = 2N = %.17g", k.C));

    for (const LedgerRow& row : g.ledger()) {
        if (sc.domain == DomainCase::Rpos && row.n == 0) continue;
        LambdaCheckRow lr;
        lr.n = row.n;
        lr.s = sc.domain == DomainCase::R ? dl * (row.n + 2) : dl * (row.n + 3);
        lr.log_lambda_minus_one = row.log_lambda > 0.0 ? log_sub(row.log_lambda, 0.0) : kNegInf;
        const double rho = spec.rho_at(lr.s);
        double norm = window_norm(spec, lr.s, norm_order(spec, rho), opts);
        for (double v : row.f_norm) norm = std::max(norm, v);
        lr.log_bound = lambda_formula(k.D, rho, lr.s, norm, delta_eps(spec, lr.s), s_power);
        lr.pass = lr.log_lambda_minus_one <= lr.log_bound;
        k.lambda_pass = k.lambda_pass && lr.pass;
        k.lambda_rows.push_back(lr);
    }
    return k;
}

Thm3Constants derive_thm3_constants(const Approximant& g, const DerivedConstants& dc, double t_max) {
    const RingScheme& sc = g.scheme();
    if (sc.domain != DomainCase::Rpos) throw PreconditionError("the thm3 envelope needs a case Rpos approximant");
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    Thm3Constants k;
    const double dl = sc.delta;
    k.alpha = 2.0 * dl * dl;
    k.t_max = t_max;
    k.n_max = static_cast<long long>(std::floor(2.0 / std::sqrt(k.alpha) * t_max));
    for (long long n = 0; n <= k.n_max; ++n) {
        const double q = dl * static_cast<double>(n) / kSqrt2;
        k.c0 = std::max(k.c0, static_cast<double>(RingScheme::k_of(sc.domain, dl, n) + 2) / (q * q + 1.0));
    }
    k.c1 = dl * k.c0;
    k.N = k.c0 * (1.0 + std::log(2.0)) + log_add(0.0, dc.log_M) + 1.0;
    k.C = 2.0 * k.N / k.c1;
    k.D = std::max(dc.D, k.c1);
    auto& tr = k.trace;
    tr.push_back(fmt2("alpha = 2 delta^2 = %.17g, t_max = %.17g", k.alpha, t_max));
    tr.push_back(fmt("rings reachable from |z| <= t_max: n <= %.0f", static_cast<double>(k.n_max)));
    tr.push_back(fmt("c0' = max (k_n + 2)/((delta n/sqrt2)^2 + 1) over those rings = %.17g", k.c0));
    tr.push_back(fmt("c1' = delta c0' = %.17g", k.c1));
    tr.push_back(fmt("N' = c0'(1 + log2) + log(1+M) + 1 = %.17g", k.N));
    tr.push_back(fmt("C' = 2N'/c1' = %.17g", k.C));
    tr.push_back(fmt("D' = max(D, c1') = %.17g", k.D));
    return k;
}

RingCertificate ring_locator_check(std::complex<double> z, const RingScheme& s) {
    RingCertificate c;
    const double x = z.real(), y = z.imag(), dl = s.delta;
    if (s.domain == DomainCase::R) {
        c.n = s.locate(z);
        c.lhs = dl * static_cast<double>(c.n);
        c.mid = std::abs(x) + std::sqrt(dl * dl / 2.0 + y * y);
        c.rhs = dl / kSqrt2 + kSqrt2 * std::abs(z);
        c.holds = c.lhs <= c.mid && c.mid <= c.rhs;
        c.inequality = "delta n <= |x| + sqrt(delta^2/2 + y^2) <= delta/sqrt2 + sqrt2 |z|";
    } else {
        const double alpha = 2.0 * dl * dl;
        if (!in_region_V(z, alpha)) throw DomainError("z is outside V = {Re z > 0, (Im z)^2 <= (Re z)^2 - alpha}");
        c.n = s.locate(z);
        c.lhs = static_cast<double>(c.n);
        c.rhs = 2.0 / std::sqrt(alpha) * std::abs(z);
        c.mid = c.rhs;
        c.holds = c.lhs <= c.rhs;
        c.inequality = "n <= (2/sqrt(alpha)) |z|";
    }
    return c;
}

double Envelope::at(std::complex<double> z) const {
    if (provenance == Provenance::Thm3 && !in_region_V(z, alpha))
        throw DomainError("z is outside V = {Re z > 0, (Im z)^2 <= (Re z)^2 - alpha}");
    return at_t(std::abs(z));
}

double Envelope::constant(const std::string& name) const {
    for (const auto& [k, v] : constants)
        if (k == name) return v;
    throw DomainError("envelope has no constant " + name);
}

Envelope thm2_envelope_of(const ProblemSpec& spec, double C, double D, const BoundsOptions& opts) {
    check_CD(C, D);
    Envelope e;
    e.provenance = Provenance::Thm2;
    e.constants = {{"C", C}, {"D", D}};
    e.trace.push_back("s = sqrt2 t + 1; bound C s^2 (1 + log+ ||f||_{s+3 sqrt2} + lambda(s + 3 sqrt2))");
    e.at_t = [spec, C, D, opts](double t) { return thm2_envelope(t, spec, C, D, opts); };
    return e;
}

Envelope thm3_envelope_of(const ProblemSpec& spec, const Thm3Constants& k, const BoundsOptions& opts) {
    Envelope e;
    e.provenance = Provenance::Thm3;
    e.alpha = k.alpha;
    e.constants = {{"C", k.C}, {"D", k.D}, {"c0", k.c0}, {"c1", k.c1}, {"N", k.N}, {"alpha", k.alpha}};
    e.trace = k.trace;
    e.trace.push_back("s = D (t^2 + 1); bound C s (1 + log+ ||f||_s + lambda(s)), lambda exponent D (rho+1) s^2");
    const double C = k.C, D = k.D;
    e.at_t = [spec, C, D, opts](double t) {
        if (!(t >= 0.0)) throw DomainError("t must be >= 0");
        const double s = D * (t * t + 1.0);
        const double lp = log_plus(window_norm(spec, s, 0, opts));
        return envelope_formula(C, s, 1, lp, thm3_lambda(s, spec, D, opts));
    };
    return e;
}

double cor4_delta(double eps, int N) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    if (N < 0) throw DomainError("N must be >= 0");
    return eps / pow00(N / std::numbers::e, N);
}

double cor4_eps0(double eps, int N, double t) { return cor4_delta(eps, N) * std::exp(-t); }

double cor4_delta_eps0(double eps, int N, double t) {
    return cor4_delta(eps, N) * std::exp(-t) * (1.0 - std::exp(-1.0));
}

Envelope corollary_envelope(Provenance which, const CorollaryParams& p, const BoundsOptions& opts) {
    check_CD(p.C, p.D);
    Envelope e;
    e.provenance = which;
    const double C = p.C, D = p.D;
    switch (which) {
        case Provenance::Cor2: {
            if (p.r < 0) throw DomainError("cor2 needs finite r >= 0");
            if (!p.f || !p.eps) throw DomainError("cor2 needs f and eps");
            const int r = p.r;
            const double log_D2 = D * (r + 1) * std::log(D * (r + 1));
            e.constants = {{"C", C}, {"D", D}, {"log_D2", log_D2}, {"r", r}};
            e.trace.push_back(fmt("rho = r constant; D2 = (D(r+1))^{D(r+1)}, log D2 = %.17g", log_D2));
            e.trace.push_back("s = sqrt2 (t+4); bound C s^2 (1 + log+ ||f||_s + D2^s (||f||_{s;r+1} / Delta eps(s))^3)");
            JetFn f = p.f;
            ScalarFn eps = p.eps;
            e.at_t = [f, eps, r, C, log_D2, opts](double t) {
                if (!(t >= 0.0)) throw DomainError("t must be >= 0");
                const double s = kSqrt2 * (t + 4.0);
                SamplingOptions so;
                so.samples = opts.samples;
                so.inflation = opts.inflation;
                const NormEstimate n = sup_norm(f, -s, s, r + 1, so);
                const double de = delta_difference(eps, s);
                if (!(de > 0.0)) throw DomainError("Delta eps(s) <= 0");
                const double n0 = n.per_order.at(0) * n.inflation;
                const double log_lam = n.inflated() > 0.0
                                           ? s * log_D2 + 3.0 * (std::log(n.inflated()) - std::log(de))
                                           : kNegInf;
                return envelope_formula(C, s, 2, log_plus(n0), log_lam);
            };
            break;
        }
        case Provenance::Cor3: {
            if (p.r < 0) throw DomainError("cor3 needs finite r >= 0");
            if (!(p.M >= 1.0)) throw DomainError("cor3 needs M >= 1");
            if (!(p.eps_const > 0.0)) throw DomainError("cor3 needs eps > 0");
            const int r = p.r;
            const double M = p.M, eps = p.eps_const;
            const double log_D2 = D * (r + 1) * std::log(D * (r + 1));
            const double s_min = 4.0 * kSqrt2;
            const double shape = (2.0 * std::log(s_min) + 3.0 * std::log((s_min + 1.0) * (s_min + 2.0))) / s_min;
            const double log_E = log_D2 +
                                 (std::max(std::log(2.0 * C * (1.0 + std::log(M))), 0.0) + 3.0 * std::max(std::log(M / eps), 0.0)) / s_min +
                                 shape;
            e.constants = {{"C", C}, {"D", D}, {"log_D2", log_D2}, {"M", M}, {"eps", eps}, {"log_E", log_E}};
            e.trace.push_back("eps0(t) = eps/(t+1), Delta eps0(t) = eps/((t+1)(t+2))");
            e.trace.push_back("s = sqrt2 (t+4); bound C s^2 (1 + log M + D2^s (M (s+1)(s+2)/eps)^3)");
            e.trace.push_back(fmt("log E = log D2 + (log+(2C(1+log M)) + 3 log+(M/eps))/s_min + shape(s_min) = %.17g", log_E));
            e.at_t = [C, M, eps, log_D2](double t) {
                if (!(t >= 0.0)) throw DomainError("t must be >= 0");
                const double s = kSqrt2 * (t + 4.0);
                const double log_lam = s * log_D2 + 3.0 * (std::log(M) + std::log((s + 1.0) * (s + 2.0)) - std::log(eps));
                return envelope_formula(C, s, 2, std::log(M), log_lam);
            };
            break;
        }
        case Provenance::Cor4: {
            if (p.N < 0) throw DomainError("cor4 needs N >= 0");
            if (!(p.eps_const > 0.0)) throw DomainError("cor4 needs eps > 0");
            if (!p.f_expr) throw DomainError("cor4 needs f as an expression");
            if (!(p.T > 0.0)) throw DomainError("cor4 needs T > 0");
            const double w_min = 1.0 + 3.0 * kSqrt2;
            if (w_min * (std::log(D) - 3.0) < std::log(8.0))
                throw DomainError("cor4 needs log D >= 3 + log 8 / (1 + 3 sqrt2) to absorb 8 e^{3s}");
            const double Dp = D + 1.0;
            const int N = p.N;
            const double eps = p.eps_const;
            const double log_pref = N == 0 ? 0.0 : N * (std::log(static_cast<double>(N)) - 1.0);
            e.constants = {{"C", C}, {"D", D}, {"D_cor4", Dp}, {"N", N}, {"eps", eps}, {"delta", cor4_delta(eps, N)}};
            e.trace.push_back("eps0(t) = delta e^{-t}, rho0(t) = N + t, delta = eps/(N/e)^N");
            e.trace.push_back("1/Delta eps0(s) <= (2/eps)(N/e)^N e^s; 8 e^{3s} absorbed by D_cor4 = D + 1");
            e.trace.push_back("s = sqrt2 t + 1, w = s + 3 sqrt2, r = N + w");
            const Expr f = *p.f_expr;
            const double T = p.T;
            const double infl = opts.inflation;
            const std::size_t samples = opts.samples;
            e.at_t = [f, T, infl, samples, N, eps, C, Dp, log_pref](double t) {
                if (!(t >= 0.0)) throw DomainError("t must be >= 0");
                const double s = kSqrt2 * t + 1.0;
                const double w = s + 3.0 * kSqrt2;
                const double r = N + w;
                const int top = static_cast<int>(std::ceil(r + 1.0));
                double F = 0.0;
                for (int n = 0; n <= top; ++n) F = std::max(F, schwartz_seminorm(f, 0, n, T, samples).lower * infl);
                const double f0 = sup_norm(f, -w, w, 0, samples).lower * infl;
                const double P = Dp * (r + 1.0);
                const double log_lam = F > 0.0 ? P * w * std::log(P) + 3.0 * (log_pref + std::log(F) - std::log(eps)) : kNegInf;
                return envelope_formula(C, s, 2, log_plus(f0), log_lam);
            };
            break;
        }
        default:
            throw DomainError("corollary_envelope handles cor2, cor3 and cor4");
    }
    return e;
}

IndexDiagnostic index_diagnostic(const std::vector<std::pair<double, double>>& samples, int m) {
    if (samples.empty()) throw DomainError("index diagnostic needs at least one sample");
    if (m < 1) throw DomainError("index m must be >= 1");
    IndexDiagnostic out;
    out.value = -std::numeric_limits<double>::infinity();
    for (const auto& [t, log_norm] : samples) {
        if (!(t > 1.0)) throw DomainError("index diagnostic needs t > 1 (log t > 0)");
        double v = log_norm;
        for (int i = 1; i < m; ++i) {
            if (!(v > 0.0)) throw DomainError("iterated log undefined at t = " + format_double(t));
            v = std::log(v);
        }
        out.value = std::max(out.value, v / std::log(t));
    }
    return out;
}

void ComparisonReport::add(std::string point, double measured_log, double ln_bound_log) {
    ComparisonRow r;
    r.point = std::move(point);
    r.measured_log = measured_log;
    r.ln_bound_log = ln_bound_log;
    if (measured_log <= 0.0) {
        r.ln_abs_margin = log_add(ln_bound_log, safe_log(-measured_log));
    } else {
        const double lm = std::log(measured_log);
        if (ln_bound_log >= lm) {
            r.ln_abs_margin = log_sub(ln_bound_log, lm);
        } else {
            r.margin_negative = true;
            r.ln_abs_margin = log_sub(lm, ln_bound_log);
        }
    }
    if (std::isnan(measured_log) || std::isnan(ln_bound_log)) r.margin_negative = true;
    pass = pass && !r.margin_negative;
    rows.push_back(std::move(r));
}

std::string ComparisonReport::csv() const {
    std::string out = "point,measured_log,bound_log,margin\n";
    for (const ComparisonRow& r : rows) {
        out += r.point + "," + format_double(r.measured_log) + "," + format_exp(r.ln_bound_log) + "," +
               (r.margin_negative ? "-" : "") + format_exp(r.ln_abs_margin) + "\n";
    }
    return out;
}

double measured_log_at(const Approximant& g, std::complex<double> z) {
    const ComplexEval ev = g.eval_complex(z);
    return ev.tail_covered ? ev.log_total_bound : ev.built.log_magnitude;
}

double measured_log_on_circle(const Approximant& g, double t, int angles) {
    if (angles < 1) throw DomainError("need at least one angle");
    double best = kNegInf;
    for (int j = 0; j < angles; ++j) {
        const double th = 2.0 * std::numbers::pi * j / angles;
        best = std::max(best, measured_log_at(g, std::polar(t, th)));
    }
    return best;
}

ComparisonReport compare_thm2(const Approximant& g, const std::vector<double>& ts, const DerivedConstants& dc,
                              int angles, const BoundsOptions& opts) {
    if (g.mode() != Mode::Certified)
        throw PreconditionError("the thm2 envelope applies to certified-mode approximants only");
    if (g.scheme().domain != DomainCase::R) throw PreconditionError("the thm2 envelope needs a case R approximant");
    ComparisonReport rep;
    for (double t : ts)
        rep.add(format_double(t), measured_log_on_circle(g, t, angles), thm2_envelope(t, g.spec(), dc.C, dc.D, opts));
    return rep;
}

ComparisonReport compare_thm3(const Approximant& g, const std::vector<std::complex<double>>& zs,
                              const Thm3Constants& k, const BoundsOptions& opts) {
    if (g.mode() != Mode::Certified)
        throw PreconditionError("the thm3 envelope applies to certified-mode approximants only");
    if (g.scheme().domain != DomainCase::Rpos) throw PreconditionError("the thm3 envelope needs a case Rpos approximant");
    ComparisonReport rep;
    for (auto z : zs) {
        if (std::abs(z) > k.t_max) throw DomainError("sample beyond t_max of the thm3 constants");
        rep.add(format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i",
                measured_log_at(g, z), thm3_envelope(z, k.alpha, g.spec(), k.C, k.D, opts));
    }
    return rep;
}

std::vector<std::complex<double>> sample_region_V(double alpha, double t_max, std::size_t count, unsigned seed) {
    if (!(alpha > 0.0) || !(t_max * t_max > alpha)) throw DomainError("V intersected with |z| <= t_max is empty");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(std::sqrt(alpha), t_max), uy(-t_max, t_max);
    std::vector<std::complex<double>> out;
    out.reserve(count);
    while (out.size() < count) {
        const std::complex<double> z(ux(rng), uy(rng));
        if (in_region_V(z, alpha) && std::abs(z) <= t_max) out.push_back(z);
    }
    return out;
}

}  // namespace whitney
