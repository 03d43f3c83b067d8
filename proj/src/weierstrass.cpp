#include "whitney/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whitney/errors.hpp"
#include "whitney/logmath.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

namespace {

constexpr double kPanelWindow = 6.0;    // boundary distance (in units of 1/sqrt(lambda)) that triggers panels
constexpr double kPanelRange = 10.0;    // substituted range covered by panels
constexpr double kDirectLimit = 700.0;  // lambda y^2 up to which complex values are computed
const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

bool meets(std::span<const Interval> pieces, double lo, double hi) {
    for (const auto& p : pieces)
        if (p.hi >= lo && p.lo <= hi) return true;
    return false;
}

// log erfc(x) for any real x.
double log_erfc(double x) {
    if (x < 20.0) return std::log(std::erfc(x));
    const double x2 = x * x;
    double series = 1.0 - 1.0 / (2.0 * x2) + 3.0 / (4.0 * x2 * x2) - 15.0 / (8.0 * x2 * x2 * x2);
    return -x2 - std::log(x * std::sqrt(std::numbers::pi)) + std::log(series);
}

}  // namespace

SupportedFn make_supported(JetFn eval, double lo, double hi) {
    if (!(hi > lo)) throw DomainError("support requires hi > lo");
    SupportedFn f;
    f.eval = std::move(eval);
    f.support = {lo, hi};
    return f;
}

double lambda_for_eps(double norm_m, double norm_m1, double eps) {
    if (!(eps > 0.0)) throw DomainError("lambda_for_eps requires eps > 0");
    if (norm_m < 0.0 || norm_m1 < 0.0) throw DomainError("norms must be nonnegative");
    const double r = norm_m1 / eps;
    return 8.0 * r * r * log_plus(2.0 * std::numbers::sqrt2 * norm_m / eps);
}

double lambda_simple_form(double norm_m1, double eps) {
    if (!(eps > 0.0)) throw DomainError("lambda_simple_form requires eps > 0");
    const double r = norm_m1 / eps;
    return 16.0 * std::numbers::sqrt2 * r * r * r + 1.0;
}

Jet<double> transform_jet(const SupportedFn& f, double lambda, double t, std::size_t k, QuadratureRule* used) {
    if (!(lambda > 0.0)) throw DomainError("transform requires lambda > 0");
    if (static_cast<int>(k) > f.smoothness) throw DomainError("transform order exceeds smoothness");
    Jet<double> out(t, k);
    const double sigma = 1.0 / std::sqrt(lambda);  // 0 when lambda = inf
    const auto& gh = gauss_hermite64();
    const double umax = gh.x.back();
    const auto pieces = f.support_pieces();
    if (used) *used = {QuadratureRule::Kind::Pruned, 0, lambda};
    if (f.identically_zero || !meets(pieces, t - umax * sigma, t + umax * sigma)) return out;

    bool near_boundary = false;
    for (const auto& p : pieces)
        if (std::abs(t - p.lo) < kPanelWindow * sigma || std::abs(t - p.hi) < kPanelWindow * sigma)
            near_boundary = true;

    if (!near_boundary || sigma == 0.0) {
        // Nodes that round to the same abscissa are merged so each distinct point is evaluated once.
        std::size_t i = 0;
        std::size_t evaluated = 0;
        while (i < gh.x.size()) {
            const double s = t + gh.x[i] * sigma;
            double w = gh.w[i];
            std::size_t j = i + 1;
            while (j < gh.x.size() && t + gh.x[j] * sigma == s) w += gh.w[j++];
            i = j;
            bool inside = false;
            for (const auto& p : pieces)
                if (p.contains(s)) inside = true;
            if (!inside) continue;
            Jet<double> v = f.eval(s, k);
            ++evaluated;
            for (std::size_t n = 0; n <= k; ++n) out[n] += w * v[n];
        }
        out *= kInvSqrtPi;
        if (used) *used = {QuadratureRule::Kind::GaussHermiteSubstituted, evaluated, lambda};
        return out;
    }

    std::size_t evaluations = 0;
    VecIntegrand g = [&](double u, std::span<double> r) {
        Jet<double> v = f.eval(t + u * sigma, k);
        ++evaluations;
        const double w = std::exp(-u * u) * kInvSqrtPi;
        for (std::size_t n = 0; n <= k; ++n) r[n] = w * v[n];
    };
    for (const auto& p : pieces) {
        double ua = std::max(-kPanelRange, (p.lo - t) / sigma);
        double ub = std::min(kPanelRange, (p.hi - t) / sigma);
        if (!(ub > ua)) continue;
        auto part = integrate_panels(g, k + 1, ua, ub);
        for (std::size_t n = 0; n <= k; ++n) out[n] += part[n];
    }
    if (used) *used = {QuadratureRule::Kind::AdaptivePanel, evaluations, lambda};
    return out;
}

double log_gauss_mass(double a, double b) {
    if (!(b > a)) return kNegInf;
    if (a >= 0.0) {
        // (1/2)(erfc(a) - erfc(b))
        double la = log_erfc(a), lb = log_erfc(b);
        return std::log(0.5) + log_sub(la, lb);
    }
    if (b <= 0.0) return log_gauss_mass(-b, -a);
    return std::log(0.5 * (std::erf(b) - std::erf(a)));
}

LogComplexValue transform_complex(const SupportedFn& f, double lambda, std::complex<double> z) {
    if (!(lambda > 0.0)) throw DomainError("transform requires lambda > 0");
    LogComplexValue out;
    if (f.identically_zero) {
        out.phase_known = true;
        out.value = std::complex<double>(0.0, 0.0);
        return out;
    }
    const double x = z.real(), y = z.imag();
    if (y == 0.0) {
        double v = transform_jet(f, lambda, x, 0)[0];
        out.phase_known = true;
        out.value = std::complex<double>(v, 0.0);
        out.log_magnitude = safe_log(std::abs(v));
        return out;
    }
    const double ly2 = lambda * y * y;
    const auto pieces = f.support_pieces();
    if (ly2 <= kDirectLimit) {
        const double sq = std::sqrt(lambda);
        const double omega = sq * y;
        // (1/sqrt(pi)) int f(x + u/sqrt(lambda)) e^{-u^2} e^{2 i omega u} du, times e^{lambda y^2}
        VecIntegrand g = [&](double u, std::span<double> r) {
            double fv = f.eval(x + u / sq, 0)[0];
            double w = std::exp(-u * u) * kInvSqrtPi * fv;
            r[0] = w * std::cos(2.0 * omega * u);
            r[1] = w * std::sin(2.0 * omega * u);
        };
        PanelOptions opts;
        opts.abs_tol = 1e-17;
        opts.rel_tol = 1e-13;
        double re = 0.0, im = 0.0;
        for (const auto& p : pieces) {
            double ua = std::max(-kPanelRange, (p.lo - x) * sq);
            double ub = std::min(kPanelRange, (p.hi - x) * sq);
            if (!(ub > ua)) continue;
            opts.initial_panels = static_cast<int>(std::ceil((ub - ua) * (1.0 + std::abs(omega)) / 0.5)) + 1;
            auto part = integrate_panels(g, 2, ua, ub, opts);
            re += part[0];
            im += part[1];
        }
        const double mag = std::hypot(re, im);
        out.phase_known = true;
        out.log_magnitude = safe_log(mag) + ly2;
        const double scale = std::exp(ly2);
        if (std::isfinite(re * scale) && std::isfinite(im * scale)) out.value = std::complex<double>(re * scale, im * scale);
        return out;
    }
    double sup = 0.0;
    if (f.sup) {
        sup = *f.sup;
    } else {
        SamplingOptions opts;
        sup = sup_norm(f.eval, f.support.lo, f.support.hi, 0, opts).inflated();
    }
    // |W f(z)| <= sup |f| e^{lambda y^2} * (Gaussian mass of the support around x)
    const double sq = std::sqrt(lambda);
    double lm = kNegInf;
    for (const auto& p : pieces) lm = log_add(lm, log_gauss_mass((p.lo - x) * sq, (p.hi - x) * sq));
    out.log_magnitude = safe_log(sup) + ly2 + std::min(lm, 0.0);
    out.phase_known = false;
    return out;
}

CertifyReport certify_approx(const SupportedFn& f, int m, double eps, double lambda, const SamplingOptions& norm_opts,
                             std::size_t grid_points) {
    if (!(eps > 0.0)) throw DomainError("certify_approx requires eps > 0");
    if (m < 0) throw DomainError("certify_approx requires m >= 0");
    CertifyReport rep;
    rep.m = m;
    rep.eps = eps;
    rep.lambda = lambda;
    rep.grid_points = grid_points;
    rep.per_order_deviation.assign(m + 1, 0.0);
    if (!f.identically_zero) {
        rep.norm = sup_norm(f.eval, f.support.lo, f.support.hi, m + 1, norm_opts);
        rep.threshold = lambda_for_eps(rep.norm.up_to(m).inflated(), rep.norm.inflated(), eps);
    }
    if (!(lambda > rep.threshold) || !(lambda > 0.0))
        throw PreconditionError("lambda " + format_double(lambda) + " does not exceed lambda(eps) = " +
                                format_double(rep.threshold));
    const double lo = f.support.lo - 3.0, hi = f.support.hi + 3.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        Jet<double> w = transform_jet(f, lambda, t, m);
        Jet<double> v = f.identically_zero ? Jet<double>(t, m) : f.eval(t, m);
        for (int n = 0; n <= m; ++n)
            rep.per_order_deviation[n] = std::max(rep.per_order_deviation[n], std::abs(w[n] - v[n]));
    }
    rep.max_deviation = *std::max_element(rep.per_order_deviation.begin(), rep.per_order_deviation.end());
    rep.pass = rep.max_deviation <= eps;
    return rep;
}

}  // namespace whitney
