#include "whitney/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whitney/bump.hpp"
#include "whitney/combinatorics.hpp"
#include "whitney/errors.hpp"
#include "whitney/logmath.hpp"

namespace whitney {

namespace {

constexpr double kE = std::numbers::e;

Jet<double> mobius_inverse_jet(double s, std::size_t k) {
    Jet<double> u = Jet<double>::variable(s, k);
    return u / (sqrt(u * u + 1.0) + 1.0);
}

Jet<double> halfline_inverse_jet(double s, std::size_t k) {
    Jet<double> u = Jet<double>::variable(s, k);
    Jet<double> r = sqrt(u * u + 4.0);
    if (s >= 0.0) return (u + r) * 0.5;
    return 2.0 / (r - u);
}

}  // namespace

DomainMap DomainMap::affine(double a, double b) {
    if (!(b > a)) throw DomainError("affine map requires a < b");
    return {MapKind::Affine, (b - a) / 2.0, (a + b) / 2.0};
}

DomainMap DomainMap::mobius() { return {MapKind::MobiusBounded, 1.0, 0.0}; }
DomainMap DomainMap::halfline() { return {MapKind::HalfLine, 1.0, 0.0}; }

std::complex<double> DomainMap::forward(std::complex<double> z) const {
    switch (kind) {
        case MapKind::Affine:
            return alpha * z + shift;
        case MapKind::MobiusBounded:
            if (z == 1.0 || z == -1.0) throw DomainError("Phi has poles at +-1");
            return 2.0 * z / (1.0 - z * z);
        case MapKind::HalfLine:
            if (z == 0.0) throw DomainError("Psi has a pole at 0");
            return z - 1.0 / z;
    }
    return z;
}

double DomainMap::forward(double t) const {
    switch (kind) {
        case MapKind::Affine:
            return alpha * t + shift;
        case MapKind::MobiusBounded:
            if (!(std::abs(t) < 1.0)) throw DomainError("Phi is evaluated on (-1, 1)");
            return 2.0 * t / ((1.0 - t) * (1.0 + t));
        case MapKind::HalfLine:
            if (!(t > 0.0)) throw DomainError("psi is evaluated on (0, inf)");
            return t - 1.0 / t;
    }
    return t;
}

double DomainMap::inverse(double s) const {
    switch (kind) {
        case MapKind::Affine:
            return (s - shift) / alpha;
        case MapKind::MobiusBounded:
            return mobius_inverse(s);
        case MapKind::HalfLine:
            return halfline_inverse(s);
    }
    return s;
}

std::complex<double> DomainMap::inverse(std::complex<double> s) const {
    if (kind != MapKind::Affine) throw DomainError("complex inverse is only provided for the affine map");
    return (s - shift) / alpha;
}

Jet<double> DomainMap::forward_jet(double t, std::size_t k) const {
    Jet<double> x = Jet<double>::variable(t, k);
    switch (kind) {
        case MapKind::Affine:
            return x * alpha + shift;
        case MapKind::MobiusBounded: {
            if (!(std::abs(t) < 1.0)) throw DomainError("Phi is evaluated on (-1, 1)");
            Jet<double> one = Jet<double>::constant(t, k, 1.0);
            return (x * 2.0) / (one - x * x);
        }
        case MapKind::HalfLine:
            if (!(t > 0.0)) throw DomainError("psi is evaluated on (0, inf)");
            return x - 1.0 / x;
    }
    return x;
}

Jet<double> DomainMap::inverse_jet(double s, std::size_t k) const {
    switch (kind) {
        case MapKind::Affine:
            return (Jet<double>::variable(s, k) - shift) / alpha;
        case MapKind::MobiusBounded:
            return mobius_inverse_jet(s, k);
        case MapKind::HalfLine:
            return halfline_inverse_jet(s, k);
    }
    return Jet<double>::variable(s, k);
}

std::vector<double> DomainMap::poles() const {
    switch (kind) {
        case MapKind::Affine:
            return {};
        case MapKind::MobiusBounded:
            return {-1.0, 1.0};
        case MapKind::HalfLine:
            return {0.0};
    }
    return {};
}

double mobius_inverse(double s) {
    if (std::isinf(s)) return s > 0 ? 1.0 : -1.0;
    return s / (1.0 + std::sqrt(1.0 + s * s));
}

double halfline_inverse(double s) {
    const double r = std::sqrt(s * s + 4.0);
    return s >= 0.0 ? (s + r) / 2.0 : 2.0 / (r - s);
}

double mobius_derivative(unsigned n, double t) {
    if (!(std::abs(t) < 1.0)) throw DomainError("Phi is evaluated on (-1, 1)");
    if (n == 0) return 2.0 * t / (1.0 - t * t);
    const double f = std::tgamma(n + 1.0);
    const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
    return f * (std::pow(1.0 - t, -(double)(n + 1)) + sign * std::pow(t + 1.0, -(double)(n + 1)));
}

double psi_derivative(unsigned n, double t) {
    if (!(t > 0.0)) throw DomainError("psi is evaluated on (0, inf)");
    if (n == 0) return t - 1.0 / t;
    if (n == 1) return 1.0 + 1.0 / (t * t);
    return std::tgamma(n + 1.0) / std::pow(-t, n + 1);
}

double phin_bound(unsigned n, double t) {
    if (!(std::abs(t) < 1.0)) throw DomainError("phin_bound requires |t| < 1");
    return std::tgamma(n + 1.0) * std::ldexp(1.0, n + 1) / std::pow(1.0 - t * t, n + 1);
}

double eps_star_bounded(const ScalarFn& eps, const ScalarFn& rho, double t) {
    if (!(std::abs(t) < 1.0)) throw DomainError("eps_star_bounded requires |t| < 1");
    const double r = rho(t);
    const double e = eps(t);
    if (r == 0.0) return e;
    const double inner = std::log(4.0 / ((r + 1.0) * kE * kE)) +
                         (r + 1.0) * std::log(kE * (1.0 - t * t) / (2.0 * (r + 1.0)));
    return e * std::exp(r * inner);
}

double eps_star_bounded(const Expr& eps, const Expr& rho, double t) {
    return eps_star_bounded(scalar_fn(eps), scalar_fn(rho), t);
}

double log_beta_halfline(double rho, double t) {
    if (!(t > 0.0)) throw DomainError("beta requires t > 0");
    const double rp = rho + kE * t;
    const double term = -(rp + 1.0) * std::log(t) + std::log(kE * kE / 4.0) + (rp + 2.0) * std::log((rp + 2.0) / kE);
    return log_add(0.0, term);
}

double eps_star_halfline(const ScalarFn& eps, const ScalarFn& rho, double t) {
    if (!(t > 0.0)) throw DomainError("eps_star_halfline requires t > 0");
    const double r = rho(t);
    const double e = eps(t);
    if (r == 0.0) return e;
    return e * std::exp(-r * (std::log(r) + log_beta_halfline(r, t)));
}

double eps_star_halfline(const Expr& eps, const Expr& rho, double t) {
    return eps_star_halfline(scalar_fn(eps), scalar_fn(rho), t);
}

ComposedApproximant::ComposedApproximant(Approximant gstar, std::vector<Step> steps)
    : gstar_(std::move(gstar)), steps_(std::move(steps)) {}

double ComposedApproximant::map_point(double t) const {
    for (const auto& s : steps_) t = s.use_inverse ? s.map.inverse(t) : s.map.forward(t);
    return t;
}

std::complex<double> ComposedApproximant::map_point(std::complex<double> z) const {
    for (const auto& s : steps_) z = s.use_inverse ? s.map.inverse(z) : s.map.forward(z);
    return z;
}

Jet<double> ComposedApproximant::map_jet(double t, std::size_t k) const {
    Jet<double> x = Jet<double>::variable(t, k);
    for (const auto& s : steps_) {
        Jet<double> m = s.use_inverse ? s.map.inverse_jet(x.value(), k) : s.map.forward_jet(x.value(), k);
        x = compose(m, x);
    }
    return x;
}

Jet<double> ComposedApproximant::eval_jet(double t, std::size_t k) const {
    const Jet<double> u = map_jet(t, k);
    const Interval P = gstar_.protected_region();
    if (!P.contains(u.value()))
        throw ProtectedRegionError("image " + format_double(u.value()) + " of t = " + format_double(t) +
                                       " lies outside the protected region [" + format_double(P.lo) + ", " +
                                       format_double(P.hi) + "]",
                                   P.lo, P.hi);
    const Jet<double> g = gstar_.eval_jet_unchecked(u.value(), k);
    Jet<double> out(t, k);
    out[0] = g[0];
    for (unsigned n = 1; n <= k; ++n) out[n] = faa_di_bruno(g, u, n);
    return out;
}

ComplexEval ComposedApproximant::eval_complex(std::complex<double> z) const {
    const std::complex<double> u = map_point(z);
    const Interval P = gstar_.protected_region();
    if (!P.contains(u.real()))
        throw ProtectedRegionError("image real part " + format_double(u.real()) + " lies outside the protected region",
                                   P.lo, P.hi);
    return gstar_.eval_complex(u);
}

ComposedVerifyReport ComposedApproximant::verify(const JetFn& f, const ScalarFn& eps, const ScalarFn& rho,
                                                 const std::vector<double>& grid, int kmax) const {
    ComposedVerifyReport rep;
    for (double t : grid) {
        const int korder = std::min(kmax, static_cast<int>(std::floor(rho(t) + 1e-12)));
        if (korder < 0) continue;
        const Jet<double> g = eval_jet(t, korder);
        const Jet<double> fv = f(t, korder);
        const double e = eps(t);
        for (int k = 0; k <= korder; ++k) {
            ComposedVerifyRow row{t, k, std::abs(fv[k] - g[k]), e, false};
            row.pass = row.deviation < e;
            rep.pass = rep.pass && row.pass;
            rep.worst_ratio = std::max(rep.worst_ratio, row.deviation / e);
            rep.rows.push_back(row);
        }
    }
    return rep;
}

ComposedApproximant compose_approximant(const Approximant& gstar, const DomainMap& map) {
    return ComposedApproximant(gstar, {{map, false}});
}

namespace {

ProblemSpec chain_spec(JetFn fstar, ScalarFn profile_eps, ScalarFn profile_rho, std::optional<int> r, bool f_zero,
                       double delta) {
    ProblemSpec p;
    p.f = std::move(fstar);
    // symmetric profiles so that eps(|s|) and rho(|s|) are the binding values on each ring
    p.eps = [e = std::move(profile_eps)](double s) { return std::min(e(s), e(-s)); };
    p.rho = [q = std::move(profile_rho)](double s) { return std::max(q(s), q(-s)); };
    p.r = r;
    p.domain = DomainCase::R;
    p.delta = delta;
    p.f_zero = f_zero;
    return p;
}

}  // namespace

ComposedApproximant build_bounded_chain(const Expr& f, const Expr& eps, const Expr& rho, std::optional<int> r, double a,
                                        double b, const ChainOptions& opts) {
    const DomainMap aff = DomainMap::affine(a, b);
    const double beta = std::min(aff.alpha, 1.0);
    // f_0 = f o phi, eps_0 = beta^{rho o phi} eps o phi, rho_0 = rho o phi on (-1, 1)
    ScalarFn eps0 = [eps, rho, aff, beta](double x) {
        const double t = aff.forward(x);
        return std::pow(beta, rho.eval(t)) * eps.eval(t);
    };
    ScalarFn rho0 = [rho, aff](double x) { return rho.eval(aff.forward(x)); };
    JetFn fstar = [f, aff](double s, std::size_t k) {
        Jet<double> x = mobius_inverse_jet(s, k);
        Jet<double> t = x * aff.alpha + aff.shift;
        return compose(f.jet(t.value(), k), t);
    };
    ScalarFn E = [eps0, rho0](double s) { return eps_star_bounded(eps0, rho0, mobius_inverse(s)); };
    ScalarFn R = [rho0](double s) { return rho0(mobius_inverse(s)); };
    ProblemSpec spec = chain_spec(fstar, E, R, r, f.is_zero_literal(), opts.delta);
    BuildOptions bo = opts.build;
    bo.profile_scheme = true;
    Approximant gstar = Approximant::build(spec, opts.stages, bo);
    return ComposedApproximant(gstar, {{aff, true}, {DomainMap::mobius(), false}});
}

ComposedApproximant build_halfline_chain(const Expr& f, const Expr& eps, const Expr& rho, std::optional<int> r,
                                         const ChainOptions& opts) {
    JetFn fstar = [f](double s, std::size_t k) {
        Jet<double> x = halfline_inverse_jet(s, k);
        return compose(f.jet(x.value(), k), x);
    };
    ScalarFn ef = scalar_fn(eps), rf = scalar_fn(rho);
    ScalarFn E = [ef, rf](double s) { return eps_star_halfline(ef, rf, halfline_inverse(s)); };
    ScalarFn R = [rf](double s) { return rf(halfline_inverse(s)); };
    ProblemSpec spec = chain_spec(fstar, E, R, r, f.is_zero_literal(), opts.delta);
    BuildOptions bo = opts.build;
    bo.profile_scheme = true;
    Approximant gstar = Approximant::build(spec, opts.stages, bo);
    return ComposedApproximant(gstar, {{DomainMap::halfline(), false}});
}

JetFn extend_halfopen(const JetFn& f, double alpha, double beta, double delta) {
    if (!(delta > 0.0)) throw DomainError("extend_halfopen requires delta > 0");
    if (!(beta > alpha)) throw DomainError("extend_halfopen requires alpha < beta");
    const BumpSpec ramp = BumpSpec::ramp(alpha - delta / 2.0, alpha);
    return [f, ramp, alpha, beta](double t, std::size_t k) {
        if (!(t < beta)) throw DomainError("extension is defined on (-inf, beta)");
        if (t <= ramp.a) return Jet<double>(t, k);
        if (t >= alpha) return f(t, k);
        return f(t, k) * ramp_jet(ramp, t, k);
    };
}

JetFn extend_halfopen(const Expr& f, double alpha, double beta, double delta) {
    return extend_halfopen(jet_fn(f), alpha, beta, delta);
}

}  // namespace whitney
