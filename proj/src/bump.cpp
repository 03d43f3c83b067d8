#include "whitney/bump.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "whitney/errors.hpp"
#include "whitney/logmath.hpp"

namespace whitney {

namespace {

constexpr unsigned kPnTableSize = 41;

class PnTable {
public:
    PnTable() {
        exact_.push_back({0, {BigInt(1)}});
        for (unsigned n = 0; n + 1 < kPnTableSize; ++n) exact_.push_back(next(exact_.back()));
        for (const auto& p : exact_) {
            std::vector<long double> c;
            for (const auto& x : p.coeffs) c.push_back(x.convert_to<long double>());
            fast_.push_back(std::move(c));
        }
    }

    static PnPoly next(const PnPoly& p) {
        // T^2 p' - 2n T p + p
        const std::size_t deg = p.coeffs.size();
        std::vector<BigInt> out(deg + 1, 0);
        for (std::size_t i = 1; i < deg; ++i) out[i + 1] += BigInt(i) * p.coeffs[i];
        for (std::size_t i = 0; i < deg; ++i) {
            out[i + 1] -= 2 * BigInt(p.n) * p.coeffs[i];
            out[i] += p.coeffs[i];
        }
        while (out.size() > 1 && out.back() == 0) out.pop_back();
        return {p.n + 1, std::move(out)};
    }

    std::vector<PnPoly> exact_;
    std::vector<std::vector<long double>> fast_;
};

const PnTable& pn_table() {
    static const PnTable table;
    return table;
}

long double horner(const std::vector<long double>& c, long double x) {
    long double acc = 0.0L;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

}  // namespace

BigInt PnPoly::max_abs_coeff() const {
    BigInt m = 0;
    for (const auto& c : coeffs) m = std::max(m, BigInt(abs(c)));
    return m;
}

long double PnPoly::evaluate(long double T) const {
    long double acc = 0.0L;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * T + coeffs[i].convert_to<long double>();
    return acc;
}

PnPoly pn_poly(unsigned n) {
    const auto& table = pn_table();
    if (n < kPnTableSize) return table.exact_[n];
    PnPoly p = table.exact_.back();
    while (p.n < n) p = PnTable::next(p);
    return p;
}

Jet<double> theta_jet(double t, std::size_t k) {
    Jet<double> j(t, k);
    if (t < kThetaCutoff) return j;
    const auto& table = pn_table();
    const long double tl = t;
    const long double e = std::exp(-1.0L / tl);
    const long double inv_t2 = 1.0L / (tl * tl);
    long double scale = e;
    for (std::size_t n = 0; n <= k; ++n) {
        long double pn = n < kPnTableSize ? horner(table.fast_[n], tl) : pn_poly(n).evaluate(tl);
        j[n] = static_cast<double>(pn * scale);
        scale *= inv_t2;
    }
    return j;
}

Jet<double> alpha_jet(double t, std::size_t k) {
    if (t <= 0.0) return Jet<double>(t, k);
    if (t >= 1.0) return Jet<double>::constant(t, k, 1.0);
    Jet<double> th = theta_jet(t, k);
    Jet<double> ts = theta_jet(1.0 - t, k);
    for (std::size_t n = 1; n <= k; n += 2) ts[n] = -ts[n];
    Jet<double> phi = th + ts;
    return th / phi;
}

double recip_derivs(const Jet<double>& phi, std::size_t n) {
    if (phi.order() < n) throw DomainError("recip_derivs needs jet order >= n");
    if (phi[0] == 0.0) throw DomainError("recip_derivs of a zero value");
    Jet<long double> p(phi.point(), n);
    for (std::size_t i = 0; i <= n; ++i) p[i] = phi[i];
    const long double inv = 1.0L / p[0];
    if (n == 0) return static_cast<double>(inv);
    long double sum = 0.0L;
    Jet<long double> power = p;  // phi^k
    long double inv_pow = inv * inv;  // phi^-(k+1)
    long double binom = static_cast<long double>(n + 1) * n / 2.0L;  // C(n+1, 2)
    for (std::size_t k = 1; k <= n; ++k) {
        long double term = binom * inv_pow * power[n];
        sum += (k % 2 ? -term : term);
        power = power * p;
        inv_pow *= inv;
        binom = binom * static_cast<long double>(n - k) / static_cast<long double>(k + 2);
    }
    return static_cast<double>(sum);
}

BumpSpec BumpSpec::ramp(double a, double b) {
    BumpSpec s;
    s.a = a;
    s.b = b;
    s.validate_ramp();
    return s;
}

BumpSpec BumpSpec::hump(double a, double b, double a_star, double b_star) {
    BumpSpec s{a, b, a_star, b_star};
    s.validate_hump();
    return s;
}

void BumpSpec::validate_ramp() const {
    if (!(a < b)) throw DomainError("ramp requires a < b");
}

void BumpSpec::validate_hump() const {
    if (!(a < b && b < a_star && a_star < b_star)) throw DomainError("hump requires a < b < a* < b*");
}

Jet<double> ramp_jet(const BumpSpec& spec, double t, std::size_t k) {
    spec.validate_ramp();
    const double w = spec.b - spec.a;
    Jet<double> j = alpha_jet((t - spec.a) / w, k);
    Jet<double> out(t, k);
    double scale = 1.0;
    for (std::size_t n = 0; n <= k; ++n) {
        out[n] = j[n] * scale;
        scale /= w;
    }
    return out;
}

Jet<double> hump_jet(const BumpSpec& spec, double t, std::size_t k) {
    spec.validate_hump();
    if (t <= spec.b) {
        const double e = spec.eps();
        return ramp_jet(BumpSpec::ramp(spec.a + e, spec.b - e), t, k);
    }
    const double e = spec.eps_star();
    Jet<double> r = ramp_jet(BumpSpec::ramp(spec.a_star + e, spec.b_star - e), t, k);
    Jet<double> out = -r;
    out[0] += 1.0;
    return out;
}

double DerivBoundCert::C() const { return std::exp(log_C); }
double DerivBoundCert::sharper() const { return std::exp(log_sharper); }

DerivBoundCert derivative_bound(unsigned n) {
    DerivBoundCert cert;
    cert.n = n;
    if (n == 0) {
        cert.log_C = 0.0;
        cert.log_sharper = 0.0;
        return cert;
    }
    const double ln = std::log(static_cast<double>(n));
    cert.log_C = std::log(kBumpC) + kBumpD * n * ln;
    cert.log_sharper = (7.0 * n + 4.0) * std::numbers::ln2 + 9.0 * n * ln;
    return cert;
}

double log_hump_derivative_bound(const BumpSpec& spec, unsigned n) {
    spec.validate_hump();
    const double w = std::min(spec.b - spec.a, spec.b_star - spec.a_star);
    return n * std::log(3.0) + derivative_bound(n).log_C - n * std::log(w);
}

}  // namespace whitney
