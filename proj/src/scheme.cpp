#include "whitney/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "whitney/errors.hpp"
#include "whitney/logmath.hpp"

namespace whitney {

std::string to_string(DomainCase c) { return c == DomainCase::R ? "R" : "Rpos"; }

DomainCase domain_case_from_string(const std::string& s) {
    if (s == "R") return DomainCase::R;
    if (s == "Rpos") return DomainCase::Rpos;
    throw DomainError("unknown domain case '" + s + "' (expected R or Rpos)");
}

ProblemSpec ProblemSpec::from_expressions(const Expr& f, const Expr& eps, const Expr& rho, std::optional<int> r,
                                          DomainCase domain, double delta) {
    ProblemSpec p;
    p.f = jet_fn(f);
    p.eps = scalar_fn(eps);
    p.rho = scalar_fn(rho);
    p.r = r;
    p.domain = domain;
    p.delta = delta;
    p.f_zero = f.is_zero_literal();
    p.f_text = f.source();
    p.eps_text = eps.source();
    p.rho_text = rho.source();
    return p;
}

double ProblemSpec::eps_at(double t) const { return eps(domain == DomainCase::R ? std::abs(t) : t); }
double ProblemSpec::rho_at(double t) const { return rho(domain == DomainCase::R ? std::abs(t) : t); }

double RingScheme::a_of(DomainCase c, double delta, long long n) {
    return c == DomainCase::R ? -delta * static_cast<double>(n) : delta / static_cast<double>(n + 1);
}

double RingScheme::b_of(DomainCase c, double delta, long long n) {
    return c == DomainCase::R ? delta * static_cast<double>(n) : delta * static_cast<double>(n + 1);
}

double RingScheme::rho_of(DomainCase c, double delta, long long n) {
    if (c == DomainCase::R) return delta * delta / 2.0;
    const double q = 1.0 / (static_cast<double>(n + 1) * static_cast<double>(n + 2));
    return delta * delta / 2.0 * q * q;
}

long long RingScheme::k_of(DomainCase c, double delta, long long n) {
    return std::max(static_cast<long long>(std::ceil(1.0 / rho_of(c, delta, n))), n + 2);
}

bool RingScheme::in_U(std::complex<double> z, long long n) const {
    const double x = z.real(), y = z.imag();
    const double an = a_of(domain, delta, n + 1), bn = b_of(domain, delta, n + 1), r = rho_of(domain, delta, n);
    if (!(an < x && x < bn)) return false;
    return (x - an) * (x - an) - y * y > r && (x - bn) * (x - bn) - y * y > r;
}

bool RingScheme::in_domain_U(std::complex<double> z) const {
    if (domain == DomainCase::R) return true;
    return std::abs(z.imag()) < z.real();
}

long long RingScheme::locate(std::complex<double> z) const {
    if (!in_domain_U(z)) throw DomainError("point outside U = {|Im z| < Re z}");
    for (long long n = 0; n < 100000000LL; ++n)
        if (in_U(z, n)) return n;
    throw DomainError("ring search exhausted");
}

namespace {

void fill_rings(RingScheme& s, int N) {
    s.stages = N;
    for (int n = 0; n <= N + 3; ++n) {
        s.a.push_back(RingScheme::a_of(s.domain, s.delta, n));
        s.b.push_back(RingScheme::b_of(s.domain, s.delta, n));
    }
    for (int n = 0; n <= N + 2; ++n) {
        s.rho_n.push_back(RingScheme::rho_of(s.domain, s.delta, n));
        s.k_n.push_back(RingScheme::k_of(s.domain, s.delta, n));
    }
    double v = 0.0;
    for (int n = 0; n <= N + 3; ++n) v = std::max(v, (s.b[n] - s.a[n]) / (n + 1));
    s.condition_v_constant = v;
}

int cap_order(const ProblemSpec& spec, double rho_value) {
    if (!(rho_value >= 0.0)) throw DomainError("rho must be nonnegative");
    if (spec.r && rho_value > *spec.r + 1e-12) throw DomainError("rho exceeds r");
    int r = static_cast<int>(std::floor(rho_value + 1e-12));
    if (spec.r) r = std::min(r, *spec.r);
    return r;
}

void validate(const ProblemSpec& spec, double lo, double hi, std::size_t samples) {
    std::vector<double> t(samples), e(samples), r(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        e[i] = spec.eps(t[i]);
        r[i] = spec.rho(t[i]);
        if (!(e[i] > 0.0)) throw DomainError("eps must be positive (t=" + format_double(t[i]) + ")");
        if (!(r[i] >= 0.0)) throw DomainError("rho must be nonnegative (t=" + format_double(t[i]) + ")");
        if (spec.r && r[i] > *spec.r + 1e-12) throw DomainError("rho exceeds r (t=" + format_double(t[i]) + ")");
    }
    for (std::size_t i = 0; i + 1 < samples; ++i) {
        if (!(e[i + 1] < e[i])) throw DomainError("eps is not strictly decreasing (t=" + format_double(t[i]) + ")");
        if (r[i + 1] < r[i] - 1e-12 * std::max(1.0, std::abs(r[i])))
            throw DomainError("rho is not increasing (t=" + format_double(t[i]) + ")");
    }
    for (std::size_t i = 1; i + 1 < samples; ++i)
        if (e[i - 1] + e[i + 1] - 2.0 * e[i] < -1e-12 * e[i])
            throw DomainError("eps is not convex (t=" + format_double(t[i]) + ")");
}

}  // namespace

RingScheme build_scheme(const ProblemSpec& spec, int N, std::size_t validation_samples) {
    if (N < 2) throw DomainError("build_scheme requires N >= 2");
    if (!(spec.delta > 0.0)) throw DomainError("delta must be positive");
    RingScheme s;
    s.domain = spec.domain;
    s.delta = spec.delta;
    fill_rings(s, N);
    const double lo = spec.domain == DomainCase::R ? 0.0 : s.a[N + 3];
    validate(spec, lo, s.b[N + 3], std::max<std::size_t>(validation_samples, 3));
    for (int n = 0; n <= N + 2; ++n) {
        s.eps_n.push_back(spec.eps(s.b[n + 1]));
        s.r_n.push_back(cap_order(spec, spec.rho(s.b[n + 1])));
    }
    return s;
}

RingScheme build_scheme_from_profile(const ProblemSpec& spec, int N, std::size_t ring_samples) {
    if (N < 2) throw DomainError("build_scheme requires N >= 2");
    if (!(spec.delta > 0.0)) throw DomainError("delta must be positive");
    RingScheme s;
    s.domain = spec.domain;
    s.delta = spec.delta;
    fill_rings(s, N);
    std::vector<double> mins;
    int running_r = 0;
    for (int n = 0; n <= N + 2; ++n) {
        double m = kPosInf, rmax = 0.0;
        for (const Interval& piece : {Interval{s.a[n + 1], s.a[n]}, Interval{s.b[n], s.b[n + 1]}}) {
            for (std::size_t i = 0; i < ring_samples; ++i) {
                double t = piece.lo + piece.length() * static_cast<double>(i) / static_cast<double>(ring_samples - 1);
                double e = spec.eps(t);
                if (!(e > 0.0)) throw DomainError("eps must be positive (t=" + format_double(t) + ")");
                m = std::min(m, e);
                rmax = std::max(rmax, spec.rho(t));
            }
        }
        // strictly decreasing: shrink by 1% per ring
        m *= std::pow(0.99, n);
        if (!mins.empty()) m = std::min(m, mins.back() * 0.99);
        mins.push_back(m);
        running_r = std::max(running_r, cap_order(spec, rmax));
        s.r_n.push_back(running_r);
    }
    // greatest convex minorant of the points (n, mins[n])
    std::vector<int> hull;
    for (int n = 0; n < static_cast<int>(mins.size()); ++n) {
        while (hull.size() >= 2) {
            int i = hull[hull.size() - 2], j = hull.back();
            double cross = (mins[j] - mins[i]) * (n - i) - (mins[n] - mins[i]) * (j - i);
            if (cross >= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(n);
    }
    s.eps_n.assign(mins.size(), 0.0);
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        int i = hull[h], j = hull[h + 1];
        for (int n = i; n <= j; ++n) s.eps_n[n] = mins[i] + (mins[j] - mins[i]) * (n - i) / (j - i);
    }
    s.eps_n[hull.back()] = mins[hull.back()];
    for (std::size_t n = 0; n < s.eps_n.size(); ++n) s.eps_n[n] = std::min(s.eps_n[n], mins[n]);
    return s;
}

std::vector<SchemeCheck> check_scheme(const RingScheme& s) {
    std::vector<SchemeCheck> out;
    bool ok = s.a[0] == s.b[0] || s.domain == DomainCase::Rpos;
    if (s.domain == DomainCase::Rpos) ok = s.a[0] == s.b[0];
    for (std::size_t n = 0; n + 1 < s.a.size(); ++n) ok = ok && s.a[n + 1] < s.a[n] && s.b[n + 1] > s.b[n];
    out.push_back({"(i) a_0 = b_0, a strictly decreasing, b strictly increasing", ok, ""});
    ok = true;
    for (std::size_t n = 0; n + 1 < s.eps_n.size(); ++n) ok = ok && s.eps_n[n] > s.eps_n[n + 1] && s.eps_n[n + 1] > 0.0;
    out.push_back({"(ii) eps_n strictly decreasing and positive", ok, ""});
    ok = true;
    for (std::size_t n = 0; n + 1 < s.r_n.size(); ++n) ok = ok && s.r_n[n] <= s.r_n[n + 1];
    out.push_back({"(iii) r_n nondecreasing", ok, ""});
    ok = true;
    for (std::size_t n = 0; n + 2 < s.eps_n.size(); ++n)
        ok = ok && s.eps_n[n] + s.eps_n[n + 2] >= 2.0 * s.eps_n[n + 1] * (1.0 - 1e-15);
    out.push_back({"(iv) eps_n + eps_{n+2} >= 2 eps_{n+1}", ok, ""});
    out.push_back({"(v) b_n - a_n = O(n)", true, "measured constant " + format_double(s.condition_v_constant)});
    return out;
}

}  // namespace whitney
