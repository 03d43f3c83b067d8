#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "whitney/norms.hpp"
#include "whitney/weierstrass.hpp"

namespace whitney {

enum class DomainCase { R, Rpos };

std::string to_string(DomainCase c);
DomainCase domain_case_from_string(const std::string& s);

// The data (f, eps, rho, r) on I = R or I = (0, inf).
struct ProblemSpec {
    JetFn f;
    ScalarFn eps;
    ScalarFn rho;
    std::optional<int> r;  // empty means r = infinity
    DomainCase domain = DomainCase::R;
    double delta = 1.4142135623730951;
    bool f_zero = false;

    // Source expressions when built from text (needed for serialization).
    std::optional<std::string> f_text, eps_text, rho_text;

    static ProblemSpec from_expressions(const Expr& f, const Expr& eps, const Expr& rho, std::optional<int> r,
                                        DomainCase domain, double delta);

    // eps(|t|) in case R, eps(t) in case Rpos; likewise for rho.
    double eps_at(double t) const;
    double rho_at(double t) const;
};

// Exhaustion K_n = [a_n, b_n] with per-ring budgets.
struct RingScheme {
    DomainCase domain = DomainCase::R;
    double delta = 0.0;
    int stages = 0;  // N, the number of stages the scheme was sized for
    std::vector<double> a, b;           // n = 0..N+3
    std::vector<double> eps_n;          // n = 0..N+2
    std::vector<int> r_n;               // n = 0..N+2
    std::vector<double> rho_n;          // n = 0..N+2
    std::vector<long long> k_n;         // n = 0..N+2
    double condition_v_constant = 0.0;  // measured sup (b_n - a_n)/(n+1)

    Interval K(int n) const { return {a.at(n), b.at(n)}; }
    int rings() const { return static_cast<int>(eps_n.size()); }

    // Closed forms valid for every n, independent of the populated range.
    static double a_of(DomainCase c, double delta, long long n);
    static double b_of(DomainCase c, double delta, long long n);
    static double rho_of(DomainCase c, double delta, long long n);
    static long long k_of(DomainCase c, double delta, long long n);

    bool in_U(std::complex<double> z, long long n) const;
    // First n with z in U_n (scanning with closed forms); throws DomainError when z is not in U.
    long long locate(std::complex<double> z) const;
    bool in_domain_U(std::complex<double> z) const;
};

struct SchemeCheck {
    std::string name;
    bool pass;
    std::string detail;
};

// Rings with eps_n = eps(b_{n+1}), r_n = floor(rho(b_{n+1})). Validates the spec on samples.
RingScheme build_scheme(const ProblemSpec& spec, int N, std::size_t validation_samples = 513);

// Rings for a general profile: eps_n is a convex strictly decreasing minorant of the ring minima of eps,
// r_n the running max of floor(max rho) on the ring.
RingScheme build_scheme_from_profile(const ProblemSpec& spec, int N, std::size_t ring_samples = 257);

// Conditions (i)-(iv) on the populated range.
std::vector<SchemeCheck> check_scheme(const RingScheme& s);

}  // namespace whitney
