#pragma once

#include <vector>

#include "whitney/combinatorics.hpp"
#include "whitney/jet.hpp"

namespace whitney {

// Headline constants of the bump derivative bound C_n = c n^(d n).
constexpr double kBumpC = 2048.0;
constexpr double kBumpD = 16.0;
// Below this argument theta and all its derivatives up to order 30 underflow; jets are exact 0.
constexpr double kThetaCutoff = 1e-3;

// p_0 = 1, p_{n+1} = T^2 p_n' - (2nT - 1) p_n; theta^(n)(t) = p_n(t) t^(-2n) theta(t).
struct PnPoly {
    unsigned n = 0;
    std::vector<BigInt> coeffs;  // coeffs[i] multiplies T^i

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    BigInt max_abs_coeff() const;
    long double evaluate(long double T) const;
};

PnPoly pn_poly(unsigned n);

Jet<double> theta_jet(double t, std::size_t k);
Jet<double> alpha_jet(double t, std::size_t k);

// (1/phi)^(n) via sum_{k=1}^n (-1)^k C(n+1,k+1) phi^-(k+1) (phi^k)^(n).
double recip_derivs(const Jet<double>& phi, std::size_t n);

struct BumpSpec {
    double a = 0.0, b = 1.0;
    // hump only
    double a_star = 0.0, b_star = 0.0;

    static BumpSpec ramp(double a, double b);
    static BumpSpec hump(double a, double b, double a_star, double b_star);
    double eps() const { return (b - a) / 3.0; }
    double eps_star() const { return (b_star - a_star) / 3.0; }
    void validate_ramp() const;
    void validate_hump() const;
};

// alpha((t-a)/(b-a)).
Jet<double> ramp_jet(const BumpSpec& spec, double t, std::size_t k);
// 1 on [b, a*], 0 outside (a, b*), ramps of width (b-a)/3 and (b*-a*)/3 centered in the gaps.
Jet<double> hump_jet(const BumpSpec& spec, double t, std::size_t k);

struct DerivBoundCert {
    unsigned n = 0;
    double c = kBumpC, d = kBumpD;
    double log_C = 0.0;        // log(c n^(d n)), log C_0 = 0
    double log_sharper = 0.0;  // log(2^(7n+4) n^(9n)), the proof's intermediate bound
    double C() const;
    double sharper() const;
};

DerivBoundCert derivative_bound(unsigned n);

// log of 3^n C_n max{(b-a)^-n, (b*-a*)^-n}; valid when eps, eps* <= 1.
double log_hump_derivative_bound(const BumpSpec& spec, unsigned n);

}  // namespace whitney
