#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "whitney/jet.hpp"

namespace whitney {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);
BigInt stirling2(unsigned n, unsigned m);
BigInt bell_number(unsigned n);

// Partial exponential Bell polynomial B_{mn} in y_1..y_{n-m+1}.
struct BellPolynomial {
    unsigned m = 0;
    unsigned n = 0;
    // exponent vector (length n-m+1, index i is the power of y_{i+1}) -> coefficient
    std::map<std::vector<unsigned>, BigInt> terms;

    bool is_zero() const { return terms.empty(); }
    unsigned variables() const { return m <= n && n > 0 ? n - m + 1 : 0; }
    BigInt at_ones() const;
    // y[i] is y_{i+1}; needs at least variables() entries.
    double evaluate(std::span<const double> y) const;
};

BellPolynomial bell_polynomial(unsigned m, unsigned n);

// n-th derivative of g(f(t)) from the jets of g at f(t) and f at t.
double faa_di_bruno(const Jet<double>& g_jet, const Jet<double>& f_jet, unsigned n);

// |f^(k)| <= F and |g^(m)| <= G give |(g o f)^(n)| <= G (nF)^n.
double composition_bound(double F, double G, unsigned n);

struct FactorialSandwich {
    double lower;
    double upper;
};
FactorialSandwich factorial_sandwich(unsigned n);

// t^rho (4/e^2) (e/(rho+2))^(rho+2); a lower bound for t^n/n! when n <= rho, rho >= e t.
double cor14_lower(double t, double rho);

double delta_difference(const std::function<double(double)>& phi, double t);

// Slope (phi(t) - phi(s)) / (t - s).
struct DifferenceProbe {
    std::function<double(double)> phi;
    double lo;
    double hi;
    double slope(double s, double t) const;
};

}  // namespace whitney
