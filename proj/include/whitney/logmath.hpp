#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace whitney {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b) for a >= b.
inline double log_sub(double a, double b) {
    if (b == kNegInf) return a;
    if (b > a) return std::numeric_limits<double>::quiet_NaN();
    if (a == b) return kNegInf;
    return a + std::log1p(-std::exp(b - a));
}

inline double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

// x^y with 0^0 = 1.
inline double pow00(double x, double y) { return y == 0.0 ? 1.0 : std::pow(x, y); }

// y*log(x) with 0*log(0) = 0.
inline double xlogy(double y, double x) { return y == 0.0 ? 0.0 : y * std::log(x); }

// Decimal rendering of e^ln, valid far beyond the double range ("2.3e+4521").
std::string format_exp(double ln);

// Decimal rendering of a double, with inf/-inf spelled out.
std::string format_double(double x);

}  // namespace whitney
