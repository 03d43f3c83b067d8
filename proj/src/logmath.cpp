#include "whitney/logmath.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace whitney {

std::string format_exp(double ln) {
    if (ln == kNegInf) return "0";
    if (std::isnan(ln)) return "nan";
    if (ln == kPosInf) return "inf";
    if (std::abs(ln) < 700.0) return format_double(std::exp(ln));
    double l10 = ln / std::numbers::ln10;
    double e = std::floor(l10);
    double mant = std::pow(10.0, l10 - e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6fe%+.0f", mant, e);
    return buf;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (x == kPosInf) return "inf";
    if (x == kNegInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace whitney
