#pragma once

#include <functional>
#include <string>
#include <vector>

#include "whitney/expr.hpp"
#include "whitney/jet.hpp"

namespace whitney {

using JetFn = std::function<Jet<double>(double t, std::size_t k)>;
using ScalarFn = std::function<double(double t)>;

enum class NormKind { LowerSample, Inflated };

// Sampled estimate of ||f||_{S;m} = max_{n<=m} sup_S |f^(n)|.
struct NormEstimate {
    double lower = 0.0;        // max over the samples (a lower bound for the true sup)
    double inflation = 1.05;   // safety factor for the inflated value
    NormKind kind = NormKind::Inflated;
    double lo = 0.0, hi = 0.0;
    std::size_t samples = 0;
    int order = 0;
    std::vector<double> per_order;  // lower-sample sup of |f^(n)| for n <= order

    double inflated() const { return lower * inflation; }
    double value() const { return kind == NormKind::Inflated ? inflated() : lower; }
    // Same sweep restricted to derivative orders <= m.
    NormEstimate up_to(int m) const;
    std::string grid() const;
};

struct SamplingOptions {
    std::size_t samples = 4097;
    double inflation = 1.05;
    bool refine = true;
};

NormEstimate sup_norm(const JetFn& f, double a, double b, int m, const SamplingOptions& opts = {});
NormEstimate sup_norm(const Expr& e, double a, double b, int m, std::size_t samples = 4097);

// sup |t^m f^(n)(t)| over [-T, T]; always a lower-sample value.
NormEstimate schwartz_seminorm(const Expr& e, int m, int n, double T, std::size_t samples = 4097);

inline JetFn jet_fn(const Expr& e) {
    return [e](double t, std::size_t k) { return e.jet(t, k); };
}
inline ScalarFn scalar_fn(const Expr& e) {
    return [e](double t) { return e.eval(t); };
}

}  // namespace whitney
