#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "whitney/norms.hpp"

namespace whitney {

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double t) const { return lo <= t && t <= hi; }
    double length() const { return hi - lo; }
};

// A function with bounded support; the evaluator must return zero jets outside [lo, hi].
struct SupportedFn {
    JetFn eval;
    Interval support;
    // Optional finer description of the support (subsets of support).
    std::vector<Interval> pieces;
    int smoothness = 1 << 20;
    // Known bound on sup |f| (used by the log-domain complex bound); sampled when absent.
    std::optional<double> sup;
    bool identically_zero = false;

    std::span<const Interval> support_pieces() const {
        return pieces.empty() ? std::span<const Interval>(&support, 1) : std::span<const Interval>(pieces);
    }
};

SupportedFn make_supported(JetFn eval, double lo, double hi);

struct QuadratureRule {
    enum class Kind { GaussHermiteSubstituted, AdaptivePanel, Pruned };
    Kind kind = Kind::GaussHermiteSubstituted;
    std::size_t nodes = 64;
    double lambda = 0.0;
};

struct LogComplexValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    bool phase_known = false;
    std::optional<std::complex<double>> value;
};

// 8 (||f||_{m+1}/eps)^2 log+(2 sqrt2 ||f||_m / eps).
double lambda_for_eps(double norm_m, double norm_m1, double eps);
// 16 sqrt2 (||f||_{m+1}/eps)^3 + 1, a sufficient simpler threshold.
double lambda_simple_form(double norm_m1, double eps);

// Entry n is W_lambda(f^(n))(t). lambda may be +inf (the transform is then the identity).
Jet<double> transform_jet(const SupportedFn& f, double lambda, double t, std::size_t k,
                          QuadratureRule* used = nullptr);

LogComplexValue transform_complex(const SupportedFn& f, double lambda, std::complex<double> z);

// log of (1/2)(erf(b) - erf(a)), the N(0,1/2) mass of [a, b].
double log_gauss_mass(double a, double b);

struct CertifyReport {
    int m = 0;
    double eps = 0.0;
    double lambda = 0.0;
    double threshold = 0.0;
    NormEstimate norm;  // ||f||_{m+1}, inflated values feed the threshold
    std::vector<double> per_order_deviation;
    double max_deviation = 0.0;
    std::size_t grid_points = 0;
    bool pass = false;
};

// Samples ||W_lambda f - f||_m on support widened by 3. Refuses when lambda <= lambda(eps).
CertifyReport certify_approx(const SupportedFn& f, int m, double eps, double lambda,
                             const SamplingOptions& norm_opts = {}, std::size_t grid_points = 2001);

}  // namespace whitney
