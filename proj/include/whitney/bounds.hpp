#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whitney/approximant.hpp"

namespace whitney {

// Growth envelopes. Every envelope value is ln of the log-bound: a bound |g| <= exp(L) is reported as ln L,
// since L itself contains a tower (lambda(s)) that overflows any float.

enum class Provenance { Thm2, Thm3, Cor2, Cor3, Cor4 };

std::string to_string(Provenance p);

struct BoundsOptions {
    std::size_t samples = 4097;
    double inflation = 1.05;
};

// Sup window for ||f||_s: [-s, s] in case R, [0, s] in case Rpos.
Interval norm_window(DomainCase c, double s);

// ||f||_{s; m}, inflated sample estimate; 0 when f is identically zero.
double window_norm(const ProblemSpec& spec, double s, int m, const BoundsOptions& opts = {});

// log of (D (rho+1))^{D (rho+1) s^p} (norm / delta_eps)^3. -inf when norm = 0.
double lambda_formula(double D, double rho, double s, double norm, double delta_eps, int s_power = 1);

// ln( C s^p (1 + log_plus_norm + e^{log_lambda}) ).
double envelope_formula(double C, double s, int s_power, double log_plus_norm, double log_lambda);

// log lambda(s) with norms and Delta eps taken from the spec.
double thm2_lambda(double s, const ProblemSpec& spec, double D, const BoundsOptions& opts = {});

// ln of C s^2 (1 + log+ ||f||_{s+3 sqrt2} + lambda(s + 3 sqrt2)), s = sqrt2 t + 1.
double thm2_envelope(double t, const ProblemSpec& spec, double C, double D, const BoundsOptions& opts = {});

// V = {Re z > 0, (Im z)^2 <= (Re z)^2 - alpha}.
bool in_region_V(std::complex<double> z, double alpha);

// lambda with exponent D (rho+1) s^2.
double thm3_lambda(double s, const ProblemSpec& spec, double D, const BoundsOptions& opts = {});

// ln of C s (1 + log+ ||f||_s + lambda(s)), s = D (|z|^2 + 1). Throws DomainError outside V.
double thm3_envelope(std::complex<double> z, double alpha, const ProblemSpec& spec, double C, double D,
                     const BoundsOptions& opts = {});

struct LambdaCheckRow {
    int n = 0;
    double s = 0.0;
    double log_lambda_minus_one = 0.0;  // log(lambda_n - 1)
    double log_bound = 0.0;             // log lambda(s)
    bool pass = false;
};

struct DerivedConstants {
    DomainCase domain = DomainCase::R;
    double c = kBumpC, d = kBumpD;
    double c0 = 0.0, d0 = 0.0, c1 = 0.0, d1 = 0.0;
    double D = 0.0;
    double log_M = 0.0;   // tail constant
    double N = 0.0;       // log(1+M) + 3
    double C = 0.0;       // 2N
    std::vector<std::string> trace;
    std::vector<LambdaCheckRow> lambda_rows;
    bool lambda_pass = true;
};

// D from the ring constant chain with the bump constants, C from the tail constant, and the runtime check
// lambda_n <= lambda(s) + 1 for every built stage (n >= 1 in case Rpos).
DerivedConstants derive_constants(const Approximant& g, const BoundsOptions& opts = {});

struct Thm3Constants {
    double alpha = 0.0;
    double t_max = 0.0;
    long long n_max = 0;
    double c0 = 0.0;   // max (k_n + 2) / ((delta n / sqrt2)^2 + 1) over n <= n_max
    double c1 = 0.0;   // delta c0
    double N = 0.0;
    double C = 0.0;    // 2N / c1
    double D = 0.0;    // max(D of the case chain, c1)
    std::vector<std::string> trace;
};

// Constants for the thm3 envelope on V intersected with |z| <= t_max.
Thm3Constants derive_thm3_constants(const Approximant& g, const DerivedConstants& dc, double t_max);

struct RingCertificate {
    long long n = 0;
    double lhs = 0.0, mid = 0.0, rhs = 0.0;
    bool holds = false;
    std::string inequality;
};

// First n with z in U_n, with the ring inequality of case R, or of case Rpos for z in V, evaluated.
RingCertificate ring_locator_check(std::complex<double> z, const RingScheme& s);

struct Envelope {
    Provenance provenance = Provenance::Thm2;
    std::vector<std::pair<std::string, double>> constants;
    std::vector<std::string> trace;
    std::function<double(double)> at_t;  // t -> ln of the log-bound
    double alpha = 0.0;                   // region parameter for thm3

    double operator()(double t) const { return at_t(t); }
    // thm3 checks z in V; the others use t = |z|.
    double at(std::complex<double> z) const;
    double constant(const std::string& name) const;
};

Envelope thm2_envelope_of(const ProblemSpec& spec, double C, double D, const BoundsOptions& opts = {});
Envelope thm3_envelope_of(const ProblemSpec& spec, const Thm3Constants& k, const BoundsOptions& opts = {});

struct CorollaryParams {
    double C = 1.0;
    double D = 1.0;            // D of thm2
    int r = 0;                 // cor2, cor3
    JetFn f;                   // cor2
    ScalarFn eps;              // cor2
    double M = 1.0;            // cor3
    double eps_const = 1.0;    // cor3, cor4
    int N = 0;                 // cor4
    std::optional<Expr> f_expr;  // cor4
    double T = 20.0;           // cor4: sampling half-width for sup over R
};

Envelope corollary_envelope(Provenance which, const CorollaryParams& p, const BoundsOptions& opts = {});

// cor4 tolerance and its difference function.
double cor4_delta(double eps, int N);
double cor4_eps0(double eps, int N, double t);
double cor4_delta_eps0(double eps, int N, double t);

struct IndexDiagnostic {
    double value = 0.0;
    std::string label = "DIAGNOSTIC";
};

// max over samples of log_m ||g||_t / log t, where samples carry log ||g||_t.
IndexDiagnostic index_diagnostic(const std::vector<std::pair<double, double>>& samples, int m);

struct ComparisonRow {
    std::string point;
    double measured_log = 0.0;   // log |g|
    double ln_bound_log = 0.0;   // ln of the log-bound
    bool margin_negative = false;
    double ln_abs_margin = kNegInf;  // ln |bound_log - measured_log|
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool pass = true;

    void add(std::string point, double measured_log, double ln_bound_log);
    std::string csv() const;
};

// log sup |g| on the circle |z| = t from `angles` samples; includes the tail bound when it is covered.
double measured_log_on_circle(const Approximant& g, double t, int angles = 64);
double measured_log_at(const Approximant& g, std::complex<double> z);

ComparisonReport compare_thm2(const Approximant& g, const std::vector<double>& ts, const DerivedConstants& dc,
                              int angles = 64, const BoundsOptions& opts = {});
ComparisonReport compare_thm3(const Approximant& g, const std::vector<std::complex<double>>& zs,
                              const Thm3Constants& k, const BoundsOptions& opts = {});

// Uniform samples from V with |z| <= t_max.
std::vector<std::complex<double>> sample_region_V(double alpha, double t_max, std::size_t count, unsigned seed);

}  // namespace whitney
