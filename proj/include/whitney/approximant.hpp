#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "whitney/bump.hpp"
#include "whitney/logmath.hpp"
#include "whitney/scheme.hpp"
#include "whitney/weierstrass.hpp"

namespace whitney {

enum class Mode { Certified, Practical };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

// log D_{mn}: D_{0n} = 1; case R c m^{dm}; case Rpos c m^{dm} for n = 0 and c (mn)^{dm} for n >= 1.
double log_D(DomainCase c, int m, int n);
// Exact integer D_{mn} (c and d are integers).
BigInt exact_D(DomainCase c, int m, int n);

// The hump phi_n built from the rings (alpha_n + beta_n, or the single hump for n = 0).
struct StageWindow {
    std::vector<BumpSpec> humps;
    std::vector<Interval> pieces;  // closed support of each hump, in order

    Jet<double> jet(double t, std::size_t k) const;
};

StageWindow stage_window(const RingScheme& s, int n);

struct LedgerRow {
    int n = 0;
    int r_n = 0;
    double eps_n = 0.0;
    double eps_next = 0.0;
    std::vector<double> log_D;        // log D_{mn}, m = 0..r_n+1
    double log_N_next = 0.0;          // log N_{n+1}
    double delta = 0.0;               // delta_n (rounded down so the exact ledger checks hold)
    double log_delta = 0.0;
    std::vector<double> phi_norm;     // lower-sample sup |phi_n^(m)|, m = 0..r_n+1
    double log_M = 0.0;               // log(1 + 2^{r_n} ||phi_n||_{r_n}), inflated
    std::vector<double> f_norm;       // inflated ||f||_{K_{n+2}; m}, m = 0..r_n+1, running max over n
    double log_G0 = 0.0;              // log G_{0n}
    double log_G = 0.0;               // log G_{r_n+1, n}
    double log_mu = 0.0;
    double log_lambda = 0.0;
    double lambda = 0.0;              // +inf when exp(log_lambda) overflows
    NormEstimate h_norm;              // sampled ||h_n||_{r_n+1} over the support pieces
    double log_H = 0.0;
    double log_tail_term = 0.0;       // log(H_n e^{-lambda_n/n}), n >= 1
    std::size_t norm_samples = 0;
};

struct BuildOptions {
    Mode mode = Mode::Practical;
    std::size_t min_piece_samples = 513;
    double samples_per_unit = 256.0;
    double inflation = 1.05;
    std::size_t cache_capacity = 1u << 18;
    bool profile_scheme = false;  // build rings with build_scheme_from_profile
};

struct ComplexEval {
    LogComplexValue built;        // sum over built stages
    long long ring = -1;          // first n with z in U_n
    long long k_n = 0;
    bool tail_covered = false;    // every unbuilt stage m satisfies m >= k_n
    double log_tail_bound = kNegInf;
    double log_total_bound = kNegInf;  // log(|built| + tail)
};

struct VerifyRow {
    double t = 0.0;
    int k = 0;
    double deviation = 0.0;
    double eps = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    double worst_ratio = 0.0;  // max deviation / eps
    bool pass = true;
};

struct LedgerCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

class Approximant {
public:
    // Builds stages 0..N-1.
    static Approximant build(const ProblemSpec& spec, int N, const BuildOptions& opts = {});
    // Rebuilds the evaluators from stored constants (no sampling).
    static Approximant from_parts(const ProblemSpec& spec, const RingScheme& scheme, Mode mode,
                                  std::vector<LedgerRow> ledger, double log_c_star, double log_chain_c);

    const ProblemSpec& spec() const;
    const RingScheme& scheme() const;
    Mode mode() const;
    int stages() const;
    const std::vector<LedgerRow>& ledger() const;
    const SupportedFn& stage_fn(int n) const;
    const StageWindow& window(int n) const;

    double log_c_star() const;
    double log_chain_c() const;  // log of the witness c = eps_0^3 / G_{0 n0}^2 (-inf when f = 0)
    double log_tail_constant() const;  // log M, M = c_* pi^2 / 6
    Interval protected_region() const;  // K_{N-2}

    Jet<double> h_jet(int n, double t, std::size_t k) const;
    Jet<double> stage_jet(int n, double t, std::size_t k) const;
    // Sum of stage jets; k must not exceed r_n of the ring containing t.
    Jet<double> eval_jet(double t, std::size_t k) const;
    Jet<double> eval_jet_unchecked(double t, std::size_t k) const;
    ComplexEval eval_complex(std::complex<double> z) const;
    int ring_of(double t) const;

    // Grid of points in the protected region; orders k <= min(kmax, floor rho(t)).
    VerifyReport verify(const std::vector<double>& grid, int kmax) const;

    std::vector<LedgerCheck> check_ledger(std::size_t grid_per_piece = 257) const;

    std::size_t cache_size() const;

private:
    struct Core;
    std::shared_ptr<Core> core_;
};

}  // namespace whitney
