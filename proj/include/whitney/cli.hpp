#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "whitney/serialization.hpp"

namespace whitney {

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitRefusal = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    std::optional<double> lo, hi;  // default: the protected region (verify) or the inner part of the interval (transform)
    int points = 401;
    int kmax = 1;
};

struct RunConfig {
    std::string command;
    std::optional<std::string> f, eps, rho;
    std::string domain = "R";
    std::optional<double> delta;   // default sqrt2 (R), sqrt(1/2) (Rpos)
    std::optional<int> r;          // empty: infinity
    std::optional<int> stages;     // default 4 (approximate), 9 (transform)
    std::string mode = "practical";
    GridConfig grid;
    std::vector<double> ts = {0.5, 1.0, 1.5, 2.0};
    int angles = 64;
    double t_max = 5.0;
    int v_samples = 200;
    std::optional<std::string> theorem;  // thm2 | thm3; default from the approximant's case
    std::optional<std::array<double, 2>> interval;  // transform: bounded interval (a, b)
    bool halfline = false;                          // transform: I = (0, inf)
    std::optional<std::string> out;
    std::optional<std::string> approximant;
    unsigned seed = 0;

    // Throws UsageError on out-of-range fields or unparsable expressions.
    void validate() const;
    double delta_or_default() const;
};

Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

struct AuditRow {
    std::string check;
    int n = 0;
    std::string measured;
    std::string bound;
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditRow> rows;
    bool pass = true;

    void add(AuditRow row);
    std::string csv() const;
};

// p_n coefficients, sampled theta^(n) and alpha^(n) on [0, 1] against their bounds.
AuditReport bump_audit(unsigned pn_max = 25, unsigned theta_max = 10, unsigned alpha_max = 8, std::size_t grid = 8193);

// t^3 times the hump 1 on [1, 2] and 0 outside (0, 3).
SupportedFn windowed_cubic();

// Approximation on the windowed cubic and kernel normalization.
AuditReport weierstrass_audit(std::size_t grid = 2001);

// Full command line including argv[0]. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace whitney
