#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "whitney/approximant.hpp"

namespace whitney {

enum class MapKind { Affine, MobiusBounded, HalfLine };

// affine: z -> alpha z + (a+b)/2 with alpha = (b-a)/2; mobius: 2z/(1-z^2); half-line: z - 1/z.
struct DomainMap {
    MapKind kind = MapKind::Affine;
    double alpha = 1.0;
    double shift = 0.0;

    static DomainMap affine(double a, double b);
    static DomainMap mobius();
    static DomainMap halfline();

    std::complex<double> forward(std::complex<double> z) const;
    double forward(double t) const;
    double inverse(double s) const;
    std::complex<double> inverse(std::complex<double> s) const;  // affine only
    Jet<double> forward_jet(double t, std::size_t k) const;
    Jet<double> inverse_jet(double s, std::size_t k) const;
    std::vector<double> poles() const;
};

// x in (-1,1) with 2x/(1-x^2) = s.
double mobius_inverse(double s);
// x > 0 with x - 1/x = s.
double halfline_inverse(double s);

// Closed forms used as oracles: Phi^(n)(t) and psi^(n)(t).
double mobius_derivative(unsigned n, double t);
double psi_derivative(unsigned n, double t);

// n! 2^{n+1} / (1-t^2)^{n+1}.
double phin_bound(unsigned n, double t);

double eps_star_bounded(const ScalarFn& eps, const ScalarFn& rho, double t);
double eps_star_bounded(const Expr& eps, const Expr& rho, double t);
// beta(t) = 1 + t^{-(rho_+ + 1)} (e^2/4) ((rho_+ + 2)/e)^{rho_+ + 2}, rho_+ = rho + e t; returned as log.
double log_beta_halfline(double rho, double t);
double eps_star_halfline(const ScalarFn& eps, const ScalarFn& rho, double t);
double eps_star_halfline(const Expr& eps, const Expr& rho, double t);

struct ComposedVerifyRow {
    double t = 0.0;
    int k = 0;
    double deviation = 0.0;
    double eps = 0.0;
    bool pass = false;
};

struct ComposedVerifyReport {
    std::vector<ComposedVerifyRow> rows;
    double worst_ratio = 0.0;
    bool pass = true;
};

// g = g_* o M where M applies the steps in order (an affine step uses the inverse map).
class ComposedApproximant {
public:
    struct Step {
        DomainMap map;
        bool use_inverse = false;
    };

    ComposedApproximant(Approximant gstar, std::vector<Step> steps);

    const Approximant& inner() const { return gstar_; }
    const std::vector<Step>& steps() const { return steps_; }

    double map_point(double t) const;
    std::complex<double> map_point(std::complex<double> z) const;
    Jet<double> map_jet(double t, std::size_t k) const;

    // Real jets by Faa di Bruno with the map's jets; refuses when M(t) leaves the protected region.
    Jet<double> eval_jet(double t, std::size_t k) const;
    ComplexEval eval_complex(std::complex<double> z) const;

    ComposedVerifyReport verify(const JetFn& f, const ScalarFn& eps, const ScalarFn& rho, const std::vector<double>& grid,
                                int kmax) const;

private:
    Approximant gstar_;
    std::vector<Step> steps_;
};

ComposedApproximant compose_approximant(const Approximant& gstar, const DomainMap& map);

struct ChainOptions {
    int stages = 9;
    double delta = 1.4142135623730951;
    BuildOptions build;
};

// Bounded interval (a, b): affine normalization, then Phi.
ComposedApproximant build_bounded_chain(const Expr& f, const Expr& eps, const Expr& rho, std::optional<int> r, double a,
                                        double b, const ChainOptions& opts = {});
// I = (0, inf): Psi. Translating a general (a, inf) to (0, inf) is left to the caller.
ComposedApproximant build_halfline_chain(const Expr& f, const Expr& eps, const Expr& rho, std::optional<int> r,
                                         const ChainOptions& opts = {});

// Extension of f from [alpha, beta) to (-inf, beta): f times the ramp from alpha - delta/2 to alpha, 0 below.
JetFn extend_halfopen(const JetFn& f, double alpha, double beta, double delta);
JetFn extend_halfopen(const Expr& f, double alpha, double beta, double delta);

}  // namespace whitney
