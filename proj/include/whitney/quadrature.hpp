#pragma once

#include <functional>
#include <span>
#include <vector>

namespace whitney {

struct NodeTable {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Hermite rule for weight e^{-x^2}; weights sum to sqrt(pi). Nodes ascending.
NodeTable gauss_hermite(int n);
// Gauss-Legendre rule on [-1, 1]. Nodes ascending.
NodeTable gauss_legendre(int n);

const NodeTable& gauss_hermite64();
const NodeTable& gauss_legendre16();

// Writes f(u) (dim components) into out.
using VecIntegrand = std::function<void(double u, std::span<double> out)>;

struct PanelOptions {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int initial_panels = 8;
    std::size_t max_panels = 20000;
};

// Adaptive Gauss-Legendre panels; throws QuadratureError when refinement is exhausted.
std::vector<double> integrate_panels(const VecIntegrand& f, std::size_t dim, double a, double b,
                                     const PanelOptions& opts = {});

}  // namespace whitney
