#include "whitney/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "whitney/errors.hpp"

namespace whitney {

NodeTable gauss_hermite(int n) {
    // Newton iteration on orthonormal Hermite functions, roots located from the largest down.
    std::vector<long double> x(n), w(n);
    const long double pim4 = 1.0L / std::pow(std::numbers::pi_v<long double>, 0.25L);
    const int m = (n + 1) / 2;
    long double z = 0.0L, pp = 0.0L;
    for (int i = 0; i < m; ++i) {
        if (i == 0) z = std::sqrt(2.0L * n + 1) - 1.85575L * std::pow(2.0L * n + 1, -0.16667L);
        else if (i == 1) z -= 1.14L * std::pow(static_cast<long double>(n), 0.426L) / z;
        else if (i == 2) z = 1.86L * z - 0.86L * x[0];
        else if (i == 3) z = 1.91L * z - 0.91L * x[1];
        else z = 2.0L * z - x[i - 2];
        for (int it = 0; it < 100; ++it) {
            long double p1 = pim4, p2 = 0.0L;
            for (int j = 0; j < n; ++j) {
                long double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0L / (j + 1)) * p2 - std::sqrt(static_cast<long double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0L * n) * p2;
            long double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-18L * std::max(1.0L, std::abs(z))) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0L / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    NodeTable t;
    for (int i = n - 1; i >= 0; --i) {
        t.x.push_back(static_cast<double>(x[i]));
        t.w.push_back(static_cast<double>(w[i]));
    }
    return t;
}

NodeTable gauss_legendre(int n) {
    std::vector<long double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L)), pp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p1 = 1.0L, p2 = 0.0L;
            for (int j = 0; j < n; ++j) {
                long double p3 = p2;
                p2 = p1;
                p1 = ((2.0L * j + 1) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0L);
            long double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-19L) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0L / ((1.0L - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    NodeTable t;
    for (int i = 0; i < n; ++i) {
        t.x.push_back(static_cast<double>(x[i]));
        t.w.push_back(static_cast<double>(w[i]));
    }
    return t;
}

const NodeTable& gauss_hermite64() {
    static const NodeTable t = gauss_hermite(64);
    return t;
}

const NodeTable& gauss_legendre16() {
    static const NodeTable t = gauss_legendre(16);
    return t;
}

namespace {

// out: integral estimate; mass: estimate of the integral of |f|.
void panel(const VecIntegrand& f, std::size_t dim, double a, double b, std::vector<double>& out,
           std::vector<double>& mass, std::vector<double>& scratch) {
    const auto& gl = gauss_legendre16();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    out.assign(dim, 0.0);
    mass.assign(dim, 0.0);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        f(mid + half * gl.x[i], scratch);
        for (std::size_t d = 0; d < dim; ++d) {
            out[d] += gl.w[i] * half * scratch[d];
            mass[d] += gl.w[i] * half * std::abs(scratch[d]);
        }
    }
}

}  // namespace

std::vector<double> integrate_panels(const VecIntegrand& f, std::size_t dim, double a, double b,
                                     const PanelOptions& opts) {
    std::vector<double> total(dim, 0.0);
    if (!(b > a)) return total;
    struct Item {
        double a, b;
        std::vector<double> est;
    };
    std::vector<double> scratch(dim), mass_l, mass_r;
    std::vector<Item> stack;
    const int n0 = std::max(1, opts.initial_panels);
    const double h = (b - a) / n0;
    std::vector<double> total_mass(dim, 0.0);
    for (int i = n0 - 1; i >= 0; --i) {
        Item it{a + i * h, (i + 1 == n0) ? b : a + (i + 1) * h, {}};
        panel(f, dim, it.a, it.b, it.est, mass_l, scratch);
        for (std::size_t d = 0; d < dim; ++d) total_mass[d] += mass_l[d];
        stack.push_back(std::move(it));
    }
    std::size_t panels = stack.size();
    std::vector<double> left, right;
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        const double mid = 0.5 * (it.a + it.b);
        panel(f, dim, it.a, mid, left, mass_l, scratch);
        panel(f, dim, mid, it.b, right, mass_r, scratch);
        bool ok = true;
        const double share = (it.b - it.a) / (b - a);
        for (std::size_t d = 0; d < dim; ++d) {
            double fine = left[d] + right[d];
            double err = std::abs(fine - it.est[d]);
            // relative to the mass of |f| so cancelling integrals and rounding noise still converge
            const double scale = std::max({std::abs(fine), mass_l[d] + mass_r[d], share * total_mass[d]});
            if (err > opts.abs_tol * share + opts.rel_tol * scale) ok = false;
        }
        if (ok || mid <= it.a || mid >= it.b) {
            for (std::size_t d = 0; d < dim; ++d) total[d] += left[d] + right[d];
            continue;
        }
        if (++panels > opts.max_panels) throw QuadratureError("panel refinement limit exceeded");
        stack.push_back({mid, it.b, right});
        stack.push_back({it.a, mid, left});
    }
    return total;
}

}  // namespace whitney
