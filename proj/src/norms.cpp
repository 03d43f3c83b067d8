#include "whitney/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "whitney/errors.hpp"

namespace whitney {

NormEstimate NormEstimate::up_to(int m) const {
    if (m > order) throw DomainError("norm sweep does not cover requested order");
    NormEstimate r = *this;
    r.order = std::max(m, 0);
    r.per_order.resize(r.order + 1);
    r.lower = m < 0 ? 0.0 : *std::max_element(r.per_order.begin(), r.per_order.end());
    return r;
}

std::string NormEstimate::grid() const {
    std::ostringstream os;
    os << samples << " uniform samples on [" << lo << ", " << hi << "] + arg-max refinement";
    return os.str();
}

NormEstimate sup_norm(const JetFn& f, double a, double b, int m, const SamplingOptions& opts) {
    if (!(a <= b)) throw DomainError("sup_norm requires a <= b");
    if (opts.samples < 2) throw DomainError("sup_norm requires at least 2 samples");
    if (m < 0) throw DomainError("sup_norm requires m >= 0");
    NormEstimate est;
    est.lo = a;
    est.hi = b;
    est.samples = opts.samples;
    est.order = m;
    est.inflation = opts.inflation;
    est.per_order.assign(m + 1, 0.0);
    std::vector<double> argmax(m + 1, a);
    const std::size_t k = static_cast<std::size_t>(m);
    const double h = (b - a) / static_cast<double>(opts.samples - 1);
    for (std::size_t i = 0; i < opts.samples; ++i) {
        double t = (i + 1 == opts.samples) ? b : a + h * static_cast<double>(i);
        Jet<double> j = f(t, k);
        for (int n = 0; n <= m; ++n) {
            double v = std::abs(j[n]);
            if (v > est.per_order[n]) {
                est.per_order[n] = v;
                argmax[n] = t;
            }
        }
    }
    if (opts.refine && h > 0.0) {
        for (int n = 0; n <= m; ++n) {
            if (est.per_order[n] == 0.0) continue;
            double best = argmax[n], step = h;
            for (int it = 0; it < 40; ++it) {
                step *= 0.5;
                for (double t : {best - step, best + step}) {
                    if (t < a || t > b) continue;
                    Jet<double> j = f(t, k);
                    for (int q = 0; q <= m; ++q) {
                        double v = std::abs(j[q]);
                        if (v > est.per_order[q]) {
                            est.per_order[q] = v;
                            if (q == n) best = t;
                        }
                    }
                }
            }
        }
    }
    est.lower = *std::max_element(est.per_order.begin(), est.per_order.end());
    return est;
}

NormEstimate sup_norm(const Expr& e, double a, double b, int m, std::size_t samples) {
    SamplingOptions opts;
    opts.samples = samples;
    return sup_norm(jet_fn(e), a, b, m, opts);
}

NormEstimate schwartz_seminorm(const Expr& e, int m, int n, double T, std::size_t samples) {
    if (!(T > 0.0)) throw DomainError("schwartz_seminorm requires T > 0");
    if (m < 0 || n < 0) throw DomainError("schwartz_seminorm requires m, n >= 0");
    JetFn g = [&](double t, std::size_t) {
        Jet<double> j = e.jet(t, static_cast<std::size_t>(n));
        return Jet<double>::constant(t, 0, std::pow(t, m) * j[n]);
    };
    SamplingOptions opts;
    opts.samples = samples;
    opts.inflation = 1.0;
    NormEstimate est = sup_norm(g, -T, T, 0, opts);
    est.kind = NormKind::LowerSample;
    return est;
}

}  // namespace whitney
