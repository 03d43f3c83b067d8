#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "whitney/bump.hpp"
#include "whitney/cli.hpp"
#include "whitney/errors.hpp"
#include "whitney/quadrature.hpp"
#include "whitney/weierstrass.hpp"

using namespace whitney;

namespace {

SupportedFn hump03() {
    const BumpSpec h = BumpSpec::hump(0.0, 1.0, 2.0, 3.0);
    return make_supported([h](double t, std::size_t k) { return hump_jet(h, t, k); }, 0.0, 3.0);
}

SupportedFn zero_fn() {
    SupportedFn f = make_supported([](double t, std::size_t k) { return Jet<double>(t, k); }, -1.0, 1.0);
    f.identically_zero = true;
    return f;
}

// Plain composite Simpson on [lo, hi] of f(s) (lambda/pi)^{1/2} e^{-lambda (s-t)^2}, an oracle independent of
// the substituted Gauss-Hermite rule.
double simpson_transform(const std::function<double(double)>& f, double lo, double hi, double lambda, double t, int n) {
    const double h = (hi - lo) / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(s) * std::exp(-lambda * (s - t) * (s - t));
    }
    return acc * h / 3.0 * std::sqrt(lambda / std::numbers::pi);
}

}  // namespace

TEST_CASE("lambda_for_eps examples") {
    CHECK(lambda_for_eps(0.0, 0.0, 0.1) == 0.0);
    CHECK(lambda_for_eps(1.0, 1.0, 1.0) == doctest::Approx(8.0 * std::log(2.0 * std::numbers::sqrt2)));
    CHECK_THROWS_AS(lambda_for_eps(1.0, 1.0, 0.0), DomainError);
    double prev = 0.0;
    for (double eps = 1.0; eps > 1e-6; eps /= 2) {
        const double l = lambda_for_eps(2.0, 3.0, eps);
        CHECK(l >= prev);
        prev = l;
    }
    CHECK(lambda_simple_form(1.0, 1.0) == doctest::Approx(16.0 * std::numbers::sqrt2 + 1.0));
}

TEST_CASE("transform of zero and of the hump") {
    CHECK(transform_jet(zero_fn(), 10.0, 0.3, 2).is_zero());
    CHECK(transform_complex(zero_fn(), 10.0, {0.3, 0.5}).log_magnitude == kNegInf);
    CHECK(std::abs(transform_jet(hump03(), 1e4, 1.5, 0)[0] - 1.0) <= 1e-6);
    CHECK_THROWS(transform_jet(hump03(), 0.0, 1.5, 0));
}

TEST_CASE("transform matches an independent quadrature") {
    const SupportedFn f = windowed_cubic();
    auto fv = [&](double s) { return f.eval(s, 0)[0]; };
    for (double lam : {1.0, 10.0, 400.0})
        for (double t : {-0.5, 0.7, 1.5, 2.9}) {
            const double ref = simpson_transform(fv, 0.0, 3.0, lam, t, 20000);
            CHECK(std::abs(transform_jet(f, lam, t, 0)[0] - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("kernel normalization") {
    const SupportedFn one = make_supported([](double t, std::size_t k) { return Jet<double>::constant(t, k, 1.0); },
                                           -50.0, 50.0);
    for (double lam : {1.0, 1e2, 1e6, 1e12}) CHECK(std::abs(transform_jet(one, lam, 0.0, 0)[0] - 1.0) <= 1e-10);
    const NodeTable& gh = gauss_hermite64();
    double w = 0.0;
    for (double x : gh.w) w += x;
    CHECK(w == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("contraction in every derivative order") {
    const SupportedFn f = windowed_cubic();
    const NormEstimate n = sup_norm(f.eval, 0.0, 3.0, 2);
    for (double lam : {0.5, 5.0, 50.0}) {
        std::vector<double> sup(3, 0.0);
        for (int i = 0; i <= 600; ++i) {
            const double t = -3.0 + 9.0 * i / 600;
            const Jet<double> j = transform_jet(f, lam, t, 2);
            for (int k = 0; k <= 2; ++k) sup[k] = std::max(sup[k], std::abs(j[k]));
        }
        for (int k = 0; k <= 2; ++k) CHECK(sup[k] <= n.up_to(k).inflated());
    }
}

TEST_CASE("derivatives commute with the transform") {
    const SupportedFn f = windowed_cubic();
    const double h = 1e-5;
    for (double lam : {2.0, 30.0})
        for (double t : {0.4, 1.2, 2.6}) {
            const double fd = (transform_jet(f, lam, t + h, 0)[0] - transform_jet(f, lam, t - h, 0)[0]) / (2 * h);
            const double d1 = transform_jet(f, lam, t, 1)[1];
            CHECK(std::abs(fd - d1) <= 1e-6 * std::max(1.0, std::abs(d1)));
        }
}

TEST_CASE("complex transform: real slice and growth bound") {
    const SupportedFn f = windowed_cubic();
    for (double t : {0.3, 1.5, 2.2}) {
        const LogComplexValue v = transform_complex(f, 20.0, {t, 0.0});
        REQUIRE(v.value.has_value());
        const double r = transform_jet(f, 20.0, t, 0)[0];
        CHECK(std::abs(v.value->real() - r) <= 1e-10 * std::max(1.0, std::abs(r)));
    }
    const double fsup = sup_norm(f.eval, 0.0, 3.0, 0).inflated();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ux(-2.0, 5.0), uy(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> z(ux(rng), uy(rng));
        const double lam = 6.0;
        const LogComplexValue v = transform_complex(f, lam, z);
        CHECK(v.log_magnitude <= std::log(fsup) + lam * z.imag() * z.imag() + 1e-12);
    }
    const LogComplexValue far = transform_complex(f, 1e6, {1.5, 1.0});
    CHECK_FALSE(far.phase_known);
    CHECK(std::isfinite(far.log_magnitude));
}

TEST_CASE("certify_approx") {
    const CertifyReport z = certify_approx(zero_fn(), 1, 0.1, 1.0);
    CHECK(z.pass);
    CHECK(z.max_deviation == 0.0);
    const SupportedFn f = windowed_cubic();
    const NormEstimate n = sup_norm(f.eval, 0.0, 3.0, 2);
    const double thr = lambda_for_eps(n.up_to(1).inflated(), n.inflated(), 1e-2);
    const CertifyReport r = certify_approx(f, 1, 1e-2, 1.01 * thr);
    CHECK(r.pass);
    CHECK(r.max_deviation <= 1e-2);
    CHECK_THROWS_AS(certify_approx(f, 1, 1e-2, 1.0), PreconditionError);
}
