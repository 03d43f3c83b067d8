#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "whitney/combinatorics.hpp"
#include "whitney/errors.hpp"
#include "whitney/expr.hpp"
#include "whitney/logmath.hpp"

using namespace whitney;

namespace {

// Counts set partitions of {0..n-1} into exactly m blocks by restricted growth strings.
long long count_partitions(int n, int m) {
    if (n == 0) return m == 0 ? 1 : 0;
    std::vector<int> a(n, 0);
    long long count = 0;
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            if (mx + 1 == m) ++count;
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[i] = v;
            rec(i + 1, std::max(mx, v));
        }
    };
    a[0] = 0;
    rec(1, 0);
    return count;
}

double factorial_d(int n) { return std::tgamma(n + 1.0); }

// Series composition of the two jets, independent of the Bell polynomial route.
Jet<double> compose_via_expr(const Expr& g, const Expr& f, double t, std::size_t k) {
    return compose(g.jet(f.eval(t), k), f.jet(t, k));
}

}  // namespace

TEST_CASE("stirling2 examples and recurrence") {
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(4, 2) == 7);
    CHECK_THROWS_AS(stirling2(2, 3), DomainError);
    for (unsigned n = 1; n <= 9; ++n)
        for (unsigned m = 0; m <= n; ++m) CHECK(stirling2(n, m) == count_partitions(n, m));
    for (unsigned n = 0; n < 25; ++n)
        for (unsigned m = 1; m <= n; ++m) CHECK(stirling2(n + 1, m) == m * stirling2(n, m) + stirling2(n, m - 1));
}

TEST_CASE("bell numbers") {
    CHECK(bell_number(0) == 1);
    CHECK(bell_number(3) == 5);
    CHECK(bell_number(4) == 15);
    for (unsigned n = 1; n <= 12; ++n) {
        BigInt s = 0;
        for (unsigned m = 0; m <= n; ++m) s += stirling2(n, m);
        CHECK(bell_number(n) == s);
        CHECK(bell_number(n) <= boost::multiprecision::pow(BigInt(n), n));
    }
}

TEST_CASE("bell polynomials") {
    CHECK(bell_polynomial(0, 0).at_ones() == 1);
    CHECK(bell_polynomial(0, 2).is_zero());
    const BellPolynomial b13 = bell_polynomial(1, 3);
    REQUIRE(b13.terms.size() == 1);
    CHECK(b13.terms.begin()->first == std::vector<unsigned>{0, 0, 1});
    CHECK(b13.terms.begin()->second == 1);
    const BellPolynomial b33 = bell_polynomial(3, 3);
    REQUIRE(b33.terms.size() == 1);
    CHECK(b33.terms.begin()->first == std::vector<unsigned>{3});
    CHECK_THROWS_AS(bell_polynomial(3, 2), DomainError);
    for (unsigned n = 1; n <= 10; ++n)
        for (unsigned m = 1; m <= n; ++m) {
            const BellPolynomial b = bell_polynomial(m, n);
            CHECK(b.at_ones() == stirling2(n, m));
            for (const auto& [e, c] : b.terms) {
                unsigned deg = 0, weight = 0;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    deg += e[i];
                    weight += e[i] * static_cast<unsigned>(i + 1);
                }
                CHECK(deg == m);
                CHECK(weight == n);
                CHECK(c > 0);
            }
        }
}

TEST_CASE("faa di bruno examples") {
    // f = id: h' = g'
    const Jet<double> gj(0.3, {1.0, 2.5, 0.0});
    const Jet<double> id = Jet<double>::variable(0.3, 2);
    CHECK(faa_di_bruno(gj, id, 1) == doctest::Approx(2.5));
    // f = t^2, g = u^3 at t = 1: h = t^6, h''' = 120
    const Expr f = parse("t^2"), g = parse("t^3");
    CHECK(faa_di_bruno(g.jet(1.0, 3), f.jet(1.0, 3), 3) == doctest::Approx(120.0));
    // f = g = exp at 0: h'' = 2e
    const Expr e = parse("exp(t)");
    CHECK(faa_di_bruno(e.jet(1.0, 2), e.jet(0.0, 2), 2) == doctest::Approx(2.0 * std::numbers::e));
    CHECK_THROWS_AS(faa_di_bruno(e.jet(1.0, 1), e.jet(0.0, 2), 2), DomainError);
}

TEST_CASE("faa di bruno matches series composition on random pairs") {
    const char* outers[] = {"sin(t)", "exp(t)", "t^3-2*t", "cos(t)*t", "1/(2+t^2)"};
    const char* inners[] = {"t^2+1", "sin(t)", "exp(t/2)", "t/(1+t^2)", "cos(t)-t"};
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const char* o : outers)
        for (const char* i : inners) {
            const Expr g = parse(o), f = parse(i);
            const double t = u(rng);
            const Jet<double> ref = compose_via_expr(g, f, t, 8);
            const Jet<double> gj = g.jet(f.eval(t), 8), fj = f.jet(t, 8);
            for (unsigned n = 1; n <= 8; ++n) {
                const double v = faa_di_bruno(gj, fj, n);
                CHECK(std::abs(v - ref[n]) <= 1e-9 * std::max(1.0, std::abs(ref[n])));
            }
        }
}

TEST_CASE("composition bound") {
    CHECK(composition_bound(1, 1, 1) == 1.0);
    CHECK(composition_bound(1, 1, 3) == 27.0);
    CHECK_THROWS_AS(composition_bound(0.5, 1, 3), DomainError);
    const Expr g = parse("sin(t)"), f = parse("sin(t)");
    for (double t : {-0.7, 0.1, 1.3}) {
        const Jet<double> gj = g.jet(f.eval(t), 6), fj = f.jet(t, 6);
        for (unsigned n = 1; n <= 6; ++n) CHECK(std::abs(faa_di_bruno(gj, fj, n)) <= composition_bound(1.0, 1.0, n));
    }
}

TEST_CASE("factorial sandwich") {
    const FactorialSandwich s1 = factorial_sandwich(1);
    CHECK(s1.lower == doctest::Approx(1.0));
    CHECK(s1.upper == doctest::Approx(1.0));
    const FactorialSandwich s2 = factorial_sandwich(2);
    CHECK(s2.lower == doctest::Approx(4.0 / std::numbers::e).epsilon(1e-12));
    CHECK(s2.lower == doctest::Approx(1.4715).epsilon(1e-4));
    CHECK(s2.upper == doctest::Approx(2.4831).epsilon(1e-4));
    for (unsigned n = 1; n <= 50; ++n) {
        const FactorialSandwich s = factorial_sandwich(n);
        CHECK(s.lower <= factorial_d(n) * (1 + 1e-14));
        CHECK(factorial_d(n) <= s.upper * (1 + 1e-14));
    }
}

TEST_CASE("cor14 lower bound against brute force") {
    CHECK(cor14_lower(0.1, 1) <= std::min(1.0, 0.1));
    CHECK(cor14_lower(1, 3) <= 1.0 / 6.0);
    CHECK(cor14_lower(0.5, 2) <= 1.0);
    CHECK_THROWS_AS(cor14_lower(1.0, 2.0), DomainError);
    for (double t = 0.05; t <= 3.0; t += 0.15)
        for (double rho = std::numbers::e * t; rho <= 25.0; rho += 0.37) {
            double m = kPosInf;
            for (int n = 0; n <= static_cast<int>(std::floor(rho)); ++n) m = std::min(m, std::pow(t, n) / factorial_d(n));
            CHECK(cor14_lower(t, rho) <= m * (1 + 1e-12));
        }
}

TEST_CASE("difference function") {
    CHECK(delta_difference([](double) { return 4.0; }, 2.0) == 0.0);
    const double eps = 0.3;
    for (double t : {0.0, 1.0, 7.5})
        CHECK(delta_difference([eps](double s) { return eps / (s + 1); }, t) ==
              doctest::Approx(eps / ((t + 1) * (t + 2))).epsilon(1e-12));
    const double d = 0.7;
    for (double t : {0.0, 2.0, 5.0})
        CHECK(delta_difference([d](double s) { return d * std::exp(-s); }, t) ==
              doctest::Approx(d * std::exp(-t) * (1 - std::exp(-1.0))).epsilon(1e-12));
}

TEST_CASE("difference quotient slopes are monotone for convex functions") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0), pa(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const double a = pa(rng), b = u(rng), c = u(rng);
        DifferenceProbe p{[=](double x) { return a * x * x + b * x + c; }, -5.0, 5.0};
        double s = std::round(u(rng) * 8) / 8, t = std::round(u(rng) * 8) / 8, w = std::round(u(rng) * 8) / 8;
        if (s > t) std::swap(s, t);
        if (t > w) std::swap(t, w);
        if (s > t) std::swap(s, t);
        if (!(s < t && t < w)) continue;
        CHECK(p.slope(s, t) == doctest::Approx(p.slope(t, s)));
        CHECK(p.slope(s, t) <= p.slope(s, w) + 1e-12);
        CHECK(p.slope(s, w) <= p.slope(t, w) + 1e-12);
    }
}

TEST_CASE("difference lower bound for eps/(t+1)") {
    const double eps = 1.0, C = 0.5;
    auto phi = [eps](double s) { return eps / (s + 1); };
    for (double t = 1.0; t <= 50.0; t += 0.25) CHECK(delta_difference(phi, t) >= C * phi(t + 1) / (t + 1));
}

TEST_CASE("hockey stick identity") {
    for (unsigned n = 0; n <= 30; ++n)
        for (unsigned l = 0; l <= n; ++l) {
            BigInt s = 0;
            for (unsigned k = l; k <= n; ++k) s += binomial(k, l);
            CHECK(s == binomial(n + 1, l + 1));
        }
}

TEST_CASE("square root inequality") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(rng), b = u(rng), c = u(rng);
        CHECK(std::sqrt(a + b) + std::sqrt(c) <= std::sqrt(a) + std::sqrt(2 * (b + c)) + 1e-12);
    }
}
