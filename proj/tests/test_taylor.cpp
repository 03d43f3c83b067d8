#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "whitney/combinatorics.hpp"
#include "whitney/errors.hpp"
#include "whitney/expr.hpp"
#include "whitney/norms.hpp"

using namespace whitney;

namespace {

double central_diff(const Expr& e, double t, int order, double h) {
    if (order == 0) return e.eval(t);
    if (order == 1) return (e.eval(t + h) - e.eval(t - h)) / (2 * h);
    return (e.eval(t + h) - 2 * e.eval(t) + e.eval(t - h)) / (h * h);
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("parse examples") {
    CHECK(parse("sin(t)+1").tree_string() == "add(sin(t),1)");
    CHECK(parse("0.5/(1+t)").tree_string() == "div(0.5,add(1,t))");
    try {
        parse("t+");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(parse("sin(t"), ParseError);
    CHECK_THROWS_AS(parse("foo(t)"), ParseError);
    CHECK(parse("-t^2").eval(3.0) == doctest::Approx(-9.0));
    CHECK(parse("2*t-3/t").eval(2.0) == doctest::Approx(2.5));
}

TEST_CASE("jet examples") {
    const Jet<double> e = parse("exp(t)").jet(0.0, 3);
    for (int n = 0; n <= 3; ++n) CHECK(e[n] == doctest::Approx(1.0));
    const Jet<double> s = parse("sin(t)").jet(0.0, 3);
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == doctest::Approx(0.0));
    CHECK(s[3] == doctest::Approx(-1.0));
    const Expr f = parse("t^2*exp(t)");
    const Jet<double> j = f.jet(1.0, 2);
    for (int n = 0; n <= 2; ++n) CHECK(rel_close(j[n], central_diff(f, 1.0, n, 1e-4), 1e-6));
}

TEST_CASE("jets match closed-form derivatives") {
    // d^n/dt^n of sin is sin(t + n pi/2); of 1/(1+t) is (-1)^n n!/(1+t)^{n+1}
    const Expr s = parse("sin(t)"), r = parse("1/(1+t)"), q = parse("sqrt(t)"), l = parse("log(t)");
    for (double t : {0.3, 1.1, 2.7}) {
        const Jet<double> js = s.jet(t, 10), jr = r.jet(t, 10), jq = q.jet(t, 6), jl = l.jet(t, 8);
        double fact = 1.0;
        for (int n = 0; n <= 10; ++n) {
            if (n > 0) fact *= n;
            CHECK(rel_close(js[n], std::sin(t + n * std::numbers::pi / 2), 1e-12));
            CHECK(rel_close(jr[n], (n % 2 ? -1.0 : 1.0) * fact / std::pow(1 + t, n + 1), 1e-11));
        }
        double c = 1.0;
        for (int n = 0; n <= 6; ++n) {
            CHECK(rel_close(jq[n], c * std::pow(t, 0.5 - n), 1e-11));
            c *= 0.5 - n;
        }
        CHECK(rel_close(jl[0], std::log(t), 1e-14));
        double f = 1.0;
        for (int n = 1; n <= 8; ++n) {
            if (n > 1) f *= n - 1;
            CHECK(rel_close(jl[n], (n % 2 ? 1.0 : -1.0) * f / std::pow(t, n), 1e-11));
        }
    }
}

TEST_CASE("leibniz rule in exact rational arithmetic") {
    // f = 1 + 2x + 3x^2/2, g = 5 - x; all derivatives at 0 are rational
    Jet<BigRational> f(BigRational(0), {BigRational(1), BigRational(2), BigRational(3), BigRational(0), BigRational(0)});
    Jet<BigRational> g(BigRational(0), {BigRational(5), BigRational(-1), BigRational(0), BigRational(0), BigRational(0)});
    const Jet<BigRational> h = f * g;
    // fg = 5 + 9x + (11/2)x^2 - (3/2)x^3
    CHECK(h[0] == 5);
    CHECK(h[1] == 9);
    CHECK(h[2] == 11);
    CHECK(h[3] == -9);
    CHECK(h[4] == 0);
    const Jet<BigRational> back = h / g;
    for (int n = 0; n <= 4; ++n) CHECK(back[n] == f[n]);
}

TEST_CASE("jet algebra properties") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Expr a = parse("exp(sin(t))"), b = parse("cos(t)+2");
    for (int i = 0; i < 20; ++i) {
        const double t = u(rng);
        const Jet<double> ja = a.jet(t, 6), jb = b.jet(t, 6);
        const Jet<double> q = (ja * jb) / jb;
        for (int n = 0; n <= 6; ++n) CHECK(rel_close(q[n], ja[n], 1e-12));
        const Jet<double> sum = parse("exp(sin(t))+cos(t)+2").jet(t, 6);
        for (int n = 0; n <= 6; ++n) CHECK(rel_close(sum[n], ja[n] + jb[n], 1e-12));
    }
}

TEST_CASE("sup norm examples") {
    CHECK(sup_norm(Expr::constant(3.0), 0.0, 1.0, 0).lower == doctest::Approx(3.0));
    CHECK(sup_norm(parse("sin(t)"), 0.0, std::numbers::pi / 2, 1).lower == doctest::Approx(1.0));
    const NormEstimate c = sup_norm(parse("t^3"), -2.0, 2.0, 2);
    CHECK(c.lower == doctest::Approx(12.0));
    CHECK(c.inflated() == doctest::Approx(12.0 * 1.05));
    REQUIRE(c.per_order.size() == 3);
    CHECK(c.per_order[0] == doctest::Approx(8.0));
    CHECK(c.per_order[1] == doctest::Approx(12.0));
    CHECK(c.per_order[2] == doctest::Approx(12.0));
    CHECK(c.up_to(0).lower == doctest::Approx(8.0));
}

TEST_CASE("sup norm is a lower sample of the true sup") {
    const Expr e = parse("sin(7*t)*exp(-t)");
    const NormEstimate n = sup_norm(e, 0.0, 3.0, 2, 257);
    const NormEstimate fine = sup_norm(e, 0.0, 3.0, 2, 20001);
    CHECK(n.lower <= fine.lower * (1 + 1e-12));
    CHECK(fine.lower <= n.inflated());
}

TEST_CASE("schwartz seminorm examples") {
    CHECK(schwartz_seminorm(Expr(), 2, 1, 5.0).lower == 0.0);
    const Expr g = parse("exp(-t^2)");
    CHECK(schwartz_seminorm(g, 0, 0, 3.0).lower == doctest::Approx(1.0));
    CHECK(schwartz_seminorm(g, 1, 0, 3.0, 20001).lower == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::e)).epsilon(1e-6));
}
