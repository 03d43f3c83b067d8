#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "whitney/bounds.hpp"
#include "whitney/errors.hpp"

using namespace whitney;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

ProblemSpec make_spec(const char* f, const char* eps, const char* rho, DomainCase c, double delta) {
    return ProblemSpec::from_expressions(parse(f), parse(eps), parse(rho), std::nullopt, c, delta);
}

const Approximant& certified_R() {
    static const Approximant g =
        Approximant::build(make_spec("sin(t)", "1/(2*(1+t))", "0", DomainCase::R, kSqrt2), 3, {Mode::Certified});
    return g;
}

const Approximant& certified_Rpos() {
    static const Approximant g = Approximant::build(
        make_spec("1/(1+t)", "1/(2*(1+t))", "0", DomainCase::Rpos, std::sqrt(0.5)), 3, {Mode::Certified});
    return g;
}

}  // namespace

TEST_CASE("lambda formula") {
    CHECK(lambda_formula(2.0, 0.0, 1.0, 1.0, 1.0 / 6.0) == doctest::Approx(std::log(4.0 * 216.0)));
    CHECK(lambda_formula(2.0, 0.0, 1.0, 2.0, 1.0 / 6.0) - lambda_formula(2.0, 0.0, 1.0, 1.0, 1.0 / 6.0) ==
          doctest::Approx(3 * std::log(2.0)));
    CHECK(lambda_formula(2.0, 0.0, 1.0, 0.0, 1.0 / 6.0) == kNegInf);
    CHECK_THROWS_AS(lambda_formula(2.0, 0.0, 1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(lambda_formula(0.5, 0.0, 1.0, 1.0, 1.0), DomainError);
    // s^2 exponent
    CHECK(lambda_formula(2.0, 1.0, 3.0, 1.0, 1.0, 2) == doctest::Approx(4.0 * 9.0 * std::log(4.0)));
}

TEST_CASE("thm2 lambda uses the spec") {
    const ProblemSpec zero = make_spec("0", "1/(1+t)", "0", DomainCase::R, kSqrt2);
    CHECK(thm2_lambda(1.0, zero, 2.0) == kNegInf);
    const ProblemSpec one = make_spec("1", "1/(1+t)", "0", DomainCase::R, kSqrt2);
    // ||1||_{1;1} = 1 inflated by 1.05, Delta eps(1) = 1/6
    CHECK(thm2_lambda(1.0, one, 2.0) == doctest::Approx(std::log(4.0) + 3 * std::log(1.05 * 6.0)));
    const ProblemSpec flat = make_spec("1", "1/(1+t)", "0", DomainCase::R, kSqrt2);
    CHECK(std::isfinite(thm2_envelope(0.0, flat, 1.0, 2.0)));
}

TEST_CASE("thm2 envelope monotone in t and in the norm") {
    const ProblemSpec a = make_spec("sin(t)", "1/(1+t)", "1", DomainCase::R, kSqrt2);
    const ProblemSpec b = make_spec("2*sin(t)", "1/(1+t)", "1", DomainCase::R, kSqrt2);
    double prev = kNegInf;
    for (double t = 0.0; t <= 4.0; t += 0.25) {
        const double v = thm2_envelope(t, a, 6.0, 4096.0);
        CHECK(v >= prev);
        prev = v;
        CHECK(thm2_envelope(t, b, 6.0, 4096.0) >= v);
    }
    for (double lp : {0.0, 1.0, 5.0})
        for (double ll : {-3.0, 0.0, 10.0}) {
            CHECK(envelope_formula(2.0, 3.0, 2, lp + 1, ll) >= envelope_formula(2.0, 3.0, 2, lp, ll));
            CHECK(envelope_formula(2.0, 3.0, 2, lp, ll + 1) >= envelope_formula(2.0, 3.0, 2, lp, ll));
        }
}

TEST_CASE("thm3 region") {
    const ProblemSpec spec = make_spec("1/(1+t)", "1/(1+t)", "0", DomainCase::Rpos, std::sqrt(0.5));
    CHECK(in_region_V({1.0, 0.0}, 1.0));
    CHECK(std::isfinite(thm3_envelope({1.0, 0.0}, 1.0, spec, 1.0, 2.0)));
    CHECK_FALSE(in_region_V({1.0, 1.0}, 1.0));
    CHECK_THROWS_AS(thm3_envelope({1.0, 1.0}, 1.0, spec, 1.0, 2.0), DomainError);
    CHECK_FALSE(in_region_V({-2.0, 0.0}, 1.0));
}

TEST_CASE("derived constants, case R") {
    const DerivedConstants dc = derive_constants(certified_R());
    CHECK(dc.c1 == 4096.0);
    CHECK(dc.d1 == doctest::Approx(48.0 / kSqrt2));
    CHECK(dc.d0 == 48.0);
    CHECK(dc.D >= dc.c1);
    CHECK(dc.N == doctest::Approx(std::log1p(std::exp(dc.log_M)) + 3.0));
    CHECK(dc.C == doctest::Approx(2 * dc.N));
    CHECK(dc.lambda_pass);
    CHECK(dc.lambda_rows.size() == 3);
    for (const LambdaCheckRow& r : dc.lambda_rows) {
        CHECK(r.s == doctest::Approx(kSqrt2 * (r.n + 2)));
        CHECK(r.log_lambda_minus_one <= r.log_bound);
    }
    CHECK_FALSE(dc.trace.empty());
    // C = 2(log(1+M)+3) strictly increases with M
    double prev = 0.0;
    for (double M : {0.0, 0.5, 1.0, 10.0, 1e6}) {
        const double C = 2 * (std::log1p(M) + 3);
        CHECK(C > prev);
        prev = C;
    }
}

TEST_CASE("growth comparisons refuse the wrong inputs") {
    const Approximant practical =
        Approximant::build(make_spec("sin(t)", "1/(2*(1+t))", "0", DomainCase::R, kSqrt2), 3, {Mode::Practical});
    const DerivedConstants dc = derive_constants(certified_R());
    CHECK_THROWS_AS(compare_thm2(practical, {0.5}, dc), PreconditionError);
    CHECK_THROWS_AS(derive_thm3_constants(certified_R(), dc, 5.0), PreconditionError);
}

TEST_CASE("thm2 comparison on a certified run") {
    const DerivedConstants dc = derive_constants(certified_R());
    const ComparisonReport rep = compare_thm2(certified_R(), {0.5, 1.0}, dc, 16);
    CHECK(rep.pass);
    CHECK(rep.rows.size() == 2);
    const std::string csv = rep.csv();
    CHECK(csv.rfind("point,measured_log,bound_log,margin\n", 0) == 0);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 3);
}

TEST_CASE("thm3 constants and comparison") {
    const Approximant& g = certified_Rpos();
    const DerivedConstants dc = derive_constants(g);
    CHECK(dc.lambda_pass);
    for (const LambdaCheckRow& r : dc.lambda_rows) CHECK(r.n >= 1);
    const Thm3Constants k = derive_thm3_constants(g, dc, 5.0);
    CHECK(k.alpha == doctest::Approx(1.0));
    CHECK(k.n_max == 10);
    CHECK(k.c1 == doctest::Approx(std::sqrt(0.5) * k.c0));
    CHECK(k.C == doctest::Approx(2 * k.N / k.c1));
    CHECK(k.D >= dc.D);
    const auto zs = sample_region_V(k.alpha, 5.0, 10, 0);
    for (const auto& z : zs) {
        CHECK(in_region_V(z, k.alpha));
        CHECK(std::abs(z) <= 5.0);
    }
    CHECK(compare_thm3(g, zs, k).pass);
    const Envelope e = thm3_envelope_of(g.spec(), k);
    CHECK_THROWS_AS(e.at({1.0, 1.0}), DomainError);
    CHECK(e.constant("alpha") == k.alpha);
}

TEST_CASE("ring locator certificate") {
    const RingScheme& s = certified_R().scheme();
    CHECK(ring_locator_check({0.0, 0.0}, s).n == 0);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    int done = 0;
    while (done < 200) {
        const std::complex<double> z(u(rng), u(rng));
        if (std::abs(z) > 10.0) continue;
        ++done;
        const RingCertificate c = ring_locator_check(z, s);
        CHECK(c.holds);
        // with delta = sqrt2 the certificate is sqrt2 n <= 1 + sqrt2 |z|
        CHECK(kSqrt2 * c.n <= 1 + kSqrt2 * std::abs(z) + 1e-12);
    }
    const RingScheme& p = certified_Rpos().scheme();
    for (const auto& z : sample_region_V(1.0, 5.0, 50, 3)) {
        const RingCertificate c = ring_locator_check(z, p);
        CHECK(c.holds);
        CHECK(c.n <= 2.0 * std::abs(z));
    }
    CHECK_THROWS_AS(ring_locator_check({1.0, 2.0}, p), DomainError);
}

TEST_CASE("corollary envelopes") {
    const Expr f = parse("sin(t)"), eps = parse("1/(1+t)");
    const double C = 6.0, D = 4096.0;

    CorollaryParams p2;
    p2.C = C;
    p2.D = D;
    p2.r = 0;
    p2.f = jet_fn(f);
    p2.eps = scalar_fn(eps);
    const Envelope c2 = corollary_envelope(Provenance::Cor2, p2);
    const ProblemSpec rho0 = make_spec("sin(t)", "1/(1+t)", "0", DomainCase::R, kSqrt2);
    for (double t : {0.0, 1.0, 3.0}) CHECK(c2(t) >= thm2_envelope(t, rho0, C, D));

    CorollaryParams p3;
    p3.C = C;
    p3.D = D;
    p3.r = 1;
    p3.M = 1.0;
    p3.eps_const = 1.0;
    const Envelope c3 = corollary_envelope(Provenance::Cor3, p3);
    const double log_E = c3.constant("log_E");
    for (double t = 0.0; t <= 50.0; t += 0.5) CHECK(c3(t) <= kSqrt2 * (t + 4.0) * log_E);
    p3.M = 0.5;
    CHECK_THROWS_AS(corollary_envelope(Provenance::Cor3, p3), DomainError);

    CorollaryParams p4;
    p4.C = C;
    p4.D = D;
    p4.N = 2;
    p4.eps_const = 0.1;
    p4.f_expr = parse("exp(-t^2)");
    const Envelope c4 = corollary_envelope(Provenance::Cor4, p4, {1025, 1.05});
    CHECK(c4.constant("D_cor4") == D + 1);
    CHECK(std::isfinite(c4(0.0)));
    CHECK(c4(1.0) >= c4(0.0));
    p4.D = 2.0;
    CHECK_THROWS_AS(corollary_envelope(Provenance::Cor4, p4), DomainError);
    CHECK_THROWS_AS(corollary_envelope(Provenance::Thm2, p4), DomainError);
}

TEST_CASE("cor4 tolerance identities") {
    for (int N : {0, 1, 3})
        for (double t : {0.0, 0.5, 4.0}) {
            const double d = cor4_delta(0.2, N);
            CHECK(d == doctest::Approx(0.2 / std::pow(N / std::numbers::e, N)));
            const double closed = cor4_delta_eps0(0.2, N, t);
            CHECK(closed == doctest::Approx(delta_difference([&](double s) { return cor4_eps0(0.2, N, s); }, t)));
            CHECK(closed >= cor4_eps0(0.2, N, t) / 2);
        }
    CHECK_THROWS_AS(cor4_delta(0.0, 1), DomainError);
    CHECK_THROWS_AS(cor4_delta(0.1, -1), DomainError);
}

TEST_CASE("index diagnostic") {
    std::vector<std::pair<double, double>> poly, expo;
    for (double t : {10.0, 100.0, 1000.0}) poly.emplace_back(t, 3 * std::log(t));
    CHECK(index_diagnostic(poly, 1).value == doctest::Approx(3.0));
    CHECK(index_diagnostic(poly, 1).label == "DIAGNOSTIC");
    for (double t : {10.0, 1e3, 1e6}) expo.emplace_back(t, t);
    CHECK(index_diagnostic(expo, 2).value == doctest::Approx(1.0));
    CHECK_THROWS_AS(index_diagnostic({}, 1), DomainError);
    CHECK_THROWS_AS(index_diagnostic({{0.5, 1.0}}, 1), DomainError);
}

TEST_CASE("comparison report margins") {
    ComparisonReport r;
    r.add("a", 2.0, std::log(5.0));
    CHECK(r.pass);
    CHECK(r.rows[0].ln_abs_margin == doctest::Approx(std::log(3.0)));
    r.add("b", -4.0, std::log(1.0));
    CHECK(r.rows[1].ln_abs_margin == doctest::Approx(std::log(5.0)));
    CHECK(r.pass);
    r.add("c", 10.0, std::log(4.0));
    CHECK_FALSE(r.pass);
    CHECK(r.rows[2].margin_negative);
    CHECK(r.csv().find("\nc,") != std::string::npos);
}
