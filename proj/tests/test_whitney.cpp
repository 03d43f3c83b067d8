#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>

#include "whitney/approximant.hpp"
#include "whitney/errors.hpp"
#include "whitney/scheme.hpp"
#include "whitney/serialization.hpp"

using namespace whitney;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

ProblemSpec make_spec(const char* f, const char* eps, const char* rho, DomainCase c, double delta) {
    return ProblemSpec::from_expressions(parse(f), parse(eps), parse(rho), std::nullopt, c, delta);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

const Approximant& practical_sin() {
    static const Approximant g =
        Approximant::build(make_spec("sin(t)", "1/(2*(1+t))", "0", DomainCase::R, kSqrt2), 3, {Mode::Practical});
    return g;
}

const Approximant& certified_sin() {
    static const Approximant g =
        Approximant::build(make_spec("sin(t)", "1/(2*(1+t))", "0", DomainCase::R, kSqrt2), 3, {Mode::Certified});
    return g;
}

}  // namespace

TEST_CASE("scheme, case R") {
    const ProblemSpec spec = make_spec("sin(t)", "1/(1+t)", "1", DomainCase::R, kSqrt2);
    const RingScheme s = build_scheme(spec, 2);
    REQUIRE(s.rings() == 5);
    for (int n = 0; n <= 5; ++n) {
        CHECK(s.b[n] == doctest::Approx(kSqrt2 * n));
        CHECK(s.a[n] == doctest::Approx(-kSqrt2 * n));
    }
    for (int n = 0; n <= 4; ++n) {
        CHECK(s.eps_n[n] == doctest::Approx(1.0 / (1.0 + kSqrt2 * (n + 1))));
        CHECK(s.r_n[n] == 1);
        CHECK(s.rho_n[n] == doctest::Approx(1.0));
        CHECK(s.k_n[n] == std::max<long long>(1, n + 2));
    }
    for (const SchemeCheck& c : check_scheme(s)) CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("scheme, case Rpos") {
    const ProblemSpec spec = make_spec("1/(1+t)", "1/(1+t)", "0", DomainCase::Rpos, 1.0);
    const RingScheme s = build_scheme(spec, 2);
    CHECK(s.a[2] == doctest::Approx(1.0 / 3.0));
    CHECK(s.b[2] == doctest::Approx(3.0));
    CHECK(s.rho_n[1] == doctest::Approx(0.5 / 36.0));
    for (int n = 0; n <= 4; ++n) {
        const double rho = 0.5 / std::pow((n + 1.0) * (n + 2.0), 2);
        CHECK(s.k_n[n] == std::max<long long>(static_cast<long long>(std::ceil(1.0 / rho)), n + 2));
    }
    for (const SchemeCheck& c : check_scheme(s)) CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("scheme rejections") {
    CHECK_THROWS_AS(build_scheme(make_spec("sin(t)", "0.5", "0", DomainCase::R, kSqrt2), 2), DomainError);
    CHECK_THROWS_AS(build_scheme(make_spec("sin(t)", "1/(1+t)", "1-1/(1+t)", DomainCase::R, kSqrt2), 1), DomainError);
    CHECK_THROWS_AS(build_scheme(make_spec("sin(t)", "1/(1+t)", "1/(1+t)", DomainCase::R, kSqrt2), 2), DomainError);
    ProblemSpec capped = make_spec("sin(t)", "1/(1+t)", "t", DomainCase::R, kSqrt2);
    capped.r = 2;
    CHECK_THROWS_AS(build_scheme(capped, 2), DomainError);
}

TEST_CASE("closed-form rings agree with populated rings") {
    for (DomainCase c : {DomainCase::R, DomainCase::Rpos}) {
        const double delta = c == DomainCase::R ? kSqrt2 : std::sqrt(0.5);
        const RingScheme s = build_scheme(make_spec("1/(1+t)", "1/(1+t)", "0", c, delta), 3);
        for (int n = 0; n < s.rings(); ++n) {
            CHECK(RingScheme::a_of(c, delta, n) == doctest::Approx(s.a[n]));
            CHECK(RingScheme::b_of(c, delta, n) == doctest::Approx(s.b[n]));
            CHECK(RingScheme::k_of(c, delta, n) == s.k_n[n]);
        }
    }
}

TEST_CASE("ledger rows for rho = 0") {
    const Approximant& g = certified_sin();
    auto eps = [](double t) { return 1.0 / (2.0 * (1.0 + t)); };
    const auto& L = g.ledger();
    REQUIRE(L.size() == 3);
    for (const LedgerRow& row : L) {
        CHECK(row.r_n == 0);
        CHECK(row.log_D.at(0) == 0.0);
        CHECK(row.log_N_next == doctest::Approx((row.n + 2) * std::numbers::ln2));
    }
    CHECK(L[0].delta == doctest::Approx((eps(kSqrt2) - eps(2 * kSqrt2)) / 16.0).epsilon(1e-12));
    CHECK(L[0].delta <= (eps(kSqrt2) - eps(2 * kSqrt2)) / 16.0);
    for (std::size_t n = 0; n + 1 < L.size(); ++n) {
        CHECK(L[n + 1].log_mu >= L[n].log_mu);
        CHECK(2 * L[n + 1].delta <= L[n].delta);
    }
    CHECK(L[0].log_mu >= 0.0);
    for (const LedgerCheck& c : g.check_ledger()) CHECK_MESSAGE(c.pass, c.name << ": " << c.detail);
}

TEST_CASE("zero function gives the zero approximant") {
    const Approximant g = Approximant::build(make_spec("0", "1/(1+t)", "1", DomainCase::R, kSqrt2), 3);
    const Interval K = g.protected_region();
    for (double t : linspace(K.lo, K.hi, 41)) {
        CHECK(g.eval_jet(t, 1).is_zero());
        for (int n = 0; n < g.stages(); ++n) CHECK(g.h_jet(n, t, 1).is_zero());
    }
    const VerifyReport r = g.verify(linspace(K.lo, K.hi, 41), 1);
    CHECK(r.pass);
    for (const VerifyRow& row : r.rows) CHECK(row.deviation == 0.0);
    CHECK(g.eval_complex({0.5, 0.5}).built.log_magnitude == kNegInf);
}

TEST_CASE("stage supports and protected region") {
    const Approximant& g = practical_sin();
    const Interval K2{-2 * kSqrt2, 2 * kSqrt2};
    const Interval s0 = g.stage_fn(0).support;
    CHECK(s0.lo >= K2.lo - 1e-12);
    CHECK(s0.hi <= K2.hi + 1e-12);
    for (int n = 0; n < g.stages(); ++n) {
        const Interval K = g.scheme().K(n + 2);
        for (double t : {K.lo - 0.01, K.hi + 0.01, K.lo - 1.0, K.hi + 1.0}) CHECK(g.h_jet(n, t, 0)[0] == 0.0);
        const Interval L0 = g.scheme().K(n + 1);
        // phi_n = 1 on the ring L_n
        for (double t : linspace(g.scheme().b[n], L0.hi, 9)) CHECK(g.window(n).jet(t, 0)[0] == doctest::Approx(1.0));
    }
    const Interval P = g.protected_region();
    CHECK(P.lo == doctest::Approx(-kSqrt2));
    CHECK(P.hi == doctest::Approx(kSqrt2));
}

TEST_CASE("practical run verifies on the protected region and refuses outside") {
    const Approximant& g = practical_sin();
    const Interval P = g.protected_region();
    const VerifyReport r = g.verify(linspace(P.lo, P.hi, 201), 1);
    CHECK(r.pass);
    CHECK(r.worst_ratio < 1.0);
    CHECK_THROWS_AS(g.verify({P.hi + 0.5}, 0), ProtectedRegionError);
    try {
        g.verify({P.hi + 0.5}, 0);
    } catch (const ProtectedRegionError& e) {
        CHECK(e.lo() == doctest::Approx(P.lo));
        CHECK(e.hi() == doctest::Approx(P.hi));
    }
}

TEST_CASE("adding a stage changes the value by at most eps_{N-1}/4") {
    const ProblemSpec spec = make_spec("sin(t)", "1/(2*(1+t))", "0", DomainCase::R, kSqrt2);
    const Approximant g3 = Approximant::build(spec, 3);
    const Approximant g4 = Approximant::build(spec, 4);
    const Interval K = g3.scheme().K(2);
    for (double t : linspace(K.lo, K.hi, 21)) {
        const double d = std::abs(g4.eval_jet_unchecked(t, 0)[0] - g3.eval_jet_unchecked(t, 0)[0]);
        CHECK(d <= g3.scheme().eps_n[2] / 4.0);
    }
}

TEST_CASE("eval jet equals the sum of stage jets") {
    const Approximant& g = practical_sin();
    for (double t : {-1.0, 0.2, 1.1}) {
        double sum = 0.0;
        for (int n = 0; n < g.stages(); ++n) sum += g.stage_jet(n, t, 0)[0];
        CHECK(std::abs(g.eval_jet(t, 0)[0] - sum) <= 1e-10 * std::max(1.0, std::abs(sum)));
    }
}

TEST_CASE("complex evaluation") {
    const Approximant& g = practical_sin();
    for (double t : {-1.0, 0.0, 0.9}) {
        const ComplexEval c = g.eval_complex({t, 0.0});
        REQUIRE(c.built.value.has_value());
        CHECK(std::abs(c.built.value->real() - g.eval_jet(t, 0)[0]) <= 1e-10);
    }
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 30; ++i) {
        const std::complex<double> z(u(rng), u(rng) / 4);
        for (int n = 0; n < g.stages(); ++n) {
            const LedgerRow& row = g.ledger()[n];
            const LogComplexValue v = transform_complex(g.stage_fn(n), row.lambda, z);
            CHECK(v.log_magnitude <= std::log(row.h_norm.inflated()) + row.lambda * z.imag() * z.imag() + 1e-9);
        }
    }
    const Approximant gp = Approximant::build(make_spec("1/(1+t)", "1/(2*(1+t))", "0", DomainCase::Rpos, std::sqrt(0.5)), 3);
    CHECK_THROWS_AS(gp.eval_complex({1.0, 2.0}), DomainError);
    CHECK_NOTHROW(gp.eval_complex({1.0, 0.5}));
}

TEST_CASE("ring location") {
    const RingScheme& s = practical_sin().scheme();
    CHECK(s.locate({0.0, 0.0}) == 0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    for (int i = 0; i < 200; ++i) {
        const std::complex<double> z(u(rng), u(rng));
        if (std::abs(z) > 10) continue;
        const long long n = s.locate(z);
        CHECK(s.in_U(z, n));
        for (long long m = 0; m < n; ++m) CHECK_FALSE(s.in_U(z, m));
        CHECK(kSqrt2 * n <= 1 + kSqrt2 * std::abs(z) + 1e-12);
    }
}

TEST_CASE("serialization round trip") {
    const Approximant& g = practical_sin();
    const auto path = std::filesystem::temp_directory_path() / "whitney_roundtrip.json";
    save_approximant(g, path.string());
    const Approximant h = load_approximant(path.string());
    std::filesystem::remove(path);
    CHECK(h.stages() == g.stages());
    CHECK(h.mode() == g.mode());
    CHECK(h.log_tail_constant() == g.log_tail_constant());
    for (int n = 0; n < g.stages(); ++n) {
        CHECK(h.ledger()[n].lambda == g.ledger()[n].lambda);
        CHECK(h.ledger()[n].delta == g.ledger()[n].delta);
    }
    for (double t : linspace(-1.3, 1.3, 7)) {
        const Jet<double> a = g.eval_jet(t, 0), b = h.eval_jet(t, 0);
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
    }
    CHECK(approximant_to_json(h).dump() == approximant_to_json(g).dump());
    CHECK(number_from_json(number_to_json(kPosInf)) == kPosInf);
    CHECK(number_from_json(number_to_json(kNegInf)) == kNegInf);
    CHECK(std::isnan(number_from_json(number_to_json(std::nan("")))));
}

TEST_CASE("bump constants in D_mn") {
    CHECK(log_D(DomainCase::R, 0, 3) == 0.0);
    CHECK(log_D(DomainCase::R, 1, 3) == doctest::Approx(std::log(2048.0)));
    CHECK(log_D(DomainCase::R, 2, 0) == doctest::Approx(std::log(2048.0) + 32 * std::log(2.0)));
    CHECK(log_D(DomainCase::Rpos, 2, 0) == doctest::Approx(log_D(DomainCase::R, 2, 0)));
    CHECK(log_D(DomainCase::Rpos, 1, 2) == doctest::Approx(std::log(2048.0) + 16 * std::log(2.0)));
    CHECK(exact_D(DomainCase::R, 2, 5) == BigInt(2048) * boost::multiprecision::pow(BigInt(2), 32));
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 5; ++m) {
            CHECK(log_D(DomainCase::Rpos, m, n) <= log_D(DomainCase::Rpos, m + 1, n));
            CHECK(log_D(DomainCase::Rpos, m, n) <= log_D(DomainCase::Rpos, m, n + 1));
        }
}
