#include "whitney/approximant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "whitney/errors.hpp"
#include "whitney/logmath.hpp"

namespace whitney {

std::string to_string(Mode m) { return m == Mode::Certified ? "certified" : "practical"; }

Mode mode_from_string(const std::string& s) {
    if (s == "certified") return Mode::Certified;
    if (s == "practical") return Mode::Practical;
    throw DomainError("unknown mode '" + s + "' (expected certified or practical)");
}

double log_D(DomainCase c, int m, int n) {
    if (m == 0) return 0.0;
    const double base = (c == DomainCase::Rpos && n >= 1) ? static_cast<double>(m) * n : static_cast<double>(m);
    return std::log(kBumpC) + kBumpD * m * std::log(base);
}

BigInt exact_D(DomainCase c, int m, int n) {
    if (m == 0) return BigInt(1);
    const long long base = (c == DomainCase::Rpos && n >= 1) ? static_cast<long long>(m) * n : m;
    return BigInt(static_cast<long long>(kBumpC)) * boost::multiprecision::pow(BigInt(base), 16u * m);
}

Jet<double> StageWindow::jet(double t, std::size_t k) const {
    Jet<double> out(t, k);
    for (std::size_t i = 0; i < humps.size(); ++i)
        if (pieces[i].lo < t && t < pieces[i].hi) out += hump_jet(humps[i], t, k);
    return out;
}

StageWindow stage_window(const RingScheme& s, int n) {
    StageWindow w;
    if (n == 0) {
        w.humps.push_back(BumpSpec::hump(s.a.at(2), s.a.at(1), s.b.at(1), s.b.at(2)));
    } else {
        w.humps.push_back(BumpSpec::hump(s.a.at(n + 2), s.a.at(n + 1), s.a.at(n), s.a.at(n - 1)));
        w.humps.push_back(BumpSpec::hump(s.b.at(n - 1), s.b.at(n), s.b.at(n + 1), s.b.at(n + 2)));
    }
    for (const auto& h : w.humps) w.pieces.push_back({h.a + h.eps(), h.b_star - h.eps_star()});
    return w;
}

namespace {

struct CacheKey {
    int stage;
    std::uint64_t t;
    std::size_t k;
    bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
    std::size_t operator()(const CacheKey& key) const {
        std::size_t h = std::hash<std::uint64_t>{}(key.t);
        h ^= std::hash<int>{}(key.stage) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::size_t>{}(key.k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

double lambda_from_log(double log_lambda) { return log_lambda > 709.0 ? kPosInf : std::exp(log_lambda); }

// Running max over orders: out[m] = max_{j<=m} per_order[j].
std::vector<double> cumulative(const std::vector<double>& per_order) {
    std::vector<double> out(per_order.size());
    double run = 0.0;
    for (std::size_t m = 0; m < per_order.size(); ++m) out[m] = run = std::max(run, per_order[m]);
    return out;
}

// Sampled ||fn||_m over several pieces, samples proportional to length.
NormEstimate sample_pieces(const JetFn& fn, const std::vector<Interval>& pieces, int m, const BuildOptions& opts) {
    NormEstimate total;
    total.inflation = opts.inflation;
    total.order = m;
    total.per_order.assign(m + 1, 0.0);
    total.lo = pieces.front().lo;
    total.hi = pieces.front().hi;
    for (const auto& p : pieces) {
        SamplingOptions so;
        so.inflation = opts.inflation;
        so.samples = std::max(opts.min_piece_samples,
                              static_cast<std::size_t>(std::ceil(opts.samples_per_unit * p.length())));
        NormEstimate e = sup_norm(fn, p.lo, p.hi, m, so);
        total.samples += e.samples;
        total.lower = std::max(total.lower, e.lower);
        for (int j = 0; j <= m; ++j) total.per_order[j] = std::max(total.per_order[j], e.per_order[j]);
        total.lo = std::min(total.lo, p.lo);
        total.hi = std::max(total.hi, p.hi);
    }
    return total;
}

double sup_len_ratio(const RingScheme& s) {
    // sup_{n>=1} (b_{n+2} - a_{n+2}) / n, attained at n = 1 in both cases
    double best = 0.0;
    for (long long n = 1; n <= 64; ++n)
        best = std::max(best, (RingScheme::b_of(s.domain, s.delta, n + 2) - RingScheme::a_of(s.domain, s.delta, n + 2)) / n);
    return best;
}

}  // namespace

struct Approximant::Core {
    ProblemSpec spec;
    RingScheme scheme;
    Mode mode = Mode::Practical;
    std::vector<LedgerRow> ledger;
    std::vector<StageWindow> windows;
    std::vector<SupportedFn> fns;
    double log_c_star = kNegInf;
    double log_chain_c = kNegInf;
    std::size_t cache_capacity = 1u << 18;

    mutable std::mutex mu;
    mutable std::unordered_map<CacheKey, Jet<double>, CacheKeyHash> cache;

    Jet<double> g(int m, double t, std::size_t k) const {
        return transform_jet(fns[m], ledger[m].lambda, t, k);
    }

    Jet<double> h(int n, double t, std::size_t k) const {
        Jet<double> phi = windows[n].jet(t, k);
        if (phi.is_zero() || spec.f_zero) return Jet<double>(t, k);
        const CacheKey key{n, std::bit_cast<std::uint64_t>(t), k};
        {
            std::lock_guard lock(mu);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        // Concurrent misses may compute the same entry twice; the values are identical.
        Jet<double> r = spec.f(t, k);
        for (int m = 0; m < n; ++m) r -= g(m, t, k);
        Jet<double> v = phi * r;
        std::lock_guard lock(mu);
        if (cache.size() < cache_capacity) cache.emplace(key, v);
        return v;
    }

    void add_stage_fn(int n) {
        SupportedFn fn;
        const Core* self = this;
        fn.eval = [self, n](double t, std::size_t k) { return self->h(n, t, k); };
        fn.pieces = windows[n].pieces;
        fn.support = {fn.pieces.front().lo, fn.pieces.back().hi};
        for (const auto& p : fn.pieces) {
            fn.support.lo = std::min(fn.support.lo, p.lo);
            fn.support.hi = std::max(fn.support.hi, p.hi);
        }
        fn.identically_zero = spec.f_zero;
        fns.push_back(std::move(fn));
    }
};

Approximant Approximant::build(const ProblemSpec& spec, int N, const BuildOptions& opts) {
    if (N < 1) throw DomainError("build_approximant requires at least one stage");
    Approximant out;
    out.core_ = std::make_shared<Core>();
    Core& c = *out.core_;
    c.spec = spec;
    c.mode = opts.mode;
    c.cache_capacity = opts.cache_capacity;
    const int Ns = std::max(N, 2);
    c.scheme = opts.profile_scheme ? build_scheme_from_profile(spec, Ns) : build_scheme(spec, Ns);
    const RingScheme& s = c.scheme;

    // delta_n = (eps_n - eps_{n+1}) / (4 N_{n+1}), rounded down until the exact ledger inequality holds
    std::vector<double> delta(N), log_delta(N), log_N_next(N);
    for (int n = 0; n < N; ++n) {
        const int m1 = s.r_n[n + 1];
        log_N_next[n] = (n + 2) * std::numbers::ln2 + log_D(s.domain, m1, n + 1);
        const double gap = s.eps_n[n] - s.eps_n[n + 1];
        if (!(gap > 0.0)) throw DomainError("eps_n is not strictly decreasing at ring " + std::to_string(n));
        log_delta[n] = std::log(gap) - 2.0 * std::numbers::ln2 - log_N_next[n];
        double d = std::exp(log_delta[n]);
        if (!(d > 0.0)) throw PreconditionError("delta_" + std::to_string(n) + " underflows double precision");
        const BigInt Nx = (BigInt(1) << (n + 2)) * exact_D(s.domain, m1, n + 1);
        const BigRational budget = (BigRational(s.eps_n[n]) - BigRational(s.eps_n[n + 1])) / 4;
        while (BigRational(d) * BigRational(Nx) > budget) d = std::nextafter(d, 0.0);
        if (n > 0)
            while (2.0 * d > delta[n - 1]) d = std::nextafter(d, 0.0);
        delta[n] = d;
        log_delta[n] = std::log(d);
    }

    std::vector<double> f_run;
    double prev_lambda = 0.0;
    for (int n = 0; n < N; ++n) {
        LedgerRow row;
        row.n = n;
        row.r_n = s.r_n[n];
        row.eps_n = s.eps_n[n];
        row.eps_next = s.eps_n[n + 1];
        const int top = row.r_n + 1;
        for (int m = 0; m <= top; ++m) row.log_D.push_back(log_D(s.domain, m, n));
        row.log_N_next = log_N_next[n];
        row.delta = delta[n];
        row.log_delta = log_delta[n];

        c.windows.push_back(stage_window(s, n));
        const StageWindow& w = c.windows.back();
        JetFn phi = [&w](double t, std::size_t k) { return w.jet(t, k); };
        NormEstimate pn = sample_pieces(phi, w.pieces, top, opts);
        row.phi_norm = pn.per_order;
        // order 0 is exact (0 <= phi_n <= 1); higher orders are inflated
        double phi_rn = pn.per_order[0];
        for (int m = 1; m <= row.r_n; ++m) phi_rn = std::max(phi_rn, pn.per_order[m] * opts.inflation);
        row.log_M = std::log1p(std::ldexp(phi_rn, row.r_n));

        // ||f||_{K_{n+2}; m}, nondecreasing in n
        std::vector<double> fn_norm(top + 1, 0.0);
        if (!spec.f_zero) {
            SamplingOptions so;
            so.inflation = opts.inflation;
            NormEstimate fe = sup_norm(spec.f, s.a[n + 2], s.b[n + 2], top, so);
            fn_norm = cumulative(fe.per_order);
            for (auto& v : fn_norm) v *= opts.inflation;
        }
        for (int m = 0; m <= top; ++m) {
            if (m < static_cast<int>(f_run.size())) fn_norm[m] = std::max(fn_norm[m], f_run[m]);
        }
        for (int m = static_cast<int>(f_run.size()); m <= top; ++m) f_run.push_back(0.0);
        for (int m = 0; m <= top; ++m) f_run[m] = std::max(f_run[m], fn_norm[m]);
        row.f_norm = fn_norm;
        row.log_G0 = n * std::numbers::ln2 + safe_log(fn_norm[0]);
        row.log_G = n * std::numbers::ln2 + (n + 1) * row.log_D[top] + safe_log(fn_norm[top]);
        row.log_mu = log_add(std::log(128.0 * std::numbers::sqrt2) + 3.0 * (row.log_G - row.log_delta), 0.0);

        c.add_stage_fn(n);
        c.ledger.push_back(row);
        LedgerRow& r = c.ledger.back();
        if (!spec.f_zero) {
            JetFn hn = [&c, n](double t, std::size_t k) { return c.h(n, t, k); };
            r.h_norm = sample_pieces(hn, w.pieces, top, opts);
        } else {
            r.h_norm.per_order.assign(top + 1, 0.0);
            r.h_norm.order = top;
            r.h_norm.inflation = opts.inflation;
        }
        r.norm_samples = r.h_norm.samples;
        const auto hcum = cumulative(r.h_norm.per_order);
        if (opts.mode == Mode::Certified) {
            r.log_lambda = r.log_mu;
        } else {
            double lam = 1.01 * lambda_for_eps(hcum[r.r_n] * opts.inflation, hcum[top] * opts.inflation, r.delta);
            lam = std::max(lam, prev_lambda + 1.0);
            r.log_lambda = std::log(lam);
        }
        r.lambda = lambda_from_log(r.log_lambda);
        prev_lambda = r.lambda;
        c.fns[n].sup = hcum[0] * opts.inflation;
        const double len = s.b[n + 2] - s.a[n + 2];
        r.log_H = std::log(2.0) + 0.5 * (r.log_lambda - std::log(std::numbers::pi)) + safe_log(hcum[0] * opts.inflation) +
                  std::log(len);
        if (n >= 1) {
            const double ratio = r.log_lambda - std::log(static_cast<double>(n));
            r.log_tail_term = (ratio > 709.0 || r.log_H == kNegInf) ? kNegInf : r.log_H - std::exp(ratio);
        } else {
            r.log_tail_term = kNegInf;
        }
    }

    // c_* = max_{n>=1} n^2 H_n e^{-lambda_n/n}; in certified mode also the witness from the chain
    double cs = kNegInf;
    for (const auto& r : c.ledger)
        if (r.n >= 1) cs = std::max(cs, 2.0 * std::log(static_cast<double>(r.n)) + r.log_tail_term);
    for (const auto& r : c.ledger) {
        if (r.log_G0 > kNegInf) {
            c.log_chain_c = 3.0 * std::log(s.eps_n[0]) - 2.0 * r.log_G0;
            break;
        }
    }
    if (c.mode == Mode::Certified && c.log_chain_c > kNegInf)
        cs = std::max(cs, std::log(2.0 / std::sqrt(std::numbers::pi)) + c.log_chain_c + std::log(sup_len_ratio(s)));
    c.log_c_star = cs;
    return out;
}

Approximant Approximant::from_parts(const ProblemSpec& spec, const RingScheme& scheme, Mode mode,
                                    std::vector<LedgerRow> ledger, double log_c_star, double log_chain_c) {
    Approximant out;
    out.core_ = std::make_shared<Core>();
    Core& c = *out.core_;
    c.spec = spec;
    c.scheme = scheme;
    c.mode = mode;
    c.ledger = std::move(ledger);
    c.log_c_star = log_c_star;
    c.log_chain_c = log_chain_c;
    for (std::size_t n = 0; n < c.ledger.size(); ++n) {
        c.windows.push_back(stage_window(scheme, static_cast<int>(n)));
        c.add_stage_fn(static_cast<int>(n));
        c.ledger[n].lambda = lambda_from_log(c.ledger[n].log_lambda);
        if (!c.ledger[n].h_norm.per_order.empty())
            c.fns[n].sup = cumulative(c.ledger[n].h_norm.per_order)[0] * c.ledger[n].h_norm.inflation;
    }
    return out;
}

const ProblemSpec& Approximant::spec() const { return core_->spec; }
const RingScheme& Approximant::scheme() const { return core_->scheme; }
Mode Approximant::mode() const { return core_->mode; }
int Approximant::stages() const { return static_cast<int>(core_->ledger.size()); }
const std::vector<LedgerRow>& Approximant::ledger() const { return core_->ledger; }
const SupportedFn& Approximant::stage_fn(int n) const { return core_->fns.at(n); }
const StageWindow& Approximant::window(int n) const { return core_->windows.at(n); }
double Approximant::log_c_star() const { return core_->log_c_star; }
double Approximant::log_chain_c() const { return core_->log_chain_c; }

double Approximant::log_tail_constant() const {
    return core_->log_c_star + std::log(std::numbers::pi * std::numbers::pi / 6.0);
}

Interval Approximant::protected_region() const {
    const int N = stages();
    if (N < 2) return {0.0, -1.0};
    return core_->scheme.K(N - 2);
}

std::size_t Approximant::cache_size() const {
    std::lock_guard lock(core_->mu);
    return core_->cache.size();
}

Jet<double> Approximant::h_jet(int n, double t, std::size_t k) const { return core_->h(n, t, k); }

Jet<double> Approximant::stage_jet(int n, double t, std::size_t k) const { return core_->g(n, t, k); }

int Approximant::ring_of(double t) const {
    const RingScheme& s = core_->scheme;
    if (s.domain == DomainCase::Rpos && !(t > 0.0)) throw DomainError("t must be positive in case Rpos");
    for (long long n = 0; n < 100000000LL; ++n)
        if (RingScheme::a_of(s.domain, s.delta, n + 1) <= t && t <= RingScheme::b_of(s.domain, s.delta, n + 1))
            return static_cast<int>(n);
    throw DomainError("ring search exhausted");
}

Jet<double> Approximant::eval_jet_unchecked(double t, std::size_t k) const {
    Jet<double> out(t, k);
    for (int n = 0; n < stages(); ++n) out += core_->g(n, t, k);
    return out;
}

Jet<double> Approximant::eval_jet(double t, std::size_t k) const {
    const auto& rn = core_->scheme.r_n;
    const int ring = ring_of(t);
    const int r = ring < static_cast<int>(rn.size()) ? rn[ring] : rn.back();
    if (static_cast<int>(k) > r)
        throw DomainError("order " + std::to_string(k) + " exceeds r_n = " + std::to_string(r) + " at t = " +
                          format_double(t));
    return eval_jet_unchecked(t, k);
}

ComplexEval Approximant::eval_complex(std::complex<double> z) const {
    const RingScheme& s = core_->scheme;
    if (!s.in_domain_U(z)) throw DomainError("z is outside U = {|Im z| < Re z}");
    ComplexEval out;
    std::complex<double> sum(0.0, 0.0);
    bool all_values = true;
    double log_abs_sum = kNegInf;
    for (int n = 0; n < stages(); ++n) {
        LogComplexValue v = transform_complex(core_->fns[n], core_->ledger[n].lambda, z);
        log_abs_sum = log_add(log_abs_sum, v.log_magnitude);
        if (v.value && v.phase_known) sum += *v.value;
        else all_values = false;
    }
    if (all_values) {
        out.built.value = sum;
        out.built.phase_known = true;
        out.built.log_magnitude = safe_log(std::abs(sum));
    } else {
        out.built.phase_known = false;
        out.built.log_magnitude = log_abs_sum;
    }
    out.ring = s.locate(z);
    out.k_n = RingScheme::k_of(s.domain, s.delta, out.ring);
    out.tail_covered = stages() >= out.k_n;
    out.log_tail_bound = out.tail_covered ? log_tail_constant() : kPosInf;
    out.log_total_bound = log_add(out.built.log_magnitude, out.log_tail_bound);
    return out;
}

VerifyReport Approximant::verify(const std::vector<double>& grid, int kmax) const {
    const Interval P = protected_region();
    for (double t : grid)
        if (!P.contains(t))
            throw ProtectedRegionError("grid point " + format_double(t) + " lies outside the protected region K_{N-2} = [" +
                                           format_double(P.lo) + ", " + format_double(P.hi) + "]",
                                       P.lo, P.hi);
    const ProblemSpec& spec = core_->spec;
    VerifyReport rep;
    for (double t : grid) {
        int korder = static_cast<int>(std::floor(spec.rho_at(t) + 1e-12));
        if (spec.r) korder = std::min(korder, *spec.r);
        korder = std::min(korder, kmax);
        if (korder < 0) continue;
        const Jet<double> g = eval_jet_unchecked(t, korder);
        const Jet<double> f = spec.f_zero ? Jet<double>(t, korder) : spec.f(t, korder);
        const double eps = spec.eps_at(t);
        for (int k = 0; k <= korder; ++k) {
            VerifyRow row{t, k, std::abs(f[k] - g[k]), eps, false};
            row.pass = row.deviation < eps;
            rep.pass = rep.pass && row.pass;
            rep.worst_ratio = std::max(rep.worst_ratio, row.deviation / eps);
            rep.rows.push_back(row);
        }
    }
    return rep;
}

std::vector<LedgerCheck> Approximant::check_ledger(std::size_t grid_per_piece) const {
    const Core& c = *core_;
    const RingScheme& s = c.scheme;
    const int N = stages();
    std::vector<LedgerCheck> out;

    LedgerCheck halving{"2 delta_{n+1} <= delta_n", true, ""};
    for (int n = 0; n + 1 < N; ++n)
        if (!(2.0 * c.ledger[n + 1].delta <= c.ledger[n].delta)) {
            halving.pass = false;
            halving.detail += "n=" + std::to_string(n) + " ";
        }
    out.push_back(halving);

    LedgerCheck tail{"sum_{m=n}^{N-1} delta_m N_{m+1} <= (eps_n - eps_N)/4 (exact)", true, ""};
    for (int n = 0; n < N; ++n) {
        BigRational sum = 0;
        for (int m = n; m < N; ++m) {
            const BigInt Nx = (BigInt(1) << (m + 2)) * exact_D(s.domain, s.r_n[m + 1], m + 1);
            sum += BigRational(c.ledger[m].delta) * BigRational(Nx);
        }
        const BigRational budget = (BigRational(s.eps_n[n]) - BigRational(s.eps_n[N])) / 4;
        if (sum > budget || budget > BigRational(s.eps_n[n]) / 4) {
            tail.pass = false;
            tail.detail += "n=" + std::to_string(n) + " ";
        }
    }
    out.push_back(tail);

    LedgerCheck mn{"M_n <= N_n", true, ""};
    for (int n = 0; n < N; ++n) {
        const double logN = (n + 1) * std::numbers::ln2 + log_D(s.domain, s.r_n[n], n);
        if (!(c.ledger[n].log_M <= logN)) {
            mn.pass = false;
            mn.detail += "n=" + std::to_string(n) + " ";
        }
    }
    out.push_back(mn);

    LedgerCheck dm{"D_{0n} = 1 and 2^m ||phi_n||_m <= D_{mn}", true, ""};
    for (int n = 0; n < N; ++n) {
        const auto& row = c.ledger[n];
        const auto cum = cumulative(row.phi_norm);
        for (std::size_t m = 0; m < cum.size(); ++m) {
            // m = 0 uses the lower sample: 0 <= phi_n <= 1 holds analytically and D_{0n} = 1 exactly
            const double v = m == 0 ? cum[0] : cum[m] * c.ledger[n].h_norm.inflation;
            if (!(std::log(std::ldexp(v, static_cast<int>(m))) <= row.log_D[m])) {
                dm.pass = false;
                dm.detail += "n=" + std::to_string(n) + ",m=" + std::to_string(m) + " ";
            }
        }
        if (row.log_D[0] != 0.0) dm.pass = false;
    }
    out.push_back(dm);

    LedgerCheck mu{"1 <= mu_n <= mu_{n+1}", true, ""};
    for (int n = 0; n < N; ++n) {
        if (!(c.ledger[n].log_mu >= 0.0)) mu.pass = false;
        if (n + 1 < N && !(c.ledger[n].log_mu <= c.ledger[n + 1].log_mu)) {
            mu.pass = false;
            mu.detail += "n=" + std::to_string(n) + " ";
        }
    }
    out.push_back(mu);

    LedgerCheck supp{"supp h_n within K_{n+2}", true, ""};
    for (int n = 0; n < N; ++n) {
        const Interval K = s.K(n + 2);
        for (const auto& p : c.windows[n].pieces)
            if (!(K.lo <= p.lo && p.hi <= K.hi)) supp.pass = false;
        std::vector<double> probes;
        for (int i = 0; i <= 32; ++i) {
            probes.push_back(K.lo - 1.0 + (K.lo - (K.lo - 1.0)) * i / 32.0);
            probes.push_back(K.hi + 1.0 * i / 32.0);
        }
        const auto& pieces = c.windows[n].pieces;
        if (n >= 1) {
            const Interval inner = s.K(n - 1);
            for (int i = 0; i <= 32; ++i) probes.push_back(inner.lo + inner.length() * i / 32.0);
        }
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) probes.push_back(0.5 * (pieces[i].hi + pieces[i + 1].lo));
        for (double t : probes) {
            bool inside = false;
            for (const auto& p : pieces) inside = inside || (p.lo < t && t < p.hi);
            if (inside) continue;
            if (!c.h(n, t, c.ledger[n].r_n + 1).is_zero()) {
                supp.pass = false;
                supp.detail += "n=" + std::to_string(n) + ",t=" + format_double(t) + " ";
            }
        }
    }
    out.push_back(supp);

    LedgerCheck plateau{"phi_n = 1 on cl(L_n)", true, ""};
    for (int n = 0; n < N; ++n) {
        std::vector<Interval> rings{{s.a[n + 1], s.a[n]}, {s.b[n], s.b[n + 1]}};
        if (n == 0) rings = {{s.a[1], s.b[1]}};
        for (const auto& L : rings)
            for (int i = 0; i <= 64; ++i) {
                double t = L.lo + L.length() * i / 64.0;
                if (c.windows[n].jet(t, 0)[0] != 1.0) {
                    plateau.pass = false;
                    plateau.detail += "n=" + std::to_string(n) + ",t=" + format_double(t) + " ";
                }
            }
    }
    out.push_back(plateau);

    LedgerCheck resid{"||g_n - h_n||_{grid; r_n} <= delta_n", true, ""};
    for (int n = 0; n < N; ++n) {
        const int rn = c.ledger[n].r_n;
        double worst = 0.0;
        for (const auto& p : c.windows[n].pieces) {
            for (std::size_t i = 0; i < grid_per_piece; ++i) {
                double t = p.lo - 0.05 + (p.length() + 0.1) * static_cast<double>(i) / static_cast<double>(grid_per_piece - 1);
                Jet<double> g = c.g(n, t, rn);
                Jet<double> h = c.h(n, t, rn);
                for (int k = 0; k <= rn; ++k) worst = std::max(worst, std::abs(g[k] - h[k]));
            }
        }
        if (!(worst <= c.ledger[n].delta)) {
            resid.pass = false;
            resid.detail += "n=" + std::to_string(n) + " deviation " + format_double(worst) + " ";
        } else {
            resid.detail += "n=" + std::to_string(n) + ":" + format_double(worst) + " ";
        }
    }
    out.push_back(resid);

    LedgerCheck tailc{"H_n e^{-lambda_n/n} <= c_n = c_*/n^2 (n >= 1)", true, ""};
    for (int n = 1; n < N; ++n)
        if (!(c.ledger[n].log_tail_term <= c.log_c_star - 2.0 * std::log(static_cast<double>(n)))) {
            tailc.pass = false;
            tailc.detail += "n=" + std::to_string(n) + " ";
        }
    out.push_back(tailc);
    return out;
}

}  // namespace whitney
