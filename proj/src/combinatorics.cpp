#include "whitney/combinatorics.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "whitney/errors.hpp"

namespace whitney {

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt stirling2(unsigned n, unsigned m) {
    if (m > n) throw DomainError("stirling2 requires m <= n");
    // row-by-row recurrence S(i+1,j) = j S(i,j) + S(i,j-1)
    std::vector<BigInt> row(m + 1, 0);
    row[0] = 1;
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = std::min(i + 1, m); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[m];
}

BigInt bell_number(unsigned n) {
    BigInt sum = 0;
    for (unsigned m = 0; m <= n; ++m) sum += stirling2(n, m);
    return sum;
}

namespace {

using Terms = std::map<std::vector<unsigned>, BigInt>;

// B_{k,n} over y_1..y_len, memoized; len is fixed per table.
class BellTable {
public:
    const Terms& get(unsigned k, unsigned n) {
        std::lock_guard lock(mu_);
        return compute(k, n);
    }

private:
    const Terms& compute(unsigned k, unsigned n) {
        auto key = std::make_pair(k, n);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Terms out;
        if (k == 0 && n == 0) {
            out.emplace(std::vector<unsigned>{}, 1);
        } else if (k >= 1 && k <= n) {
            // B_{n,k} = sum_{i=1}^{n-k+1} C(n-1,i-1) y_i B_{n-i,k-1}
            for (unsigned i = 1; i + k <= n + 1; ++i) {
                const Terms& sub = compute(k - 1, n - i);
                BigInt c = binomial(n - 1, i - 1);
                for (const auto& [exps, coeff] : sub) {
                    std::vector<unsigned> e = exps;
                    if (e.size() < i) e.resize(i, 0);
                    e[i - 1] += 1;
                    out[e] += c * coeff;
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::mutex mu_;
    std::map<std::pair<unsigned, unsigned>, Terms> memo_;
};

BellTable& bell_table() {
    static BellTable table;
    return table;
}

}  // namespace

BigInt BellPolynomial::at_ones() const {
    BigInt s = 0;
    for (const auto& [e, c] : terms) s += c;
    return s;
}

double BellPolynomial::evaluate(std::span<const double> y) const {
    if (y.size() < variables()) throw DomainError("too few Bell polynomial arguments");
    double sum = 0.0;
    for (const auto& [e, c] : terms) {
        double term = c.convert_to<double>();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term *= std::pow(y[i], static_cast<int>(e[i]));
        sum += term;
    }
    return sum;
}

BellPolynomial bell_polynomial(unsigned m, unsigned n) {
    if (m > n) throw DomainError("bell_polynomial requires m <= n");
    BellPolynomial p;
    p.m = m;
    p.n = n;
    const unsigned vars = p.variables();
    for (const auto& [e, c] : bell_table().get(m, n)) {
        std::vector<unsigned> padded(vars, 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] && i >= vars) throw DomainError("Bell monomial outside variable range");
            if (i < vars) padded[i] = e[i];
        }
        p.terms[padded] += c;
    }
    return p;
}

double faa_di_bruno(const Jet<double>& g_jet, const Jet<double>& f_jet, unsigned n) {
    if (g_jet.order() < n || f_jet.order() < n) throw DomainError("jet order below requested derivative");
    if (n == 0) return g_jet[0];
    std::vector<double> y(n);
    for (unsigned i = 0; i < n; ++i) y[i] = f_jet[i + 1];
    double sum = 0.0;
    for (unsigned m = 1; m <= n; ++m) sum += g_jet[m] * bell_polynomial(m, n).evaluate(y);
    return sum;
}

double composition_bound(double F, double G, unsigned n) {
    if (!(F >= 1.0)) throw DomainError("composition_bound requires F >= 1");
    if (n < 1) throw DomainError("composition_bound requires n >= 1");
    return G * std::pow(n * F, static_cast<double>(n));
}

FactorialSandwich factorial_sandwich(unsigned n) {
    if (n < 1) throw DomainError("factorial_sandwich requires n >= 1");
    const double e = std::numbers::e;
    return {e * std::pow(n / e, n), (e * e / 4.0) * std::pow((n + 1) / e, n + 1.0)};
}

double cor14_lower(double t, double rho) {
    const double e = std::numbers::e;
    if (!(t > 0.0)) throw DomainError("cor14_lower requires t > 0");
    if (!(rho >= e * t)) throw DomainError("cor14_lower requires rho >= e t");
    return std::pow(t, rho) * (4.0 / (e * e)) * std::pow(e / (rho + 2.0), rho + 2.0);
}

double delta_difference(const std::function<double(double)>& phi, double t) { return phi(t) - phi(t + 1.0); }

double DifferenceProbe::slope(double s, double t) const {
    if (s == t) throw DomainError("difference quotient needs s != t");
    if (s < lo || s > hi || t < lo || t > hi) throw DomainError("difference probe outside interval");
    return (phi(s) - phi(t)) / (s - t);
}

}  // namespace whitney
