#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>

#include <boost/container/small_vector.hpp>

#include "whitney/errors.hpp"

namespace whitney {

// Derivatives (f(t), f'(t), ..., f^(k)(t)) at a point, in natural units.
template <typename T = double>
class Jet {
public:
    using value_type = T;

    Jet() : d_(1, T(0)) {}
    Jet(T point, std::size_t order) : point_(point), d_(order + 1, T(0)) {}
    Jet(T point, std::initializer_list<T> entries) : point_(point), d_(entries.begin(), entries.end()) {
        if (d_.empty()) d_.push_back(T(0));
    }

    static Jet constant(T point, std::size_t order, T value) {
        Jet j(point, order);
        j.d_[0] = value;
        return j;
    }
    static Jet variable(T point, std::size_t order) {
        Jet j(point, order);
        j.d_[0] = point;
        if (order >= 1) j.d_[1] = T(1);
        return j;
    }

    const T& point() const { return point_; }
    std::size_t order() const { return d_.size() - 1; }
    const T& operator[](std::size_t n) const { return d_[n]; }
    T& operator[](std::size_t n) { return d_[n]; }
    const T& value() const { return d_[0]; }
    std::span<const T> coeffs() const { return {d_.data(), d_.size()}; }

    Jet truncated(std::size_t k) const {
        Jet j(point_, k);
        for (std::size_t n = 0; n <= k && n < d_.size(); ++n) j.d_[n] = d_[n];
        return j;
    }

    bool is_zero() const {
        for (const auto& x : d_)
            if (x != T(0)) return false;
        return true;
    }

    Jet& operator+=(const Jet& o) {
        check_same_order(o);
        for (std::size_t n = 0; n < d_.size(); ++n) d_[n] += o.d_[n];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check_same_order(o);
        for (std::size_t n = 0; n < d_.size(); ++n) d_[n] -= o.d_[n];
        return *this;
    }
    Jet& operator*=(const T& s) {
        for (auto& x : d_) x *= s;
        return *this;
    }
    Jet& operator/=(const T& s) {
        for (auto& x : d_) x /= s;
        return *this;
    }
    Jet& operator+=(const T& s) {
        d_[0] += s;
        return *this;
    }
    Jet& operator-=(const T& s) {
        d_[0] -= s;
        return *this;
    }

    void check_same_order(const Jet& o) const {
        if (o.d_.size() != d_.size()) throw DomainError("jet orders differ");
    }

private:
    T point_{};
    boost::container::small_vector<T, 6> d_;
};

namespace detail {

// Row n of Pascal's triangle, as T.
template <typename T>
void binomial_row(std::size_t n, boost::container::small_vector<T, 8>& row) {
    row.assign(n + 1, T(1));
    for (std::size_t k = 1; k < n; ++k) row[k] = row[k - 1] * T(n - k + 1) / T(k);
}

// Derivative form <-> Taylor coefficient form (divide / multiply by n!).
template <typename T>
boost::container::small_vector<T, 8> to_taylor(const Jet<T>& a) {
    boost::container::small_vector<T, 8> c(a.order() + 1);
    T fact(1);
    for (std::size_t n = 0; n <= a.order(); ++n) {
        if (n > 0) fact *= T(n);
        c[n] = a[n] / fact;
    }
    return c;
}

template <typename T>
Jet<T> from_taylor(const T& point, const boost::container::small_vector<T, 8>& c) {
    Jet<T> j(point, c.size() - 1);
    T fact(1);
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (n > 0) fact *= T(n);
        j[n] = c[n] * fact;
    }
    return j;
}

}  // namespace detail

template <typename T>
Jet<T> operator+(Jet<T> a, const Jet<T>& b) { return a += b; }
template <typename T>
Jet<T> operator-(Jet<T> a, const Jet<T>& b) { return a -= b; }
template <typename T>
Jet<T> operator-(Jet<T> a) { return a *= T(-1); }
template <typename T>
Jet<T> operator*(Jet<T> a, const T& s) { return a *= s; }
template <typename T>
Jet<T> operator*(const T& s, Jet<T> a) { return a *= s; }
template <typename T>
Jet<T> operator/(Jet<T> a, const T& s) { return a /= s; }
template <typename T>
Jet<T> operator+(Jet<T> a, const T& s) { return a += s; }
template <typename T>
Jet<T> operator-(Jet<T> a, const T& s) { return a -= s; }

// Leibniz: (fg)^(n) = sum_k C(n,k) f^(k) g^(n-k).
template <typename T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
    a.check_same_order(b);
    Jet<T> r(a.point(), a.order());
    boost::container::small_vector<T, 8> row;
    for (std::size_t n = 0; n <= a.order(); ++n) {
        detail::binomial_row<T>(n, row);
        T acc(0);
        for (std::size_t k = 0; k <= n; ++k) acc += row[k] * a[k] * b[n - k];
        r[n] = acc;
    }
    return r;
}

template <typename T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
    a.check_same_order(b);
    if (b[0] == T(0)) throw DomainError("jet division by zero");
    auto x = detail::to_taylor(a);
    auto y = detail::to_taylor(b);
    boost::container::small_vector<T, 8> q(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        T acc = x[n];
        for (std::size_t k = 1; k <= n; ++k) acc -= y[k] * q[n - k];
        q[n] = acc / y[0];
    }
    return detail::from_taylor(a.point(), q);
}

template <typename T>
Jet<T> operator/(const T& s, const Jet<T>& b) {
    return Jet<T>::constant(b.point(), b.order(), s) / b;
}

template <typename T>
Jet<T> exp(const Jet<T>& a) {
    using std::exp;
    auto x = detail::to_taylor(a);
    boost::container::small_vector<T, 8> e(x.size());
    e[0] = exp(x[0]);
    // n e_n = sum_{k=1}^n k x_k e_{n-k}
    for (std::size_t n = 1; n < x.size(); ++n) {
        T acc(0);
        for (std::size_t k = 1; k <= n; ++k) acc += T(k) * x[k] * e[n - k];
        e[n] = acc / T(n);
    }
    return detail::from_taylor(a.point(), e);
}

template <typename T>
Jet<T> log(const Jet<T>& a) {
    using std::log;
    if (!(a[0] > T(0))) throw DomainError("log of nonpositive value");
    auto x = detail::to_taylor(a);
    boost::container::small_vector<T, 8> l(x.size());
    l[0] = log(x[0]);
    // x_0 n l_n = n x_n - sum_{k=1}^{n-1} k l_k x_{n-k}
    for (std::size_t n = 1; n < x.size(); ++n) {
        T acc = T(n) * x[n];
        for (std::size_t k = 1; k < n; ++k) acc -= T(k) * l[k] * x[n - k];
        l[n] = acc / (T(n) * x[0]);
    }
    return detail::from_taylor(a.point(), l);
}

template <typename T>
void sincos(const Jet<T>& a, Jet<T>& s_out, Jet<T>& c_out) {
    using std::cos;
    using std::sin;
    auto x = detail::to_taylor(a);
    boost::container::small_vector<T, 8> s(x.size()), c(x.size());
    s[0] = sin(x[0]);
    c[0] = cos(x[0]);
    for (std::size_t n = 1; n < x.size(); ++n) {
        T as(0), ac(0);
        for (std::size_t k = 1; k <= n; ++k) {
            as += T(k) * x[k] * c[n - k];
            ac += T(k) * x[k] * s[n - k];
        }
        s[n] = as / T(n);
        c[n] = -ac / T(n);
    }
    s_out = detail::from_taylor(a.point(), s);
    c_out = detail::from_taylor(a.point(), c);
}

template <typename T>
Jet<T> sin(const Jet<T>& a) {
    Jet<T> s, c;
    sincos(a, s, c);
    return s;
}

template <typename T>
Jet<T> cos(const Jet<T>& a) {
    Jet<T> s, c;
    sincos(a, s, c);
    return c;
}

template <typename T>
Jet<T> sqrt(const Jet<T>& a) {
    using std::sqrt;
    if (!(a[0] > T(0))) throw DomainError("sqrt of nonpositive value");
    auto x = detail::to_taylor(a);
    boost::container::small_vector<T, 8> r(x.size());
    r[0] = sqrt(x[0]);
    // 2 r_0 r_n = x_n - sum_{k=1}^{n-1} r_k r_{n-k}
    for (std::size_t n = 1; n < x.size(); ++n) {
        T acc = x[n];
        for (std::size_t k = 1; k < n; ++k) acc -= r[k] * r[n - k];
        r[n] = acc / (T(2) * r[0]);
    }
    return detail::from_taylor(a.point(), r);
}

template <typename T>
Jet<T> pow(const Jet<T>& a, int p) {
    if (p < 0) return T(1) / pow(a, -p);
    Jet<T> result = Jet<T>::constant(a.point(), a.order(), T(1));
    Jet<T> base = a;
    while (p > 0) {
        if (p & 1) result = result * base;
        p >>= 1;
        if (p) base = base * base;
    }
    return result;
}

// Jet of g(f(t)) from the jet of g at f(t) and the jet of f at t, by series composition.
template <typename T>
Jet<T> compose(const Jet<T>& outer, const Jet<T>& inner) {
    inner.check_same_order(outer);
    auto g = detail::to_taylor(outer);
    auto f = detail::to_taylor(inner);
    f[0] = T(0);
    const std::size_t k = f.size();
    // Horner on truncated series: sum_m g_m (f - f0)^m
    boost::container::small_vector<T, 8> acc(k, T(0));
    for (std::size_t m = k; m-- > 0;) {
        boost::container::small_vector<T, 8> next(k, T(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 1; i + j < k; ++j) next[i + j] += acc[i] * f[j];
        next[0] += g[m];
        acc = std::move(next);
    }
    return detail::from_taylor(inner.point(), acc);
}

}  // namespace whitney
