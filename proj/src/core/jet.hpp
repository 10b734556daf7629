#pragma once

// Truncated bivariate Taylor arithmetic.
//
// A Jet<N> stores the Taylor coefficients of a function of (x1, x2) about a
// point up to total degree N.  Arithmetic on jets propagates exact partial
// derivatives, so the coefficient functions of the lubrication fields can be
// written once and differentiated to the order the caller needs.

#include <array>
#include <cmath>

namespace lubgap {

template <int N>
struct Jet {
    static_assert(N >= 0, "negative jet order");
    static constexpr int kSize = (N + 1) * (N + 2) / 2;

    // Coefficients ordered by total degree, then by the power of x2.
    static constexpr int idx(int a, int b) {
        const int d = a + b;
        return d * (d + 1) / 2 + b;
    }

    std::array<double, kSize> c{};

    Jet() = default;
    explicit Jet(double v) { c[0] = v; }

    static Jet variable(double v, int axis) {
        Jet j(v);
        if constexpr (N >= 1) j.c[axis == 0 ? idx(1, 0) : idx(0, 1)] = 1.0;
        return j;
    }

    double val() const { return c[0]; }

    // Partial derivative d^{a+b} f / dx1^a dx2^b at the expansion point.
    double d(int a, int b) const {
        if (a + b > N) return 0.0;
        double f = 1.0;
        for (int k = 2; k <= a; ++k) f *= k;
        for (int k = 2; k <= b; ++k) f *= k;
        return c[idx(a, b)] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int i = 0; i < kSize; ++i) c[i] += o.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int i = 0; i < kSize; ++i) c[i] -= o.c[i];
        return *this;
    }
    Jet& operator*=(double s) {
        for (auto& v : c) v *= s;
        return *this;
    }
    Jet& operator+=(double s) {
        c[0] += s;
        return *this;
    }
};

template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N>
Jet<N> operator-(Jet<N> a) { return a *= -1.0; }
template <int N>
Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <int N>
Jet<N> operator*(double s, Jet<N> a) { return a *= s; }
template <int N>
Jet<N> operator+(Jet<N> a, double s) { return a += s; }
template <int N>
Jet<N> operator+(double s, Jet<N> a) { return a += s; }
template <int N>
Jet<N> operator-(Jet<N> a, double s) { return a += -s; }
template <int N>
Jet<N> operator-(double s, Jet<N> a) {
    a *= -1.0;
    return a += s;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int d1 = 0; d1 <= N; ++d1) {
        for (int b1 = 0; b1 <= d1; ++b1) {
            const double ca = a.c[Jet<N>::idx(d1 - b1, b1)];
            if (ca == 0.0) continue;
            for (int d2 = 0; d1 + d2 <= N; ++d2) {
                for (int b2 = 0; b2 <= d2; ++b2) {
                    r.c[Jet<N>::idx(d1 - b1 + d2 - b2, b1 + b2)] +=
                        ca * b.c[Jet<N>::idx(d2 - b2, b2)];
                }
            }
        }
    }
    return r;
}

// f(g) given the derivatives f^(k)(g0), k = 0..N.
template <int N>
Jet<N> compose(const Jet<N>& g, const std::array<double, N + 1>& fd) {
    Jet<N> delta = g;
    delta.c[0] = 0.0;
    Jet<N> out(fd[0]);
    Jet<N> power(1.0);
    double kfact = 1.0;
    for (int k = 1; k <= N; ++k) {
        power = power * delta;
        kfact *= k;
        out += power * (fd[k] / kfact);
    }
    return out;
}

template <int N>
Jet<N> pow(const Jet<N>& g, double p) {
    const double x = g.val();
    std::array<double, N + 1> fd{};
    double coef = 1.0;
    for (int k = 0; k <= N; ++k) {
        fd[k] = coef * std::pow(x, p - k);
        coef *= (p - k);
    }
    return compose(g, fd);
}

template <int N>
Jet<N> inv(const Jet<N>& g) {
    const double x = g.val();
    std::array<double, N + 1> fd{};
    double v = 1.0 / x;
    for (int k = 0; k <= N; ++k) {
        fd[k] = v;
        v *= -(k + 1) / x;
    }
    return compose(g, fd);
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) { return a * inv(b); }
template <int N>
Jet<N> operator/(double s, const Jet<N>& b) { return inv(b) * s; }
template <int N>
Jet<N> operator/(Jet<N> a, double s) { return a *= (1.0 / s); }

template <int N>
Jet<N> sqrt(const Jet<N>& g) { return pow(g, 0.5); }

// Integer power by repeated multiplication; exact when g is a polynomial.
template <int N>
Jet<N> ipow(const Jet<N>& g, int n) {
    Jet<N> r(1.0);
    for (int k = 0; k < n; ++k) r = r * g;
    return r;
}

// Partial derivative along `axis`; the result loses one order.
template <int N>
Jet<N - 1> diff(const Jet<N>& f, int axis) {
    static_assert(N >= 1, "cannot differentiate an order-0 jet");
    Jet<N - 1> r;
    for (int d = 0; d < N; ++d) {
        for (int b = 0; b <= d; ++b) {
            const int a = d - b;
            r.c[Jet<N - 1>::idx(a, b)] = axis == 0 ? (a + 1) * f.c[Jet<N>::idx(a + 1, b)]
                                                   : (b + 1) * f.c[Jet<N>::idx(a, b + 1)];
        }
    }
    return r;
}

// Drop the highest-order coefficients.
template <int M, int N>
Jet<M> truncate(const Jet<N>& f) {
    static_assert(M <= N, "truncate cannot raise the order");
    Jet<M> r;
    for (int i = 0; i < Jet<M>::kSize; ++i) r.c[i] = f.c[i];
    return r;
}

}  // namespace lubgap
