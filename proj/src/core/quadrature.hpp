#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on intervals, a cumulative
// antiderivative cache for inner integrals, and helpers for graded
// breakpoints near the thin-gap boundary layer.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lubgap {

struct QuadSpec {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    std::vector<double> split_points;  // interior breakpoints, any order
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

template <int K>
struct QuadResultN {
    std::array<double, K> value{};
    std::array<double, K> error{};
    long evaluations = 0;
    bool converged = true;
};

namespace gk {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace gk

// Apply the 7/15 pair on [a, b] to a vector-valued integrand.
template <int K, class F>
void gk15(F& f, double a, double b, std::array<double, K>& kron, std::array<double, K>& err) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    std::array<double, K> gauss{};
    kron.fill(0.0);
    {
        const std::array<double, K> fc = f(c);
        for (int q = 0; q < K; ++q) {
            kron[q] = gk::kWk[7] * fc[q];
            gauss[q] = gk::kWg[3] * fc[q];
        }
    }
    for (int i = 0; i < 7; ++i) {
        const double dx = hw * gk::kXk[i];
        const std::array<double, K> f1 = f(c - dx);
        const std::array<double, K> f2 = f(c + dx);
        for (int q = 0; q < K; ++q) {
            const double s = f1[q] + f2[q];
            kron[q] += gk::kWk[i] * s;
            if (i % 2 == 1) gauss[q] += gk::kWg[i / 2] * s;
        }
    }
    for (int q = 0; q < K; ++q) {
        kron[q] *= hw;
        gauss[q] *= hw;
        err[q] = std::abs(kron[q] - gauss[q]);
    }
}

// Adaptive bisection of the panel with the largest scaled error.  A
// component is converged once err <= max(abs_tol, rel_tol * max(|value|,
// scale)), where scale is the largest component magnitude; this keeps
// components that vanish by symmetry from stalling the refinement.
template <int K, class F>
QuadResultN<K> integrate_1d_vec(F&& f, double a, double b, const QuadSpec& spec) {
    QuadResultN<K> out;
    if (!(a < b)) return out;

    struct Panel {
        double a, b;
        std::array<double, K> v, e;
        double weight;
    };
    std::vector<Panel> panels;
    std::vector<double> cuts{a};
    {
        std::vector<double> sp;
        for (double s : spec.split_points)
            if (s > a && s < b) sp.push_back(s);
        std::sort(sp.begin(), sp.end());
        sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
        cuts.insert(cuts.end(), sp.begin(), sp.end());
    }
    cuts.push_back(b);

    std::array<double, K> total{}, terr{};
    auto evaluate = [&](double lo, double hi) {
        Panel p{lo, hi, {}, {}, 0.0};
        gk15<K>(f, lo, hi, p.v, p.e);
        out.evaluations += 15;
        return p;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        panels.push_back(evaluate(cuts[i], cuts[i + 1]));
        for (int q = 0; q < K; ++q) {
            total[q] += panels.back().v[q];
            terr[q] += panels.back().e[q];
        }
    }

    auto tolerance = [&](int q) {
        double scale = 0.0;
        for (int k = 0; k < K; ++k) scale = std::max(scale, std::abs(total[k]));
        return std::max(spec.abs_tol, spec.rel_tol * std::max(std::abs(total[q]), scale));
    };
    auto converged = [&]() {
        for (int q = 0; q < K; ++q)
            if (!(terr[q] <= tolerance(q))) return false;
        return true;
    };
    auto priority = [&](Panel& p) {
        double w = 0.0;
        for (int q = 0; q < K; ++q) {
            const double t = tolerance(q);
            w = std::max(w, t > 0 ? p.e[q] / t : p.e[q]);
        }
        p.weight = w;
    };

    auto cmp = [&](std::size_t x, std::size_t y) {
        if (panels[x].weight != panels[y].weight) return panels[x].weight < panels[y].weight;
        return panels[x].a > panels[y].a;
    };
    int splits = 0;
    while (!converged()) {
        if (splits >= spec.max_subdivisions) {
            out.converged = false;
            break;
        }
        for (Panel& p : panels) priority(p);
        // Bisect a few of the worst panels per sweep to amortise the scan.
        std::vector<std::size_t> order(panels.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        const std::size_t batch = std::min<std::size_t>(order.size(), 1 + order.size() / 8);
        std::partial_sort(order.begin(), order.begin() + batch, order.end(),
                          [&](std::size_t x, std::size_t y) { return cmp(y, x); });
        std::vector<Panel> fresh;
        std::vector<bool> drop(panels.size(), false);
        for (std::size_t t = 0; t < batch; ++t) {
            Panel& p = panels[order[t]];
            if (t > 0 && p.weight < 1.0 / double(order.size())) break;
            const double mid = 0.5 * (p.a + p.b);
            if (!(mid > p.a && mid < p.b)) continue;
            Panel l = evaluate(p.a, mid);
            Panel r = evaluate(mid, p.b);
            for (int q = 0; q < K; ++q) {
                total[q] += l.v[q] + r.v[q] - p.v[q];
                terr[q] += l.e[q] + r.e[q] - p.e[q];
            }
            drop[order[t]] = true;
            fresh.push_back(l);
            fresh.push_back(r);
            ++splits;
        }
        if (fresh.empty()) {
            out.converged = false;
            break;
        }
        std::vector<Panel> next;
        next.reserve(panels.size() + fresh.size());
        for (std::size_t i = 0; i < panels.size(); ++i)
            if (!drop[i]) next.push_back(panels[i]);
        next.insert(next.end(), fresh.begin(), fresh.end());
        panels.swap(next);
    }

    // Deterministic final summation in left-to-right panel order.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    out.value.fill(0.0);
    out.error.fill(0.0);
    for (const Panel& p : panels) {
        for (int q = 0; q < K; ++q) {
            out.value[q] += p.v[q];
            out.error[q] += p.e[q];
        }
    }
    return out;
}

// Scalar entry point; throws ToleranceError when the budget runs out.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadSpec& spec);

// Breakpoints center +/- scale * 4^k inside (a, b); they concentrate panels
// where an integrand varies on the length scale `scale`.
std::vector<double> graded_splits(double a, double b, double center, double scale);

// Piecewise-Chebyshev representation of F(x) = integral of f from a to x.
// Built once, then evaluated anywhere in [a, b] with error bounded by
// `error_bound()`.
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;
    // The table is refined until its error is below max(rel_tol * int |f|, abs_tol).
    CumulativeIntegral(const std::function<double(double)>& f, double a, double b, double rel_tol,
                       const std::vector<double>& splits = {}, double abs_tol = 0.0);

    double operator()(double x) const;
    double total() const { return offsets_.empty() ? 0.0 : offsets_.back(); }
    double error_bound() const { return error_; }
    std::size_t panels() const { return lo_.size(); }
    double lower() const { return a_; }
    double upper() const { return b_; }

private:
    static constexpr int kNodes = 24;
    static constexpr std::size_t kMaxPanels = 2048;
    double a_ = 0.0, b_ = 0.0, error_ = 0.0;
    std::vector<double> lo_, hi_;
    std::vector<std::array<double, kNodes + 1>> anti_;  // antiderivative coefficients per panel
    std::vector<double> offsets_;                        // F at each panel's right end
};

struct NestedResult : QuadResult {
    double cache_error = 0.0;  // interpolation error bound of the inner table
};

// Integrates outer(x, inner(x)) over [a, b], where inner(x) is the integral
// of `kernel` from `inner_lo` to x served from a CumulativeIntegral table.
NestedResult integrate_nested(const std::function<double(double, double)>& outer,
                              const std::function<double(double)>& kernel, double inner_lo,
                              double a, double b, const QuadSpec& spec);

}  // namespace lubgap
