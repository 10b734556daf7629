#include "quadrature.hpp"

#include <numbers>
#include <sstream>

namespace lubgap {

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadSpec& spec) {
    if (!(a <= b)) throw Error(ErrorCode::Domain, "integrate_1d: require a <= b");
    auto g = [&](double x) { return std::array<double, 1>{f(x)}; };
    const QuadResultN<1> r = integrate_1d_vec<1>(g, a, b, spec);
    QuadResult out{r.value[0], r.error[0], r.evaluations};
    if (!r.converged) {
        std::ostringstream os;
        os << "integrate_1d: subdivision budget exhausted on [" << a << ", " << b
           << "], estimate " << out.value << " +/- " << out.error_estimate;
        throw ToleranceError(os.str(), out.value, out.error_estimate);
    }
    return out;
}

std::vector<double> graded_splits(double a, double b, double center, double scale) {
    std::vector<double> s;
    if (!(scale > 0.0)) return s;
    if (center > a && center < b) s.push_back(center);
    for (double d = scale; d < (b - a); d *= 4.0) {
        if (center + d > a && center + d < b) s.push_back(center + d);
        if (center - d > a && center - d < b) s.push_back(center - d);
    }
    std::sort(s.begin(), s.end());
    return s;
}

namespace {

constexpr double kPi = std::numbers::pi;

template <int N>
struct ChebTables {
    std::array<double, N> node{};
    std::array<std::array<double, N>, N> basis{};  // cos(pi j (k + 1/2) / N)
    ChebTables() {
        for (int k = 0; k < N; ++k) node[k] = std::cos(kPi * (k + 0.5) / N);
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) basis[j][k] = std::cos(kPi * j * (k + 0.5) / N);
    }
};

// Chebyshev coefficients of f on [lo, hi] from values at first-kind nodes.
template <int N>
std::array<double, N> cheb_fit(const std::function<double(double)>& f, double lo, double hi) {
    static const ChebTables<N> tab;
    std::array<double, N> vals{}, coef{};
    const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (int k = 0; k < N; ++k) vals[k] = f(c + hw * tab.node[k]);
    for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += vals[k] * tab.basis[j][k];
        coef[j] = 2.0 * s / N;
    }
    coef[0] *= 0.5;
    return coef;
}

double clenshaw(const double* a, int n, double t) {
    double b1 = 0.0, b2 = 0.0;
    for (int j = n - 1; j >= 1; --j) {
        const double b0 = 2.0 * t * b1 - b2 + a[j];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + a[0];
}

}  // namespace

CumulativeIntegral::CumulativeIntegral(const std::function<double(double)>& f, double a, double b,
                                       double rel_tol, const std::vector<double>& splits, double abs_tol)
    : a_(a), b_(b) {
    if (!(a <= b)) throw Error(ErrorCode::Domain, "CumulativeIntegral: require a <= b");
    if (a == b) {
        offsets_.push_back(0.0);
        return;
    }
    // Scale for the absolute budget: integral of |f| with the same breakpoints.
    QuadSpec qs;
    qs.rel_tol = 1e-6;
    qs.split_points = splits;
    double scale;
    try {
        scale = integrate_1d([&](double x) { return std::abs(f(x)); }, a, b, qs).value;
    } catch (const ToleranceError& e) {
        scale = e.value();
    }
    const double budget = std::max({rel_tol * scale, abs_tol, 1e-300});

    struct Pending {
        double lo, hi;
        int depth;
    };
    std::vector<double> cuts{a};
    for (double s : splits)
        if (s > a && s < b) cuts.push_back(s);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);

    std::vector<Pending> stack;
    for (std::size_t i = cuts.size() - 1; i > 0; --i) stack.push_back({cuts[i - 1], cuts[i], 0});
    while (!stack.empty()) {
        const Pending p = stack.back();
        stack.pop_back();
        const auto coef = cheb_fit<kNodes>(f, p.lo, p.hi);
        const double hw = 0.5 * (p.hi - p.lo);
        const double tail = std::abs(coef[kNodes - 1]) + std::abs(coef[kNodes - 2]) +
                            std::abs(coef[kNodes - 3]);
        double size = 0.0;
        for (double c : coef) size += std::abs(c);
        const double local = 2.0 * hw * tail;
        // A tail at roundoff level is as resolved as it will get.
        const double allowed =
            std::max(budget * (p.hi - p.lo) / (b - a), 2.0 * hw * 64.0 * 2.2e-16 * size);
        // Noisy integrands never reach the budget; the panel cap keeps the
        // table finite and the shortfall shows up in error_bound().
        const bool room = lo_.size() + stack.size() < kMaxPanels;
        if (local > allowed && room && p.depth < 40 && p.hi - p.lo > 1e-12 * (b - a)) {
            const double mid = 0.5 * (p.lo + p.hi);
            stack.push_back({mid, p.hi, p.depth + 1});
            stack.push_back({p.lo, mid, p.depth + 1});
            continue;
        }
        // Antiderivative coefficients on t in [-1, 1], zero at t = -1.
        std::array<double, kNodes + 1> anti{};
        for (int j = 1; j <= kNodes; ++j) {
            const double prev = (j - 1 == 0 ? 2.0 * coef[0] : coef[j - 1]);
            const double next = (j + 1 < kNodes ? coef[j + 1] : 0.0);
            anti[j] = hw * (prev - next) / (2.0 * j);
        }
        double at_minus_one = 0.0;
        for (int j = 1; j <= kNodes; ++j) at_minus_one += (j % 2 ? -anti[j] : anti[j]);
        anti[0] = -at_minus_one;
        double panel_total = 0.0;
        for (int j = 0; j <= kNodes; ++j) panel_total += anti[j];
        lo_.push_back(p.lo);
        hi_.push_back(p.hi);
        anti_.push_back(anti);
        offsets_.push_back((offsets_.empty() ? 0.0 : offsets_.back()) + panel_total);
        error_ += local;
    }
}

double CumulativeIntegral::operator()(double x) const {
    if (lo_.empty()) return 0.0;
    if (x <= a_) return 0.0;
    if (x >= b_) return offsets_.back();
    const auto it = std::upper_bound(lo_.begin(), lo_.end(), x);
    const std::size_t i = static_cast<std::size_t>(std::max<long>(0, (it - lo_.begin()) - 1));
    const double t = (2.0 * x - lo_[i] - hi_[i]) / (hi_[i] - lo_[i]);
    const double before = i == 0 ? 0.0 : offsets_[i - 1];
    return before + clenshaw(anti_[i].data(), kNodes + 1, std::clamp(t, -1.0, 1.0));
}

NestedResult integrate_nested(const std::function<double(double, double)>& outer,
                              const std::function<double(double)>& kernel, double inner_lo,
                              double a, double b, const QuadSpec& spec) {
    const double lo = std::min(inner_lo, a);
    const double hi = std::max(inner_lo, b);
    // The table gets a tenth of the relative budget.
    const CumulativeIntegral table(kernel, lo, hi, 0.1 * spec.rel_tol, spec.split_points);
    const double base = table(inner_lo);
    const QuadResult r = integrate_1d(
        [&](double x) { return outer(x, table(x) - base); }, a, b, spec);
    NestedResult out;
    out.value = r.value;
    out.error_estimate = r.error_estimate;
    out.evaluations = r.evaluations;
    out.cache_error = 2.0 * table.error_bound();
    return out;
}

}  // namespace lubgap
