#include "special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"

namespace lubgap {

double gamma(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw Error(ErrorCode::Domain, "gamma: argument must be positive and finite");
    return std::tgamma(s);
}

double gamma_coeff(double i, double j, double m) {
    if (!(m > 1.0)) throw Error(ErrorCode::Domain, "gamma_coeff: require m > 1");
    if (!(i > 0.0) || !(j >= 0.0)) throw Error(ErrorCode::Domain, "gamma_coeff: require i > 0, j >= 0");
    const double q = j / m;
    const double gap = i - q;
    if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(i))) return 1.0 / m;
    if (gap < 0.0) throw Error(ErrorCode::Domain, "gamma_coeff: i - j/m < 0 hits a Gamma pole");
    if (j == 0.0) throw Error(ErrorCode::Domain, "gamma_coeff: Gamma(j/m) has a pole at j = 0");
    return gamma(gap) * gamma(q) / m;
}

double gamma_coeff(Rational i, Rational j, Rational m) {
    if (i.den <= 0 || j.den <= 0 || m.den <= 0)
        throw Error(ErrorCode::Domain, "gamma_coeff: denominators must be positive");
    // i - j/m = (i.num*j.den*m.num - j.num*i.den*m.den) / (i.den*j.den*m.num)
    const __int128 lhs = (__int128)i.num * j.den * m.num;
    const __int128 rhs = (__int128)j.num * i.den * m.den;
    if (lhs == rhs) {
        if (m.value() <= 1.0) throw Error(ErrorCode::Domain, "gamma_coeff: require m > 1");
        return double(m.den) / double(m.num);
    }
    return gamma_coeff(i.value(), j.value(), m.value());
}

double AsymptoticTerm::evaluate(double eps) const {
    if (is_log) return coeff * std::abs(std::log(eps));
    return coeff * std::pow(eps, -power);
}

double AsymptoticExpansion::sum(const std::vector<AsymptoticTerm>& t, double eps) {
    double s = 0.0;
    for (const auto& term : t) s += term.evaluate(eps);
    return s;
}

double AsymptoticExpansion::evaluate(double eps) const { return sum(terms, eps); }

void normalize_terms(std::vector<AsymptoticTerm>& t) {
    std::vector<AsymptoticTerm> out;
    for (const auto& term : t) {
        auto it = std::find_if(out.begin(), out.end(), [&](const AsymptoticTerm& o) {
            return o.is_log == term.is_log && std::abs(o.power - term.power) < 1e-14;
        });
        if (it == out.end())
            out.push_back(term);
        else
            it->coeff += term.coeff;
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const AsymptoticTerm& o) { return o.coeff == 0.0; }),
              out.end());
    // Rank: positive powers descending, then the log, then power 0.
    auto rank = [](const AsymptoticTerm& o) { return o.is_log ? 0.0 : (o.power > 0 ? o.power : -1.0); };
    std::stable_sort(out.begin(), out.end(),
                     [&](const AsymptoticTerm& x, const AsymptoticTerm& y) { return rank(x) > rank(y); });
    t = std::move(out);
}

void AsymptoticExpansion::normalize() {
    normalize_terms(terms);
    if (residual == ResidualKind::Interval) {
        normalize_terms(lower);
        normalize_terms(upper);
        if (lower.empty() && upper.empty()) residual = ResidualKind::Bounded;
    }
}

namespace {

void print_terms(std::ostringstream& os, const std::vector<AsymptoticTerm>& t) {
    if (t.empty()) {
        os << "0";
        return;
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) os << " + ";
        os << t[k].coeff;
        if (t[k].is_log)
            os << "*|ln eps|";
        else if (t[k].power != 0.0)
            os << "*eps^-" << t[k].power;
    }
}

}  // namespace

std::string AsymptoticExpansion::to_string() const {
    std::ostringstream os;
    os.precision(10);
    print_terms(os, terms);
    if (residual == ResidualKind::Interval) {
        os << " + [";
        print_terms(os, lower);
        os << ", ";
        print_terms(os, upper);
        os << "]";
    } else {
        os << " + O(1)";
    }
    return os.str();
}

double phi(double i, double j, double m, double r, double eps) {
    if (!(i > 0.0) || !(j >= 0.0) || !(m > 0.0))
        throw Error(ErrorCode::Domain, "phi: require i > 0, j >= 0, m > 0");
    if (!(eps > 0.0)) throw Error(ErrorCode::Domain, "phi: require eps > 0");
    if (!(r >= 0.0)) throw Error(ErrorCode::Domain, "phi: require r >= 0");
    if (r == 0.0) return 0.0;

    QuadSpec spec;
    spec.rel_tol = 1e-12;
    const double ts = std::pow(eps, 1.0 / m);
    auto f = [&](double t) { return std::pow(t, j) / std::pow(eps + std::pow(t, m), i); };

    if (ts >= r) return integrate_1d(f, 0.0, r, spec).value;

    // Inner layer in the stretched variable t = eps^{1/m} u.
    const double scale = std::pow(eps, (j + 1.0) / m - i);
    const double inner =
        scale * integrate_1d([&](double u) { return std::pow(u, j) / std::pow(1.0 + std::pow(u, m), i); },
                             0.0, 1.0, spec)
                    .value;
    spec.split_points = graded_splits(ts, r, ts, ts);
    spec.split_points.erase(std::remove(spec.split_points.begin(), spec.split_points.end(), ts),
                            spec.split_points.end());
    const double outer = integrate_1d(f, ts, r, spec).value;
    return inner + outer;
}

AsymptoticExpansion phi_leading(double i, double j, double m) {
    if (!(i > 0.0) || !(j >= 0.0) || !(m > 1.0))
        throw Error(ErrorCode::Domain, "phi_leading: require i > 0, j >= 0, m > 1");
    AsymptoticExpansion e;
    const double a = i - (j + 1.0) / m;
    if (std::abs(a) <= 1e-12 * std::max(1.0, i)) {
        e.terms.push_back({1.0 / m, 0.0, true});
    } else if (a > 0.0) {
        // int_0^inf u^j (1 + u^m)^{-i} du = Gamma_{i,j+1} / Gamma(i).
        e.terms.push_back({gamma_coeff(i, j + 1.0, m) / gamma(i), a, false});
    }
    return e;
}

double psi(double i, double j, double s, double r, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::Domain, "psi: require eps > 0");
    if (!(s >= 0.0)) throw Error(ErrorCode::Domain, "psi: require s >= 0");
    if (!(r >= 0.0)) throw Error(ErrorCode::Domain, "psi: require r >= 0");
    if (r == 0.0) return 0.0;
    QuadSpec spec;
    spec.rel_tol = 1e-12;
    const double ts = std::sqrt(eps);
    spec.split_points = graded_splits(0.0, r, 0.0, ts);
    auto f = [&](double t) { return std::pow(t + s, j) / std::pow(eps + t * t, i); };
    return integrate_1d(f, 0.0, r, spec).value;
}

}  // namespace lubgap
