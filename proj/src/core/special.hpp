#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lubgap {

double gamma(double s);

// Exact rational number for index arithmetic (i = j/m tests).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return double(num) / double(den); }
};

// (1/m) Gamma(i - j/m) Gamma(j/m), or 1/m when i = j/m.
double gamma_coeff(double i, double j, double m);
double gamma_coeff(Rational i, Rational j, Rational m);

// c * eps^{-power}, or c * |ln eps| when is_log is set (power is then 0).
struct AsymptoticTerm {
    double coeff = 0.0;
    double power = 0.0;
    bool is_log = false;

    double evaluate(double eps) const;
};

enum class ResidualKind { Bounded, Interval };

struct AsymptoticExpansion {
    std::vector<AsymptoticTerm> terms;
    ResidualKind residual = ResidualKind::Bounded;
    std::vector<AsymptoticTerm> lower;  // only for Interval residuals
    std::vector<AsymptoticTerm> upper;

    double evaluate(double eps) const;  // known terms only
    double lower_bound(double eps) const { return evaluate(eps) + sum(lower, eps); }
    double upper_bound(double eps) const { return evaluate(eps) + sum(upper, eps); }
    bool empty() const { return terms.empty(); }

    // Merge equal powers, drop zero coefficients, sort by descending power
    // with the log term after every positive power.
    void normalize();

    static double sum(const std::vector<AsymptoticTerm>& t, double eps);
    std::string to_string() const;
};

void normalize_terms(std::vector<AsymptoticTerm>& t);

// Phi_{ij}^{(m)}(r; eps) = int_0^r t^j / (eps + t^m)^i dt.
double phi(double i, double j, double m, double r, double eps);

// Leading behaviour of Phi as eps -> 0.
AsymptoticExpansion phi_leading(double i, double j, double m);

// Psi_{ij}(r; eps) = int_0^r (t + s)^j / (eps + t^2)^i dt.
double psi(double i, double j, double s, double r, double eps);

}  // namespace lubgap
