#pragma once

#include <array>
#include <string>
#include <vector>

#include "fields.hpp"
#include "special.hpp"

namespace lubgap {

// Closed-form expansions for each force and torque component.  2D results
// use F[0], F[1] and T[2], matching ForceTorque.
struct TheoremResult {
    int dim = 3;
    std::array<AsymptoticExpansion, 3> F;
    std::array<AsymptoticExpansion, 3> T;
    std::string regime;
    std::vector<std::string> warnings;
};

struct AsymptoticOptions {
    bool intervals = true;           // build sandwich residuals where available
    bool strict_signs = false;       // throw instead of dropping intervals
    bool override_flat_hypothesis = false;
};

// Theorem coefficients for an m-convex profile.
struct CoefficientSet3D {
    double alpha12, alpha34, beta1, beta2;
};
struct CoefficientSet2D {
    double alpha11, alpha33;
    double alpha13 = 0.0, alpha35 = 0.0;  // only defined for m >= 3 and m >= 5/3
    double beta;
};
CoefficientSet3D coefficients_3d(double m, double mu, double r, double R);
CoefficientSet2D coefficients_2d(double m, double mu, double r, double R);

TheoremResult force_asymptotic_3d(const ProblemParams& p, const AsymptoticOptions& o = {});
TheoremResult force_asymptotic_3d_flat(const ProblemParams& p, const AsymptoticOptions& o = {});
TheoremResult force_asymptotic_2d(const ProblemParams& p, const AsymptoticOptions& o = {});
TheoremResult force_asymptotic_2d_flat(const ProblemParams& p, const AsymptoticOptions& o = {});

// Chooses the theorem matching the dimension and profile kind.
TheoremResult force_asymptotic(const ProblemParams& p, const AsymptoticOptions& o = {});

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

// Least-squares slope of log|v| against log eps.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples);

// Solves v = c * g(eps) + d from two samples, with g = eps^{-a}, or |ln eps|
// when `log` is set.
struct LeadingFit {
    double c = 0.0;
    double d = 0.0;
};
LeadingFit fit_leading(double eps1, double v1, double eps2, double v2, double a, bool log = false);

}  // namespace lubgap
