#pragma once

#include <array>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "fields.hpp"
#include "quadrature.hpp"

namespace lubgap {

// Test stress of sub-flow k at a point.  Zero outside
// Omega_{r/2} = {|x'| < r/4, |x3| < h/2}.
Mat3 dual_tensor(const FieldModel& model, int k, const double* x);

// Half the stress power of the summed field over the gap region |x'| < r.
double energy(const FieldModel& model, const QuadSpec& spec);

using EllMatrix = std::array<std::array<double, 7>, 7>;

// All pairwise l[i, j] over Omega_{r/2}.  The integration constants of q1
// and q2 are taken at x1 = 0 and x2 = 0.
EllMatrix ell_matrix(const FieldModel& model, const QuadSpec& spec);
double ell(int i, int j, const FieldModel& model, const QuadSpec& spec);

struct EllPair {
    int i = 0, j = 0;
    std::vector<double> values;  // one per eps
    double slope = 0.0;          // fitted log-log slope (0 when undefined)
    bool slope_defined = false;
    bool bounded = true;         // slope >= -0.2
};

struct EllReport {
    std::vector<double> eps;  // strictly decreasing
    std::vector<EllPair> pairs;
    bool cauchy_schwarz = true;
    double worst_cs_ratio = 0.0;  // max l_ij^2 / (l_ii l_jj)
};

EllReport err_sweep(const ProblemParams& base, std::vector<double> eps_list, const QuadSpec& spec);

}  // namespace lubgap
