#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualcheck.hpp"
#include "traction.hpp"

namespace lubgap {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    bool pass() const;
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
    int surface_points = 1000;  // per sub-flow, split over both sides
    int interior_points = 200;  // per sub-flow
    int random_configs = 10;
    std::vector<double> eps_list;  // empty: suite default
};

// Boundary values of every sub-flow against the prescribed data.
SuiteResult verify_bc(const ProblemParams& p, const VerifyOptions& o);
// Divergence, analytic gradients against central differences, and the
// momentum balance grad p = 2 mu div D(u) for sub-flows with non-constant pressure.
SuiteResult verify_div(const ProblemParams& p, const VerifyOptions& o);
// T3 against its quadrature error over random motions, and boundedness of
// the off-axis force components of sub-flow 1 (3D only).
SuiteResult verify_parity(const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o);
// Log-log slope of the squeeze force against its theorem rate.
SuiteResult verify_exponents(const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o);
// Boundedness of l[i, i] and Cauchy-Schwarz for the dual test tensors.
SuiteResult verify_dual(const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o);

SuiteResult run_suite(const std::string& name, const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o);
const std::vector<std::string>& suite_names();

// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

}  // namespace lubgap
