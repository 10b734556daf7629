#pragma once

#include <functional>

#include "geometry.hpp"
#include "quadrature.hpp"

namespace lubgap {

// Integral of g over the top gap surface |x'| <= r, with the area element
// jac dx'.  3D uses a 64-point angular trapezoid rule times an adaptive
// radial rule; 2D integrates the arclength along x1 in [-r, r].
QuadResult integrate_surface(const std::function<double(const SurfacePoint&)>& g, const GapProfile& profile,
                             const QuadSpec& spec);

// Radial (or x1) breakpoints at the apex layer and around the flat-cap rim.
std::vector<double> profile_splits(const GapProfile& g, double a, double b);

}  // namespace lubgap
