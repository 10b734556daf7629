#pragma once

#include <array>
#include <cmath>

#include "errors.hpp"
#include "jet.hpp"

namespace lubgap {

enum class ProfileKind { MConvex, FlatCapped };
enum class Side { Top, Bottom };

// Geometry of the thin gap.  The two particles are placed symmetrically
// about x3 = 0 (x2 = 0 in 2D); the top particle has centroid (0', eps/2 + R).
struct GapProfile {
    int dim = 3;
    ProfileKind kind = ProfileKind::MConvex;
    double m = 2.0;  // flat-capped profiles always use m = 2 outside the cap
    double r = 0.5;
    double s = 0.0;
    double eps = 1e-3;
    double R = 1.0;

    // Throws Error(Domain) when the parameters are inconsistent.
    void validate() const;
    double exponent() const { return kind == ProfileKind::FlatCapped ? 2.0 : m; }
    // Width of the boundary layer where h changes from eps to O(eps).
    double layer() const { return std::pow(eps, 1.0 / exponent()); }
};

// A point on the gap boundary: 3D uses all components, 2D uses the first two.
struct SurfacePoint {
    std::array<double, 3> x{};   // position
    std::array<double, 3> n{};   // unit outward normal of the particle
    std::array<double, 3> nu{};  // lever arm x - centroid
    double jac = 1.0;            // dS / dx'
};

namespace detail {

// |x'|^m from the jet of |x'|^2.  At the origin every derivative of order
// below m vanishes; higher orders are set to zero (symmetric limit).
template <int N>
Jet<N> radial_power(const Jet<N>& rho2, double m) {
    if (m == 2.0) return rho2;
    const double half = 0.5 * m;
    if (half == std::floor(half) && half <= 8) return ipow(rho2, int(half));
    if (rho2.val() > 0.0) return pow(rho2, half);
    return Jet<N>(0.0);
}

template <int N>
Jet<N> abs_power(const Jet<N>& x, double m) {
    if (m == 2.0) return x * x;
    if (x.val() > 0.0) return pow(x, m);
    if (x.val() < 0.0) return pow(-x, m);
    if (m == std::floor(m) && int(m) % 2 == 0 && m <= 16) return ipow(x, int(m));
    return Jet<N>(0.0);
}

}  // namespace detail

// Gap function h(x') = eps + (height of the curved part), evaluated without
// region checks so that inner integrals may leave the disk |x'| <= r.
template <int N>
Jet<N> gap_jet(const GapProfile& g, const Jet<N>& x1, const Jet<N>& x2) {
    if (g.dim == 3) {
        const Jet<N> rho2 = x1 * x1 + x2 * x2;
        if (g.kind == ProfileKind::MConvex) return detail::radial_power(rho2, g.m) + g.eps;
        if (std::sqrt(rho2.val()) <= g.s) return Jet<N>(g.eps);
        const Jet<N> d = sqrt(rho2) - g.s;
        return d * d + g.eps;
    }
    if (g.kind == ProfileKind::MConvex) return detail::abs_power(x1, g.m) + g.eps;
    const double a = std::abs(x1.val());
    if (a <= g.s) return Jet<N>(g.eps);
    const Jet<N> d = (x1.val() > 0 ? x1 : -x1) - g.s;
    return d * d + g.eps;
}

// Plain value of the gap at an arbitrary planar point.
inline double gap_value(const GapProfile& g, double x1, double x2) {
    return gap_jet<0>(g, Jet<0>(x1), Jet<0>(x2)).val();
}

// Radial (3D) or one-sided (2D) profile value h(t) for t >= 0.
inline double gap_radial(const GapProfile& g, double t) { return gap_value(g, t, 0.0); }

// Checked gap evaluation: |x'| must not exceed r.
double gap(const GapProfile& g, const double* xprime);

SurfacePoint surface_sample(const GapProfile& g, Side side, const double* xprime);

}  // namespace lubgap
