#pragma once

#include <array>
#include <memory>

#include "geometry.hpp"
#include "jet.hpp"
#include "quadrature.hpp"

namespace lubgap {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

struct ProblemParams {
    GapProfile profile;
    double mu = 1.0;
    Vec3 U{};      // 2D uses U[0], U[1]
    Vec3 omega{};  // 2D uses omega[0] as the scalar angular velocity

    void validate() const;
};

// Velocity, pressure and velocity gradient grad[i][j] = d u_i / d x_j.
struct FieldEval {
    Vec3 u{};
    double p = 0.0;
    Mat3 grad{};
};

inline int subflow_count(int dim) { return dim == 3 ? 7 : 5; }

// Prescribed velocity of sub-flow k on the top (+) or bottom (-) boundary.
Vec3 boundary_target(int k, const ProblemParams& prm, Side side, const double* xprime);

// Coefficients of a shear-type field u_j = c H x3, u_3 = c (-A - B x3^2/2)
// with B = dH/dx_j and A = -B h^2/8.
template <int N>
struct ShearPart {
    int dir = 0;
    double c = 0.0;
    Jet<N> H;
};

// Coefficients of a squeeze-type field
// u' = -A' - 3 B' x3^2,  u_3 = A3 x3 + B3 x3^3,
// with A3 = div' A' and B3 = div' B'.  In 2D only A1, B1 are used.
template <int N>
struct SqueezePart {
    Jet<N> A1, A2, B1, B2;
};

// Evaluates the constructed lubrication fields for one parameter set.
// Inner-integral tables for the radial pressure potentials are built once
// in the constructor; the object is immutable afterwards.
class FieldModel {
public:
    explicit FieldModel(const ProblemParams& prm);

    const ProblemParams& params() const { return prm_; }
    const GapProfile& profile() const { return prm_.profile; }
    int dim() const { return prm_.profile.dim; }

    // Full evaluation at a point of the closed gap region (checked).
    FieldEval eval(int k, const double* x) const;
    // Same without the inner-integral pressure terms and without checks.
    FieldEval eval_local(int k, const double* x) const;
    // The inner-integral part of the pressure at a planar point; zero for
    // sub-flows whose pressure is constant.
    double nested_pressure(int k, const double* xprime) const;

    // Pressure potentials (without the motion amplitude).
    double G_radial(double rho) const;  // 3D k=3: int_rho^r t/h^3 dt
    double G2d_even(double x1) const;   // 2D k=2: 2 int_|x1|^r t/h^3 dt
    double G2d_odd(double x1) const;    // 2D k=4: -int_{-r}^{x1} t^2/h^3 dt
    double G1(double x1, double x2) const;  // 3D k=6, includes omega_2
    double G2(double x1, double x2) const;  // 3D k=6, includes omega_1

    // Analytic pressure gradient (uses dG = B).
    Vec3 pressure_gradient(int k, const double* x) const;

    // Coefficient jets of each sub-flow at a planar point.
    template <int N>
    std::array<ShearPart<N>, 2> shear_parts(int k, double x1, double x2, int& count) const;
    template <int N>
    bool squeeze_part(int k, double x1, double x2, SqueezePart<N>& out, double& amplitude) const;

    // Kernel t/h(t)^3 on a ray and t^2/h^3 along a coordinate line.
    double kernel_radial(double t) const;
    double kernel_line(double t, double other, int axis) const;

private:
    ProblemParams prm_;
    CumulativeIntegral radial_;  // int_0^t tau/h^3
    CumulativeIntegral line2d_;  // 2D: int_{-r}^{t} tau^2/h^3
};

template <int N>
std::array<ShearPart<N>, 2> FieldModel::shear_parts(int k, double x1, double x2, int& count) const {
    const GapProfile& g = prm_.profile;
    const Jet<N> X1 = Jet<N>::variable(x1, 0);
    const Jet<N> X2 = Jet<N>::variable(x2, 1);
    const Jet<N> h = gap_jet<N>(g, X1, X2);
    const Vec3& U = prm_.U;
    const Vec3& w = prm_.omega;
    const double R = g.R, eps = g.eps;
    std::array<ShearPart<N>, 2> parts{};
    count = 0;
    if (g.dim == 3) {
        switch (k) {
            case 1:
                parts[0] = {0, U[0] - w[1] * R, inv(h)};
                count = 1;
                break;
            case 2:
                parts[0] = {1, U[1] + w[0] * R, inv(h)};
                count = 1;
                break;
            case 4:
                parts[0] = {0, w[2], -X2 / h};
                parts[1] = {1, w[2], X1 / h};
                count = 2;
                break;
            case 5:
                parts[0] = {0, w[1], 0.5 - (0.5 * eps) * inv(h)};
                parts[1] = {1, w[0], -0.5 + (0.5 * eps) * inv(h)};
                count = 2;
                break;
            default:
                break;
        }
    } else {
        switch (k) {
            case 1:
                parts[0] = {0, U[0] + w[0] * R, inv(h)};
                count = 1;
                break;
            case 3:
                parts[0] = {0, w[0], -0.5 + (0.5 * eps) * inv(h)};
                count = 1;
                break;
            default:
                break;
        }
    }
    return parts;
}

template <int N>
bool FieldModel::squeeze_part(int k, double x1, double x2, SqueezePart<N>& out,
                              double& amplitude) const {
    const GapProfile& g = prm_.profile;
    const Jet<N> X1 = Jet<N>::variable(x1, 0);
    const Jet<N> X2 = Jet<N>::variable(x2, 1);
    const Jet<N> h = gap_jet<N>(g, X1, X2);
    const Jet<N> ih = inv(h);
    const Jet<N> ih3 = ih * ih * ih;
    const Vec3& U = prm_.U;
    const Vec3& w = prm_.omega;
    if (g.dim == 3) {
        if (k == 3) {
            amplitude = U[2];
            out.A1 = (0.75 * U[2]) * X1 * ih;
            out.A2 = (0.75 * U[2]) * X2 * ih;
            out.B1 = (-U[2]) * X1 * ih3;
            out.B2 = (-U[2]) * X2 * ih3;
            return true;
        }
        if (k == 6) {
            amplitude = 1.0;
            out.A1 = (-0.75 * w[1]) * X1 * X1 * ih;
            out.A2 = (0.75 * w[0]) * X2 * X2 * ih;
            out.B1 = w[1] * X1 * X1 * ih3;
            out.B2 = (-w[0]) * X2 * X2 * ih3;
            return true;
        }
        return false;
    }
    if (k == 2) {
        amplitude = U[1];
        out.A1 = (1.5 * U[1]) * X1 * ih;
        out.B1 = (-2.0 * U[1]) * X1 * ih3;
        return true;
    }
    if (k == 4) {
        amplitude = w[0];
        out.A1 = (0.75 * w[0]) * X1 * X1 * ih;
        out.B1 = (-w[0]) * X1 * X1 * ih3;
        return true;
    }
    return false;
}

}  // namespace lubgap
