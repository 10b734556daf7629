#include "fields.hpp"

#include <sstream>

namespace lubgap {

void ProblemParams::validate() const {
    profile.validate();
    if (!(mu > 0.0)) throw Error(ErrorCode::Domain, "viscosity mu must be positive");
    for (int i = 0; i < 3; ++i)
        if (!std::isfinite(U[i]) || !std::isfinite(omega[i]))
            throw Error(ErrorCode::Domain, "U and omega must be finite");
}

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Breakpoints for inner integrals across the boundary layer (and the cap).
std::vector<double> layer_splits(const GapProfile& g, double a, double b) {
    std::vector<double> s = graded_splits(a, b, 0.0, g.layer());
    if (g.kind == ProfileKind::FlatCapped) {
        for (double c : {-g.s, g.s})
            if (c > a && c < b) s.push_back(c);
        for (double c : graded_splits(a, b, g.s, g.layer())) s.push_back(c);
        for (double c : graded_splits(a, b, -g.s, g.layer())) s.push_back(c);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

Vec3 boundary_target(int k, const ProblemParams& prm, Side side, const double* xp) {
    const GapProfile& g = prm.profile;
    if (k < 0 || k >= subflow_count(g.dim)) throw Error(ErrorCode::Domain, "sub-flow index out of range");
    const double sgn = side == Side::Top ? 1.0 : -1.0;
    const Vec3& U = prm.U;
    const Vec3& w = prm.omega;
    const double R = g.R;
    if (g.dim == 3) {
        const double x1 = xp[0], x2 = xp[1];
        const double hm = gap(g, xp) - g.eps;  // |x'|^m on m-convex profiles
        switch (k) {
            case 0: {
                const Vec3 nu{x1, x2, 0.5 * hm - R};
                const Vec3 wx = cross(w, nu);
                return {0.5 * (U[0] + wx[0]), 0.5 * (U[1] + wx[1]), 0.5 * (U[2] + wx[2])};
            }
            case 1: return {sgn * 0.5 * (U[0] - w[1] * R), 0.0, 0.0};
            case 2: return {0.0, sgn * 0.5 * (U[1] + w[0] * R), 0.0};
            case 3: return {0.0, 0.0, sgn * 0.5 * U[2]};
            case 4: return {-sgn * 0.5 * w[2] * x2, sgn * 0.5 * w[2] * x1, 0.0};
            case 5: return {sgn * 0.25 * hm * w[1], -sgn * 0.25 * hm * w[0], 0.0};
            default: return {0.0, 0.0, sgn * 0.5 * (w[0] * x2 - w[1] * x1)};
        }
    }
    const double x1 = xp[0];
    const double hm = gap(g, xp) - g.eps;
    const double w0 = w[0];
    switch (k) {
        case 0: return {0.5 * (U[0] + w0 * (R - 0.5 * hm)), 0.5 * (U[1] + w0 * x1), 0.0};
        case 1: return {sgn * 0.5 * (U[0] + w0 * R), 0.0, 0.0};
        case 2: return {0.0, sgn * 0.5 * U[1], 0.0};
        case 3: return {-sgn * 0.25 * w0 * hm, 0.0, 0.0};
        default: return {0.0, sgn * 0.5 * w0 * x1, 0.0};
    }
}

FieldModel::FieldModel(const ProblemParams& prm) : prm_(prm) {
    prm_.validate();
    const GapProfile& g = prm_.profile;
    const double tol = 1e-13;
    radial_ = CumulativeIntegral([this](double t) { return kernel_radial(t); }, 0.0, g.r, tol,
                                 layer_splits(g, 0.0, g.r));
    if (g.dim == 2) {
        line2d_ = CumulativeIntegral([this](double t) { return kernel_line(t, 0.0, 0); }, -g.r, g.r,
                                     tol, layer_splits(g, -g.r, g.r));
    }
}

double FieldModel::kernel_radial(double t) const {
    const double h = gap_radial(prm_.profile, t);
    return t / (h * h * h);
}

double FieldModel::kernel_line(double t, double other, int axis) const {
    const double h = axis == 0 ? gap_value(prm_.profile, t, other) : gap_value(prm_.profile, other, t);
    return t * t / (h * h * h);
}

double FieldModel::G_radial(double rho) const { return radial_.total() - radial_(rho); }

double FieldModel::G2d_even(double x1) const {
    return 2.0 * (radial_.total() - radial_(std::abs(x1)));
}

double FieldModel::G2d_odd(double x1) const { return -line2d_(x1); }

double FieldModel::G1(double x1, double x2) const {
    const double w2 = prm_.omega[1];
    if (w2 == 0.0) return 0.0;
    const GapProfile& g = prm_.profile;
    if (x1 == g.r) return 0.0;
    QuadSpec qs;
    qs.rel_tol = 1e-12;
    const double lo = std::min(x1, g.r), hi = std::max(x1, g.r);
    qs.split_points = layer_splits(g, lo, hi);
    const double v = integrate_1d([&](double t) { return kernel_line(t, x2, 0); }, lo, hi, qs).value;
    return w2 * (x1 < g.r ? -v : v);
}

double FieldModel::G2(double x1, double x2) const {
    const double w1 = prm_.omega[0];
    if (w1 == 0.0) return 0.0;
    const GapProfile& g = prm_.profile;
    if (x2 == -g.r) return 0.0;
    QuadSpec qs;
    qs.rel_tol = 1e-12;
    const double lo = std::min(x2, -g.r), hi = std::max(x2, -g.r);
    qs.split_points = layer_splits(g, lo, hi);
    const double v = integrate_1d([&](double t) { return kernel_line(t, x1, 1); }, lo, hi, qs).value;
    return -w1 * (x2 > -g.r ? v : -v);
}

double FieldModel::nested_pressure(int k, const double* xp) const {
    const double mu = prm_.mu;
    if (dim() == 3) {
        if (k == 3) return -6.0 * mu * prm_.U[2] * G_radial(std::hypot(xp[0], xp[1]));
        if (k == 6) return -6.0 * mu * (G1(xp[0], xp[1]) + G2(xp[0], xp[1]));
        return 0.0;
    }
    if (k == 2) return -6.0 * mu * prm_.U[1] * G2d_even(xp[0]);
    if (k == 4) return -6.0 * mu * prm_.omega[0] * G2d_odd(xp[0]);
    return 0.0;
}

FieldEval FieldModel::eval_local(int k, const double* x) const {
    const GapProfile& g = prm_.profile;
    const bool d3 = g.dim == 3;
    const int vert = d3 ? 2 : 1;         // index of the cross-gap coordinate
    const int nplanar = d3 ? 2 : 1;
    const double z = x[vert];
    const double x2 = d3 ? x[1] : 0.0;
    const double mu = prm_.mu;
    FieldEval fe;

    if (k == 0) {
        const Jet<1> h = gap_jet<1>(g, Jet<1>::variable(x[0], 0), Jet<1>::variable(x2, 1));
        const Vec3& U = prm_.U;
        const Vec3& w = prm_.omega;
        if (d3) {
            const Vec3 nu{x[0], x[1], 0.5 * (h.val() - g.eps) - g.R};
            const Vec3 wx = cross(w, nu);
            for (int i = 0; i < 3; ++i) fe.u[i] = 0.5 * (U[i] + wx[i]);
            const Vec3 d1 = cross(w, Vec3{1.0, 0.0, 0.5 * h.d(1, 0)});
            const Vec3 d2 = cross(w, Vec3{0.0, 1.0, 0.5 * h.d(0, 1)});
            for (int i = 0; i < 3; ++i) {
                fe.grad[i][0] = 0.5 * d1[i];
                fe.grad[i][1] = 0.5 * d2[i];
            }
        } else {
            const double nu2 = 0.5 * (h.val() - g.eps) - g.R;
            fe.u = {0.5 * (U[0] - w[0] * nu2), 0.5 * (U[1] + w[0] * x[0]), 0.0};
            fe.grad[0][0] = -0.25 * w[0] * h.d(1, 0);
            fe.grad[1][0] = 0.5 * w[0];
        }
        return fe;
    }

    int count = 0;
    const auto parts = shear_parts<3>(k, x[0], x2, count);
    if (count > 0) {
        const Jet<2> h = gap_jet<2>(g, Jet<2>::variable(x[0], 0), Jet<2>::variable(x2, 1));
        for (int q = 0; q < count; ++q) {
            const ShearPart<3>& sp = parts[q];
            const Jet<2> B = diff(sp.H, sp.dir);
            const Jet<2> A = -(B * h * h) * 0.125;
            const double c = sp.c;
            fe.u[sp.dir] += c * sp.H.val() * z;
            fe.u[vert] += c * (-A.val() - 0.5 * B.val() * z * z);
            for (int l = 0; l < nplanar; ++l) {
                const int a = l == 0, b = l == 1;
                fe.grad[sp.dir][l] += c * sp.H.d(a, b) * z;
                fe.grad[vert][l] += c * (-A.d(a, b) - 0.5 * B.d(a, b) * z * z);
            }
            fe.grad[sp.dir][vert] += c * sp.H.val();
            fe.grad[vert][vert] += -c * B.val() * z;
        }
        return fe;
    }

    SqueezePart<3> sq;
    double amp = 0.0;
    if (squeeze_part<3>(k, x[0], x2, sq, amp)) {
        const double z2 = z * z;
        if (d3) {
            const Jet<2> A3 = diff(sq.A1, 0) + diff(sq.A2, 1);
            const Jet<2> B3 = diff(sq.B1, 0) + diff(sq.B2, 1);
            const Jet<3>* Ap[2] = {&sq.A1, &sq.A2};
            const Jet<3>* Bp[2] = {&sq.B1, &sq.B2};
            for (int i = 0; i < 2; ++i) {
                fe.u[i] = -Ap[i]->val() - 3.0 * Bp[i]->val() * z2;
                fe.grad[i][0] = -Ap[i]->d(1, 0) - 3.0 * Bp[i]->d(1, 0) * z2;
                fe.grad[i][1] = -Ap[i]->d(0, 1) - 3.0 * Bp[i]->d(0, 1) * z2;
                fe.grad[i][2] = -6.0 * Bp[i]->val() * z;
            }
            fe.u[2] = A3.val() * z + B3.val() * z2 * z;
            fe.grad[2][0] = A3.d(1, 0) * z + B3.d(1, 0) * z2 * z;
            fe.grad[2][1] = A3.d(0, 1) * z + B3.d(0, 1) * z2 * z;
            fe.grad[2][2] = A3.val() + 3.0 * B3.val() * z2;
            fe.p = mu * (-A3.val() + 3.0 * B3.val() * z2);
        } else {
            const Jet<2> A2 = diff(sq.A1, 0);
            const Jet<2> B2 = diff(sq.B1, 0);
            fe.u[0] = -sq.A1.val() - 3.0 * sq.B1.val() * z2;
            fe.u[1] = A2.val() * z + B2.val() * z2 * z;
            fe.grad[0][0] = -sq.A1.d(1, 0) - 3.0 * sq.B1.d(1, 0) * z2;
            fe.grad[0][1] = -6.0 * sq.B1.val() * z;
            fe.grad[1][0] = A2.d(1, 0) * z + B2.d(1, 0) * z2 * z;
            fe.grad[1][1] = A2.val() + 3.0 * B2.val() * z2;
            fe.p = mu * (-A2.val() + 3.0 * B2.val() * z2);
        }
    }
    return fe;
}

FieldEval FieldModel::eval(int k, const double* x) const {
    const GapProfile& g = prm_.profile;
    if (k < 0 || k >= subflow_count(g.dim)) throw Error(ErrorCode::Domain, "sub-flow index out of range");
    const int vert = g.dim == 3 ? 2 : 1;
    const double h = gap(g, x);  // checks |x'| <= r
    if (std::abs(x[vert]) > 0.5 * h * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "point outside the gap: |x_" << vert + 1 << "| > h/2 = " << 0.5 * h;
        throw Error(ErrorCode::OutOfRegion, os.str());
    }
    FieldEval fe = eval_local(k, x);
    fe.p += nested_pressure(k, x);
    return fe;
}

Vec3 FieldModel::pressure_gradient(int k, const double* x) const {
    const GapProfile& g = prm_.profile;
    const double mu = prm_.mu;
    Vec3 gp{};
    SqueezePart<3> sq;
    double amp = 0.0;
    const double x2 = g.dim == 3 ? x[1] : 0.0;
    if (!squeeze_part<3>(k, x[0], x2, sq, amp)) return gp;
    if (g.dim == 3) {
        const double z = x[2], z2 = z * z;
        const Jet<2> A3 = diff(sq.A1, 0) + diff(sq.A2, 1);
        const Jet<2> B3 = diff(sq.B1, 0) + diff(sq.B2, 1);
        gp[0] = mu * (-A3.d(1, 0) + 3.0 * B3.d(1, 0) * z2) - 6.0 * mu * sq.B1.val();
        gp[1] = mu * (-A3.d(0, 1) + 3.0 * B3.d(0, 1) * z2) - 6.0 * mu * sq.B2.val();
        gp[2] = mu * 6.0 * B3.val() * z;
        if (k == 6) {
            // Cross derivatives of the line integrals G1 (in x2) and G2 (in x1).
            QuadSpec qs;
            qs.rel_tol = 1e-12;
            auto dkernel = [&](double t, double other, int axis) {
                const Jet<1> a = Jet<1>::variable(axis == 0 ? t : other, 0);
                const Jet<1> b = Jet<1>::variable(axis == 0 ? other : t, 1);
                const Jet<1> h = gap_jet<1>(g, a, b);
                const Jet<1> ih = inv(h);
                const Jet<1> f = ih * ih * ih * (t * t);
                return axis == 0 ? f.d(0, 1) : f.d(1, 0);
            };
            const double w1 = prm_.omega[0], w2 = prm_.omega[1];
            double dG1 = 0.0, dG2 = 0.0;
            if (w2 != 0.0) {
                const double lo = std::min(x[0], g.r), hi = std::max(x[0], g.r);
                qs.split_points = layer_splits(g, lo, hi);
                const double v = integrate_1d([&](double t) { return dkernel(t, x[1], 0); }, lo, hi, qs).value;
                dG1 = w2 * (x[0] < g.r ? -v : v);
            }
            if (w1 != 0.0) {
                const double lo = std::min(x[1], -g.r), hi = std::max(x[1], -g.r);
                qs.split_points = layer_splits(g, lo, hi);
                const double v = integrate_1d([&](double t) { return dkernel(t, x[0], 1); }, lo, hi, qs).value;
                dG2 = -w1 * (x[1] > -g.r ? v : -v);
            }
            gp[1] += -6.0 * mu * dG1;
            gp[0] += -6.0 * mu * dG2;
        }
    } else {
        const double z = x[1], z2 = z * z;
        const Jet<2> A2 = diff(sq.A1, 0);
        const Jet<2> B2 = diff(sq.B1, 0);
        gp[0] = mu * (-A2.d(1, 0) + 3.0 * B2.d(1, 0) * z2) - 6.0 * mu * sq.B1.val();
        gp[1] = mu * 6.0 * B2.val() * z;
    }
    return gp;
}

}  // namespace lubgap
