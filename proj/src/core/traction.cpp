#include "traction.hpp"

#include <future>
#include <numbers>
#include <sstream>
#include <thread>

namespace lubgap {

ForceTorque& ForceTorque::operator+=(const ForceTorque& o) {
    for (int i = 0; i < 3; ++i) {
        F[i] += o.F[i];
        T[i] += o.T[i];
        errF[i] += o.errF[i];
        errT[i] += o.errT[i];
    }
    evaluations += o.evaluations;
    return *this;
}

Stress stress(const FieldEval& fe, double mu, int dim) {
    Stress s{};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s[i][j] = mu * (fe.grad[i][j] + fe.grad[j][i]);
    for (int i = 0; i < dim; ++i) s[i][i] -= fe.p;
    return s;
}

namespace {

Vec3 apply(const Stress& s, const Vec3& n, int dim) {
    Vec3 t{};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) t[i] += s[i][j] * n[j];
    return t;
}

// Force density and moment density packed for the vector integrator:
// 3D -> (F1, F2, F3, T1, T2, T3); 2D -> (F1, F2, T, 0, 0, 0).
using Six = std::array<double, 6>;

Six pack(const Vec3& t, const SurfacePoint& sp, int dim, double w) {
    Six out{};
    if (dim == 3) {
        const Vec3& v = sp.nu;
        out = {t[0], t[1], t[2], v[1] * t[2] - v[2] * t[1], v[2] * t[0] - v[0] * t[2],
               v[0] * t[1] - v[1] * t[0]};
    } else {
        out = {t[0], t[1], sp.nu[0] * t[1] - sp.nu[1] * t[0], 0.0, 0.0, 0.0};
    }
    for (double& x : out) x *= w;
    return out;
}

ForceTorque unpack(const QuadResultN<6>& q, int dim, const char* what) {
    if (!q.converged) {
        std::ostringstream os;
        os << "surface quadrature did not converge (" << what << ")";
        double worst = 0.0;
        for (double e : q.error) worst = std::max(worst, e);
        throw ToleranceError(os.str(), q.value[0], worst);
    }
    ForceTorque ft;
    ft.dim = dim;
    ft.evaluations = q.evaluations;
    if (dim == 3) {
        for (int i = 0; i < 3; ++i) {
            ft.F[i] = q.value[i];
            ft.T[i] = q.value[3 + i];
            ft.errF[i] = q.error[i];
            ft.errT[i] = q.error[3 + i];
        }
    } else {
        ft.F = {q.value[0], q.value[1], 0.0};
        ft.errF = {q.error[0], q.error[1], 0.0};
        ft.T = {0.0, 0.0, q.value[2]};
        ft.errT = {0.0, 0.0, q.error[2]};
    }
    return ft;
}

std::vector<double> radial_splits(const GapProfile& g, double a, double b) {
    std::vector<double> s = graded_splits(a, b, 0.0, g.layer());
    if (g.kind == ProfileKind::FlatCapped) {
        for (double c : {-g.s, g.s}) {
            if (c > a && c < b) s.push_back(c);
            for (double x : graded_splits(a, b, c, g.layer())) s.push_back(x);
        }
    }
    return s;
}

Six add(const Six& a, const Six& b) {
    Six c;
    for (int i = 0; i < 6; ++i) c[i] = a[i] + b[i];
    return c;
}

constexpr int kAngular = 64;

// Polar integration for sub-flows whose pressure is radial or constant.
ForceTorque polar_force(const FieldModel& model, int k, const QuadSpec& spec) {
    const GapProfile& g = model.profile();
    std::array<double, kAngular> cs, sn;
    for (int a = 0; a < kAngular; ++a) {
        const double phi = 2.0 * std::numbers::pi * (a + 0.5) / kAngular;
        cs[a] = std::cos(phi);
        sn[a] = std::sin(phi);
    }
    auto ring = [&](double rho) {
        Six acc{};
        for (int a = 0; a < kAngular; ++a) {
            const double xp[2] = {rho * cs[a], rho * sn[a]};
            const SurfacePoint sp = surface_sample(g, Side::Top, xp);
            acc = add(acc, pack(traction(model, k, sp), sp, 3, sp.jac));
        }
        const double w = rho * 2.0 * std::numbers::pi / kAngular;
        for (double& x : acc) x *= w;
        return acc;
    };
    QuadSpec qs = spec;
    qs.split_points = radial_splits(g, 0.0, g.r);
    return unpack(integrate_1d_vec<6>(ring, 0.0, g.r, qs), 3, "polar");
}

// k = 6 in 3D.  The pressure contains two line integrals, one along x1 and
// one along x2.  Each is handled in the Cartesian order where it is a
// prefix integral of the inner variable.
ForceTorque cartesian_force_k6(const FieldModel& model, const QuadSpec& spec) {
    const int k = 6;
    const GapProfile& g = model.profile();
    const ProblemParams& prm = model.params();
    const double mu = prm.mu, r = g.r;
    const double w1 = prm.omega[0], w2 = prm.omega[1];
    const double table_tol = std::max(1e-13, 0.01 * spec.rel_tol);

    QuadSpec inner = spec;
    QuadSpec outer = spec;
    outer.split_points = radial_splits(g, -r, r);

    // Pass 1: x2 outer, x1 inner.  Pressure p_loc - 6 mu G1.
    auto line1 = [&](double x2) {
        const double a = std::sqrt(std::max(0.0, r * r - x2 * x2));
        if (!(a > 0.0)) return Six{};
        CumulativeIntegral tab;
        if (w2 != 0.0)
            tab = CumulativeIntegral([&](double t) { return model.kernel_line(t, x2, 0); }, -a, r, table_tol,
                                     radial_splits(g, -a, r));
        const double at_r = w2 != 0.0 ? tab(r) : 0.0;
        auto f = [&](double x1) {
            const double xp[2] = {x1, x2};
            const SurfacePoint sp = surface_sample(g, Side::Top, xp);
            FieldEval fe = model.eval_local(k, sp.x.data());
            if (w2 != 0.0) fe.p += -6.0 * mu * w2 * (tab(x1) - at_r);
            return pack(apply(stress(fe, mu, 3), sp.n, 3), sp, 3, sp.jac);
        };
        inner.split_points = radial_splits(g, -a, a);
        const QuadResultN<6> q = integrate_1d_vec<6>(f, -a, a, inner);
        if (!q.converged) throw ToleranceError("k=6 inner line (x1) did not converge", q.value[0], q.error[0]);
        return q.value;
    };
    ForceTorque ft = unpack(integrate_1d_vec<6>(line1, -r, r, outer), 3, "k=6 pass 1");
    if (w1 == 0.0) return ft;

    // Pass 2: x1 outer, x2 inner.  Adds the -6 mu G2 part of the pressure.
    auto line2 = [&](double x1) {
        const double a = std::sqrt(std::max(0.0, r * r - x1 * x1));
        if (!(a > 0.0)) return Six{};
        CumulativeIntegral tab([&](double t) { return model.kernel_line(t, x1, 1); }, -r, a, table_tol,
                               radial_splits(g, -r, a));
        auto f = [&](double x2) {
            const double xp[2] = {x1, x2};
            const SurfacePoint sp = surface_sample(g, Side::Top, xp);
            const double G2 = -w1 * tab(x2);
            const double dp = -6.0 * mu * G2;
            const Vec3 t{-dp * sp.n[0], -dp * sp.n[1], -dp * sp.n[2]};
            return pack(t, sp, 3, sp.jac);
        };
        inner.split_points = radial_splits(g, -a, a);
        const QuadResultN<6> q = integrate_1d_vec<6>(f, -a, a, inner);
        if (!q.converged) throw ToleranceError("k=6 inner line (x2) did not converge", q.value[0], q.error[0]);
        return q.value;
    };
    ft += unpack(integrate_1d_vec<6>(line2, -r, r, outer), 3, "k=6 pass 2");
    return ft;
}

ForceTorque line_force_2d(const FieldModel& model, int k, const QuadSpec& spec) {
    const GapProfile& g = model.profile();
    auto f = [&](double x1) {
        const double xp[1] = {x1};
        const SurfacePoint sp = surface_sample(g, Side::Top, xp);
        return pack(traction(model, k, sp), sp, 2, sp.jac);
    };
    QuadSpec qs = spec;
    qs.split_points = radial_splits(g, -g.r, g.r);
    qs.split_points.push_back(0.0);
    return unpack(integrate_1d_vec<6>(f, -g.r, g.r, qs), 2, "2D line");
}

bool motion_is_zero(const ProblemParams& p) {
    for (int i = 0; i < 3; ++i)
        if (p.U[i] != 0.0 || p.omega[i] != 0.0) return false;
    return true;
}

}  // namespace

Vec3 traction(const FieldModel& model, int k, const SurfacePoint& sp) {
    const FieldEval fe = model.eval(k, sp.x.data());
    return apply(stress(fe, model.params().mu, model.dim()), sp.n, model.dim());
}

ForceTorque force_numeric(const FieldModel& model, int k, const QuadSpec& spec) {
    const int dim = model.dim();
    if (k < 0 || k >= subflow_count(dim)) throw Error(ErrorCode::Domain, "sub-flow index out of range");
    if (motion_is_zero(model.params())) {
        ForceTorque z;
        z.dim = dim;
        return z;
    }
    if (dim == 2) return line_force_2d(model, k, spec);
    if (k == 6) return cartesian_force_k6(model, spec);
    return polar_force(model, k, spec);
}

ForceTorque total_numeric(const FieldModel& model, const QuadSpec& spec) {
    const int n = subflow_count(model.dim());
    std::vector<ForceTorque> parts(n);
    if (std::thread::hardware_concurrency() > 1) {
        std::vector<std::future<ForceTorque>> jobs;
        for (int k = 0; k < n; ++k)
            jobs.push_back(std::async(std::launch::async, [&, k] { return force_numeric(model, k, spec); }));
        for (int k = 0; k < n; ++k) parts[k] = jobs[k].get();
    } else {
        for (int k = 0; k < n; ++k) parts[k] = force_numeric(model, k, spec);
    }
    // Summation in sub-flow order regardless of completion order.
    ForceTorque total;
    total.dim = model.dim();
    for (const auto& p : parts) total += p;
    return total;
}

ForceTorque force_numeric(int k, const ProblemParams& prm, const QuadSpec& spec) {
    return force_numeric(FieldModel(prm), k, spec);
}

ForceTorque total_numeric(const ProblemParams& prm, const QuadSpec& spec) {
    return total_numeric(FieldModel(prm), spec);
}

}  // namespace lubgap
