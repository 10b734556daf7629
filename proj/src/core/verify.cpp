#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "asymptotics.hpp"

namespace lubgap {

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string fmt_name(const char* stem, int k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s.k%d", stem, k);
    return buf;
}

Check make_check(std::string name, double measured, double threshold, std::string detail = {}) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.threshold = threshold;
    c.pass = std::isfinite(measured) && measured <= threshold;
    c.detail = std::move(detail);
    return c;
}

// Planar sample uniform over the disk |x'| < r (3D) or the segment (2D).
struct PlanarSampler {
    std::mt19937_64 rng;
    double r;
    int dim;
    PlanarSampler(std::uint64_t seed, double r_, int dim_) : rng(seed), r(r_), dim(dim_) {}
    double next() { return unit_uniform(rng()); }
    std::array<double, 2> point() {
        if (dim == 2) return {r * (2.0 * next() - 1.0), 0.0};
        const double rho = r * std::sqrt(next());
        const double th = 2.0 * M_PI * next();
        return {rho * std::cos(th), rho * std::sin(th)};
    }
};

double max_abs(const Mat3& g, int dim) {
    double m = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m = std::max(m, std::abs(g[i][j]));
    return m;
}

bool has_nonconstant_pressure(int dim, int k) { return dim == 3 ? (k == 3 || k == 6) : (k == 2 || k == 4); }

}  // namespace

SuiteResult verify_bc(const ProblemParams& p, const VerifyOptions& o) {
    p.validate();
    SuiteResult res{"bc", {}};
    const FieldModel model(p);
    const int dim = p.profile.dim;
    const int n = std::max(2, o.surface_points);
    for (int k = 0; k < subflow_count(dim); ++k) {
        PlanarSampler smp(o.seed + 977u * std::uint64_t(k), p.profile.r, dim);
        double worst = 0.0, scale = 0.0;
        for (int t = 0; t < n; ++t) {
            const Side side = (t % 2 == 0) ? Side::Top : Side::Bottom;
            const auto xp = smp.point();
            const SurfacePoint sp = surface_sample(p.profile, side, xp.data());
            const FieldEval fe = model.eval(k, sp.x.data());
            const Vec3 target = boundary_target(k, p, side, xp.data());
            for (int i = 0; i < dim; ++i) {
                worst = std::max(worst, std::abs(fe.u[i] - target[i]));
                scale = std::max(scale, std::abs(target[i]));
            }
        }
        if (scale == 0.0) scale = 1.0;
        res.checks.push_back(make_check(fmt_name("bc", k), worst / scale, 1e-12));
    }
    return res;
}

SuiteResult verify_div(const ProblemParams& p, const VerifyOptions& o) {
    p.validate();
    SuiteResult res{"div", {}};
    const FieldModel model(p);
    const GapProfile& g = p.profile;
    const int dim = g.dim;
    const int vert = dim - 1;
    const int n = std::max(1, o.interior_points);
    const double layer = g.layer();

    for (int k = 0; k < subflow_count(dim); ++k) {
        PlanarSampler smp(o.seed + 7919u * std::uint64_t(k + 1), g.r, dim);
        double div_worst = 0.0, grad_worst = 0.0, mom_worst = 0.0;
        const bool mom = has_nonconstant_pressure(dim, k);
        for (int t = 0; t < n; ++t) {
            const auto xp = smp.point();
            const double h = gap_value(g, xp[0], dim == 3 ? xp[1] : 0.0);
            double x[3] = {xp[0], dim == 3 ? xp[1] : 0.0, 0.0};
            x[vert] = 0.49 * h * (2.0 * smp.next() - 1.0);
            const double dist = dim == 3 ? std::hypot(xp[0], xp[1]) : std::abs(xp[0]);

            const FieldEval fe = model.eval(k, x);
            const double gnorm = max_abs(fe.grad, dim);
            double div = 0.0;
            for (int i = 0; i < dim; ++i) div += fe.grad[i][i];
            if (gnorm > 0.0) div_worst = std::max(div_worst, std::abs(div) / gnorm);

            // Central differences of u and of the analytic gradient.
            Mat3 fd_u{};
            std::array<Mat3, 3> fd_grad{};
            for (int j = 0; j < dim; ++j) {
                const double d = 1e-5 * (j == vert ? h : std::min(layer, dist));
                double a[3] = {x[0], x[1], x[2]}, b[3] = {x[0], x[1], x[2]};
                a[j] += d;
                b[j] -= d;
                const FieldEval fa = model.eval_local(k, a), fb = model.eval_local(k, b);
                for (int i = 0; i < dim; ++i) {
                    fd_u[i][j] = (fa.u[i] - fb.u[i]) / (2.0 * d);
                    for (int l = 0; l < dim; ++l) fd_grad[j][i][l] = (fa.grad[i][l] - fb.grad[i][l]) / (2.0 * d);
                }
            }
            if (gnorm > 0.0) {
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j)
                        grad_worst = std::max(grad_worst, std::abs(fe.grad[i][j] - fd_u[i][j]) / gnorm);
            }

            if (mom) {
                const Vec3 gp = model.pressure_gradient(k, x);
                // 2 mu div D(u)_i = mu sum_j d_j (u_{i,j} + u_{j,i})
                Vec3 rhs{};
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) rhs[i] += p.mu * (fd_grad[j][i][j] + fd_grad[j][j][i]);
                double sc = 0.0, diff = 0.0;
                for (int i = 0; i < dim; ++i) {
                    sc = std::max({sc, std::abs(gp[i]), std::abs(rhs[i])});
                    diff = std::max(diff, std::abs(gp[i] - rhs[i]));
                }
                if (sc > 0.0) mom_worst = std::max(mom_worst, diff / sc);
            }
        }
        res.checks.push_back(make_check(fmt_name("divergence", k), div_worst, 1e-12));
        res.checks.push_back(make_check(fmt_name("gradient", k), grad_worst, 1e-6));
        if (mom) res.checks.push_back(make_check(fmt_name("momentum", k), mom_worst, 1e-5));
    }
    return res;
}

namespace {

std::vector<double> default_or(const VerifyOptions& o, std::vector<double> d) {
    return o.eps_list.empty() ? d : o.eps_list;
}

// Slope check that treats components vanishing to quadrature accuracy as
// bounded.
Check bounded_component(const std::string& name, const std::vector<double>& eps, const std::vector<double>& v,
                        const std::vector<double>& err, const std::vector<double>& ref) {
    bool negligible = true;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > 10.0 * err[i] + 1e-12 * std::abs(ref[i])) negligible = false;
    if (negligible) return make_check(name, 0.0, 0.1, "vanishes to quadrature accuracy");
    std::vector<std::pair<double, double>> s;
    for (std::size_t i = 0; i < v.size(); ++i) s.push_back({eps[i], v[i]});
    try {
        return make_check(name, std::abs(fit_exponent(s).slope), 0.1);
    } catch (const Error& e) {
        return make_check(name, INFINITY, 0.1, e.what());
    }
}

}  // namespace

SuiteResult verify_parity(const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o) {
    p.validate();
    if (p.profile.dim != 3) throw Error(ErrorCode::Domain, "parity suite applies to 3D profiles only");
    SuiteResult res{"parity", {}};

    std::mt19937_64 rng(o.seed);
    auto coord = [&] { return 2.0 * unit_uniform(rng()) - 1.0; };
    for (int c = 0; c < o.random_configs; ++c) {
        ProblemParams pc = p;
        for (int i = 0; i < 3; ++i) pc.U[i] = coord();
        for (int i = 0; i < 3; ++i) pc.omega[i] = coord();
        const ForceTorque ft = total_numeric(pc, q);
        char name[32];
        std::snprintf(name, sizeof name, "T3.config%d", c);
        const double err = ft.errT[2];
        const double ratio = err > 0.0 ? std::abs(ft.T[2]) / err : (ft.T[2] == 0.0 ? 0.0 : INFINITY);
        char detail[96];
        std::snprintf(detail, sizeof detail, "T3=%.6e err=%.3e", ft.T[2], err);
        res.checks.push_back(make_check(name, ratio, 10.0, detail));
    }

    const double e0 = p.profile.eps;
    const std::vector<double> eps = default_or(o, {e0, e0 / std::sqrt(10.0), e0 / 10.0});
    ProblemParams ps = p;
    ps.U = {1.0, 0.0, 0.0};
    ps.omega = {0.0, 0.0, 0.0};
    std::vector<double> F2, F3, E2, E3, F1;
    for (double e : eps) {
        ps.profile.eps = e;
        const ForceTorque ft = force_numeric(1, ps, q);
        F1.push_back(ft.F[0]);
        F2.push_back(ft.F[1]);
        F3.push_back(ft.F[2]);
        E2.push_back(ft.errF[1]);
        E3.push_back(ft.errF[2]);
    }
    res.checks.push_back(bounded_component("F2.k1.slope", eps, F2, E2, F1));
    res.checks.push_back(bounded_component("F3.k1.slope", eps, F3, E3, F1));
    return res;
}

SuiteResult verify_exponents(const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o) {
    p.validate();
    SuiteResult res{"exponents", {}};
    const int dim = p.profile.dim;

    struct Case {
        const char* name;
        int k, comp;
        Vec3 U, w;
        double tol;
        std::vector<double> eps;
    };
    // The shear rates need a smaller gap before the O(1) remainder fades.
    std::vector<Case> cases;
    if (dim == 3) {
        cases.push_back({"F3.k3", 3, 2, {0, 0, -1}, {0, 0, 0}, 0.01, {1e-3, 3e-4, 1e-4, 3e-5, 1e-5}});
        cases.push_back({"F1.k1", 1, 0, {1, 0, 0}, {0, 0, 0}, 0.02, {1e-7, 1e-8, 1e-9}});
    } else {
        cases.push_back({"F2.k2", 2, 1, {0, -1, 0}, {0, 0, 0}, 0.01, {1e-3, 3e-4, 1e-4, 3e-5, 1e-5}});
        cases.push_back({"F1.k1", 1, 0, {1, 0, 0}, {0, 0, 0}, 0.02, {1e-7, 1e-8, 1e-9}});
    }

    for (Case& c : cases) {
        ProblemParams pc = p;
        pc.U = c.U;
        pc.omega = c.w;
        AsymptoticOptions ao;
        ao.intervals = false;
        ao.override_flat_hypothesis = true;
        const TheoremResult th = force_asymptotic(pc, ao);
        const AsymptoticExpansion& ex = th.F[c.comp];
        if (ex.empty()) {
            res.checks.push_back(make_check(std::string(c.name) + ".rate", INFINITY, c.tol, "no theorem term"));
            continue;
        }
        const AsymptoticTerm lead = ex.terms.front();
        std::vector<double> eps = default_or(o, lead.is_log ? std::vector<double>{1e-3, 1e-4, 1e-5} : c.eps);
        std::sort(eps.begin(), eps.end(), std::greater<>());
        std::vector<std::pair<double, double>> s;
        for (double e : eps) {
            pc.profile.eps = e;
            s.push_back({e, force_numeric(c.k, pc, q).F[c.comp]});
        }
        char detail[128];
        if (lead.is_log) {
            // Coefficient of |ln eps| from the two extreme samples.
            const LeadingFit lf = fit_leading(s.front().first, s.front().second, s.back().first, s.back().second, 0.0, true);
            const double rel = std::abs(lf.c - lead.coeff) / std::abs(lead.coeff);
            std::snprintf(detail, sizeof detail, "log coefficient %.6g, theorem %.6g", lf.c, lead.coeff);
            res.checks.push_back(make_check(std::string(c.name) + ".log", rel, 0.05, detail));
        } else {
            try {
                const double slope = fit_exponent(s).slope;
                const double rel = std::abs(slope + lead.power) / std::abs(lead.power);
                std::snprintf(detail, sizeof detail, "slope %.6g, theorem %.6g", slope, -lead.power);
                res.checks.push_back(make_check(std::string(c.name) + ".slope", rel, c.tol, detail));
            } catch (const Error& e) {
                res.checks.push_back(make_check(std::string(c.name) + ".slope", INFINITY, c.tol, e.what()));
            }
        }
    }
    return res;
}

SuiteResult verify_dual(const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o) {
    p.validate();
    if (p.profile.dim != 3) throw Error(ErrorCode::Domain, "dual suite applies to 3D profiles only");
    SuiteResult res{"dual", {}};
    const EllReport rep = err_sweep(p, default_or(o, {1e-2, 1e-3, 1e-4}), q);
    for (const EllPair& pr : rep.pairs) {
        if (pr.i != pr.j) continue;
        char name[32];
        std::snprintf(name, sizeof name, "l%d%d.slope", pr.i, pr.j);
        bool zero = std::all_of(pr.values.begin(), pr.values.end(), [](double v) { return v == 0.0; });
        if (zero)
            res.checks.push_back(make_check(name, 0.0, 0.1, "sub-flow inactive"));
        else if (!pr.slope_defined)
            res.checks.push_back(make_check(name, INFINITY, 0.1, "values change sign"));
        else
            res.checks.push_back(make_check(name, std::abs(pr.slope), 0.1));
    }
    Check cs = make_check("cauchy_schwarz", rep.worst_cs_ratio, 1.0 + 1e-9, "max l_ij^2 / (l_ii l_jj)");
    cs.pass = rep.cauchy_schwarz;
    res.checks.push_back(cs);
    return res;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"bc", "div", "parity", "dual", "exponents"};
    return names;
}

SuiteResult run_suite(const std::string& name, const ProblemParams& p, const QuadSpec& q, const VerifyOptions& o) {
    if (name == "bc") return verify_bc(p, o);
    if (name == "div") return verify_div(p, o);
    if (name == "parity") return verify_parity(p, q, o);
    if (name == "dual") return verify_dual(p, q, o);
    if (name == "exponents") return verify_exponents(p, q, o);
    throw Error(ErrorCode::Config, "unknown verify suite '" + name + "'");
}

}  // namespace lubgap
