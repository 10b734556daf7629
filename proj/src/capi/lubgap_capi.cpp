#include "lubgap/lubgap.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "dualcheck.hpp"
#include "special.hpp"
#include "traction.hpp"
#include "verify.hpp"

using namespace lubgap;

struct lg_problem {
    ProblemParams params;
    FieldModel model;
    explicit lg_problem(const ProblemParams& p) : params(p), model(p) {}
};

struct lg_expansion {
    TheoremResult result;
    std::string strings[6];
};

struct lg_report {
    SuiteResult result;
};

namespace {

thread_local std::string g_last_error;

lg_status fail(lg_status s, const char* what) {
    g_last_error = what;
    return s;
}

template <class F>
lg_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return LG_OK;
    } catch (const Error& e) {
        return fail(static_cast<lg_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(LG_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LG_ERR_INTERNAL, "unknown exception");
    }
}

#define LG_REQUIRE(cond)                                                                  \
    do {                                                                                  \
        if (!(cond)) return fail(LG_ERR_DOMAIN, "null or invalid argument: " #cond); \
    } while (0)

ProblemParams to_params(const lg_problem_desc& d) {
    ProblemParams p;
    p.profile.dim = d.dim;
    p.profile.kind = d.kind == LG_PROFILE_FLAT ? ProfileKind::FlatCapped : ProfileKind::MConvex;
    p.profile.m = d.m;
    p.profile.r = d.r;
    p.profile.s = d.s;
    p.profile.eps = d.eps;
    p.profile.R = d.R;
    p.mu = d.mu;
    for (int i = 0; i < 3; ++i) {
        p.U[i] = d.U[i];
        p.omega[i] = d.omega[i];
    }
    return p;
}

QuadSpec to_spec(const lg_quad_desc* q) {
    QuadSpec s;
    if (q) {
        s.abs_tol = q->abs_tol;
        s.rel_tol = q->rel_tol;
        s.max_subdivisions = q->max_subdivisions;
    }
    return s;
}

void copy_ft(const ForceTorque& ft, lg_force_torque* out) {
    for (int i = 0; i < 3; ++i) {
        out->F[i] = ft.F[i];
        out->T[i] = ft.T[i];
        out->errF[i] = ft.errF[i];
        out->errT[i] = ft.errT[i];
    }
    out->evaluations = ft.evaluations;
}

const AsymptoticExpansion* component(const lg_expansion* e, int comp) {
    if (!e || comp < 0 || comp > 5) return nullptr;
    return comp < 3 ? &e->result.F[comp] : &e->result.T[comp - 3];
}

const std::vector<AsymptoticTerm>* term_list(const AsymptoticExpansion& x, int list) {
    switch (list) {
        case 0: return &x.terms;
        case 1: return &x.lower;
        case 2: return &x.upper;
        default: return nullptr;
    }
}

}  // namespace

extern "C" {

const char* lg_last_error(void) { return g_last_error.c_str(); }

const char* lg_status_name(lg_status s) {
    switch (s) {
        case LG_OK: return "ok";
        case LG_ERR_DOMAIN: return "domain";
        case LG_ERR_OUT_OF_REGION: return "out_of_region";
        case LG_ERR_TOLERANCE: return "tolerance";
        case LG_ERR_HYPOTHESIS: return "hypothesis";
        case LG_ERR_SIGN_CONVENTION: return "sign_convention";
        case LG_ERR_CONFIG: return "config";
        case LG_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* lg_version(void) { return "1.0.0"; }

void lg_problem_desc_default(lg_problem_desc* d) {
    if (!d) return;
    const ProblemParams p;
    d->dim = p.profile.dim;
    d->kind = LG_PROFILE_MCONVEX;
    d->m = p.profile.m;
    d->r = p.profile.r;
    d->s = p.profile.s;
    d->eps = p.profile.eps;
    d->R = p.profile.R;
    d->mu = p.mu;
    for (int i = 0; i < 3; ++i) d->U[i] = d->omega[i] = 0.0;
}

void lg_quad_desc_default(lg_quad_desc* q) {
    if (!q) return;
    const QuadSpec s;
    q->abs_tol = s.abs_tol;
    q->rel_tol = s.rel_tol;
    q->max_subdivisions = s.max_subdivisions;
}

lg_status lg_problem_desc_validate(const lg_problem_desc* d) {
    LG_REQUIRE(d);
    return guarded([&] { to_params(*d).validate(); });
}

lg_status lg_gamma_coeff(double i, double j, double m, double* out) {
    LG_REQUIRE(out);
    return guarded([&] { *out = gamma_coeff(i, j, m); });
}

lg_status lg_phi(double i, double j, double m, double r, double eps, double* out) {
    LG_REQUIRE(out);
    return guarded([&] { *out = phi(i, j, m, r, eps); });
}

lg_status lg_psi(double i, double j, double s, double r, double eps, double* out) {
    LG_REQUIRE(out);
    return guarded([&] { *out = psi(i, j, s, r, eps); });
}

lg_status lg_coefficients_3d(double m, double mu, double r, double R, double out[4]) {
    LG_REQUIRE(out);
    return guarded([&] {
        const CoefficientSet3D c = coefficients_3d(m, mu, r, R);
        out[0] = c.alpha12;
        out[1] = c.alpha34;
        out[2] = c.beta1;
        out[3] = c.beta2;
    });
}

lg_status lg_coefficients_2d(double m, double mu, double r, double R, double out[5]) {
    LG_REQUIRE(out);
    return guarded([&] {
        const CoefficientSet2D c = coefficients_2d(m, mu, r, R);
        out[0] = c.alpha11;
        out[1] = c.alpha33;
        out[2] = c.alpha13;
        out[3] = c.alpha35;
        out[4] = c.beta;
    });
}

lg_status lg_fit_exponent(size_t n, const double* eps, const double* values, double* slope, double* intercept,
                          double* residual) {
    LG_REQUIRE(eps && values);
    return guarded([&] {
        std::vector<std::pair<double, double>> s;
        for (size_t i = 0; i < n; ++i) s.push_back({eps[i], values[i]});
        const ExponentFit f = fit_exponent(s);
        if (slope) *slope = f.slope;
        if (intercept) *intercept = f.intercept;
        if (residual) *residual = f.residual;
    });
}

lg_status lg_problem_create(const lg_problem_desc* d, lg_problem** out) {
    LG_REQUIRE(d && out);
    *out = nullptr;
    return guarded([&] {
        const ProblemParams p = to_params(*d);
        p.validate();
        *out = new lg_problem(p);
    });
}

void lg_problem_destroy(lg_problem* p) { delete p; }

int lg_problem_subflow_count(const lg_problem* p) { return p ? subflow_count(p->params.profile.dim) : 0; }

lg_status lg_field_eval(const lg_problem* p, int k, const double x[3], double u[3], double* pressure,
                        double grad[9]) {
    LG_REQUIRE(p && x);
    LG_REQUIRE(k >= 0 && k < subflow_count(p->params.profile.dim));
    return guarded([&] {
        const FieldEval fe = p->model.eval(k, x);
        if (u)
            for (int i = 0; i < 3; ++i) u[i] = fe.u[i];
        if (pressure) *pressure = fe.p;
        if (grad)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) grad[3 * i + j] = fe.grad[i][j];
    });
}

lg_status lg_force_numeric(const lg_problem* p, int k, const lg_quad_desc* q, lg_force_torque* out) {
    LG_REQUIRE(p && out);
    LG_REQUIRE(k < subflow_count(p->params.profile.dim));
    return guarded([&] {
        const QuadSpec spec = to_spec(q);
        copy_ft(k < 0 ? total_numeric(p->model, spec) : force_numeric(p->model, k, spec), out);
    });
}

lg_status lg_energy(const lg_problem* p, const lg_quad_desc* q, double* out) {
    LG_REQUIRE(p && out);
    return guarded([&] { *out = energy(p->model, to_spec(q)); });
}

lg_status lg_ell_matrix(const lg_problem* p, const lg_quad_desc* q, double out[49]) {
    LG_REQUIRE(p && out);
    return guarded([&] {
        const EllMatrix m = ell_matrix(p->model, to_spec(q));
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) out[7 * i + j] = m[i][j];
    });
}

lg_status lg_expansion_create(const lg_problem_desc* d, unsigned flags, lg_expansion** out) {
    LG_REQUIRE(d && out);
    *out = nullptr;
    return guarded([&] {
        AsymptoticOptions o;
        o.intervals = (flags & LG_ASY_INTERVALS) != 0;
        o.strict_signs = (flags & LG_ASY_STRICT_SIGNS) != 0;
        o.override_flat_hypothesis = (flags & LG_ASY_OVERRIDE_FLAT) != 0;
        auto* e = new lg_expansion{force_asymptotic(to_params(*d), o), {}};
        for (int c = 0; c < 6; ++c) e->strings[c] = component(e, c)->to_string();
        *out = e;
    });
}

void lg_expansion_destroy(lg_expansion* e) { delete e; }

const char* lg_expansion_regime(const lg_expansion* e) { return e ? e->result.regime.c_str() : ""; }

size_t lg_expansion_warning_count(const lg_expansion* e) { return e ? e->result.warnings.size() : 0; }

const char* lg_expansion_warning(const lg_expansion* e, size_t i) {
    if (!e || i >= e->result.warnings.size()) return "";
    return e->result.warnings[i].c_str();
}

int lg_expansion_is_empty(const lg_expansion* e, int comp) {
    const AsymptoticExpansion* x = component(e, comp);
    return !x || x->empty();
}

int lg_expansion_has_interval(const lg_expansion* e, int comp) {
    const AsymptoticExpansion* x = component(e, comp);
    return x && x->residual == ResidualKind::Interval;
}

size_t lg_expansion_term_count(const lg_expansion* e, int comp, int list) {
    const AsymptoticExpansion* x = component(e, comp);
    if (!x) return 0;
    const auto* t = term_list(*x, list);
    return t ? t->size() : 0;
}

lg_status lg_expansion_term(const lg_expansion* e, int comp, int list, size_t i, double* coeff, double* power,
                            int* is_log) {
    const AsymptoticExpansion* x = component(e, comp);
    LG_REQUIRE(x);
    const auto* t = term_list(*x, list);
    LG_REQUIRE(t && i < t->size());
    const AsymptoticTerm& a = (*t)[i];
    if (coeff) *coeff = a.coeff;
    if (power) *power = a.power;
    if (is_log) *is_log = a.is_log ? 1 : 0;
    g_last_error.clear();
    return LG_OK;
}

lg_status lg_expansion_evaluate(const lg_expansion* e, int comp, double eps, double* value, double* lower,
                                double* upper) {
    const AsymptoticExpansion* x = component(e, comp);
    LG_REQUIRE(x);
    if (!(eps > 0.0)) return fail(LG_ERR_DOMAIN, "eps must be positive");
    const bool iv = x->residual == ResidualKind::Interval;
    if (value) *value = x->evaluate(eps);
    if (lower) *lower = iv ? x->lower_bound(eps) : NAN;
    if (upper) *upper = iv ? x->upper_bound(eps) : NAN;
    g_last_error.clear();
    return LG_OK;
}

const char* lg_expansion_string(const lg_expansion* e, int comp) {
    if (!component(e, comp)) return "";
    return e->strings[comp].c_str();
}

void lg_verify_options_default(lg_verify_options* o) {
    if (!o) return;
    const VerifyOptions v;
    o->seed = v.seed;
    o->surface_points = v.surface_points;
    o->interior_points = v.interior_points;
    o->random_configs = v.random_configs;
    o->eps_list = nullptr;
    o->n_eps = 0;
}

size_t lg_suite_count(void) { return suite_names().size(); }

const char* lg_suite_name(size_t i) { return i < suite_names().size() ? suite_names()[i].c_str() : ""; }

lg_status lg_verify_run(const char* suite, const lg_problem_desc* d, const lg_quad_desc* q,
                        const lg_verify_options* o, lg_report** out) {
    LG_REQUIRE(suite && d && out);
    *out = nullptr;
    return guarded([&] {
        VerifyOptions vo;
        if (o) {
            vo.seed = o->seed;
            vo.surface_points = o->surface_points;
            vo.interior_points = o->interior_points;
            vo.random_configs = o->random_configs;
            if (o->eps_list) vo.eps_list.assign(o->eps_list, o->eps_list + o->n_eps);
        }
        *out = new lg_report{run_suite(suite, to_params(*d), to_spec(q), vo)};
    });
}

void lg_report_destroy(lg_report* r) { delete r; }

const char* lg_report_suite(const lg_report* r) { return r ? r->result.suite.c_str() : ""; }

int lg_report_passed(const lg_report* r) { return r && r->result.pass(); }

size_t lg_report_check_count(const lg_report* r) { return r ? r->result.checks.size() : 0; }

lg_status lg_report_check(const lg_report* r, size_t i, const char** name, int* pass, double* measured,
                          double* threshold, const char** detail) {
    LG_REQUIRE(r && i < r->result.checks.size());
    const Check& c = r->result.checks[i];
    if (name) *name = c.name.c_str();
    if (pass) *pass = c.pass;
    if (measured) *measured = c.measured;
    if (threshold) *threshold = c.threshold;
    if (detail) *detail = c.detail.c_str();
    g_last_error.clear();
    return LG_OK;
}

}  // extern "C"
