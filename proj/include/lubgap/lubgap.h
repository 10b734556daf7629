#ifndef LUBGAP_LUBGAP_H
#define LUBGAP_LUBGAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LG_API __declspec(dllexport)
#else
#define LG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  Every function returning lg_status leaves a message for
   lg_last_error() on failure (per thread).  String getters return "" for
   out-of-range arguments and never NULL. */
typedef enum lg_status {
    LG_OK = 0,
    LG_ERR_DOMAIN = 1,
    LG_ERR_OUT_OF_REGION = 2,
    LG_ERR_TOLERANCE = 3,
    LG_ERR_HYPOTHESIS = 4,
    LG_ERR_SIGN_CONVENTION = 5,
    LG_ERR_CONFIG = 6,
    LG_ERR_INTERNAL = 7
} lg_status;

LG_API const char* lg_last_error(void);
LG_API const char* lg_status_name(lg_status s);
LG_API const char* lg_version(void);

/* ---- plain descriptions ------------------------------------------------ */

typedef enum lg_profile_kind { LG_PROFILE_MCONVEX = 0, LG_PROFILE_FLAT = 1 } lg_profile_kind;

typedef struct lg_problem_desc {
    int dim;              /* 2 or 3 */
    lg_profile_kind kind;
    double m, r, s, eps, R, mu;
    double U[3];          /* 2D: U[0], U[1] */
    double omega[3];      /* 2D: omega[0] is the scalar rotation */
} lg_problem_desc;

typedef struct lg_quad_desc {
    double abs_tol;
    double rel_tol;
    int max_subdivisions;
} lg_quad_desc;

LG_API void lg_problem_desc_default(lg_problem_desc* d);
LG_API void lg_quad_desc_default(lg_quad_desc* q);
LG_API lg_status lg_problem_desc_validate(const lg_problem_desc* d);

/* ---- special functions ------------------------------------------------- */

LG_API lg_status lg_gamma_coeff(double i, double j, double m, double* out);
LG_API lg_status lg_phi(double i, double j, double m, double r, double eps, double* out);
LG_API lg_status lg_psi(double i, double j, double s, double r, double eps, double* out);

/* alpha12, alpha34, beta1, beta2 */
LG_API lg_status lg_coefficients_3d(double m, double mu, double r, double R, double out[4]);
/* alpha11, alpha33, alpha13, alpha35, beta */
LG_API lg_status lg_coefficients_2d(double m, double mu, double r, double R, double out[5]);

/* Least-squares log-log slope; at least 3 samples of one sign spanning a decade. */
LG_API lg_status lg_fit_exponent(size_t n, const double* eps, const double* values, double* slope,
                                 double* intercept, double* residual);

/* ---- problem handle: constructed fields ------------------------------- */

typedef struct lg_problem lg_problem;

LG_API lg_status lg_problem_create(const lg_problem_desc* d, lg_problem** out);
LG_API void lg_problem_destroy(lg_problem* p);
LG_API int lg_problem_subflow_count(const lg_problem* p);

/* Velocity, pressure and gradient grad[3*i + j] = d u_i / d x_j of sub-flow k. */
LG_API lg_status lg_field_eval(const lg_problem* p, int k, const double x[3], double u[3], double* pressure,
                               double grad[9]);

typedef struct lg_force_torque {
    double F[3], T[3];
    double errF[3], errT[3];
    long evaluations;
} lg_force_torque;

/* Numeric force and torque on the top particle of sub-flow k, or of the sum
   when k < 0.  2D results use F[0], F[1] and T[2]. */
LG_API lg_status lg_force_numeric(const lg_problem* p, int k, const lg_quad_desc* q, lg_force_torque* out);

LG_API lg_status lg_energy(const lg_problem* p, const lg_quad_desc* q, double* out);
/* Row-major 7x7 matrix of l[i, j]. */
LG_API lg_status lg_ell_matrix(const lg_problem* p, const lg_quad_desc* q, double out[49]);

/* ---- expansion handle: closed-form asymptotics ------------------------ */

typedef struct lg_expansion lg_expansion;

enum {
    LG_ASY_INTERVALS = 1,
    LG_ASY_STRICT_SIGNS = 2,
    LG_ASY_OVERRIDE_FLAT = 4
};

/* Components 0..2 are F1..F3, 3..5 are T1..T3.  Term lists: 0 known
   terms, 1 lower residual, 2 upper residual. */
LG_API lg_status lg_expansion_create(const lg_problem_desc* d, unsigned flags, lg_expansion** out);
LG_API void lg_expansion_destroy(lg_expansion* e);
LG_API const char* lg_expansion_regime(const lg_expansion* e);
LG_API size_t lg_expansion_warning_count(const lg_expansion* e);
LG_API const char* lg_expansion_warning(const lg_expansion* e, size_t i);
LG_API int lg_expansion_is_empty(const lg_expansion* e, int comp);
LG_API int lg_expansion_has_interval(const lg_expansion* e, int comp);
LG_API size_t lg_expansion_term_count(const lg_expansion* e, int comp, int list);
LG_API lg_status lg_expansion_term(const lg_expansion* e, int comp, int list, size_t i, double* coeff,
                                   double* power, int* is_log);
LG_API lg_status lg_expansion_evaluate(const lg_expansion* e, int comp, double eps, double* value,
                                       double* lower, double* upper);
LG_API const char* lg_expansion_string(const lg_expansion* e, int comp);

/* ---- report handle: verification suites ------------------------------- */

typedef struct lg_report lg_report;

typedef struct lg_verify_options {
    uint64_t seed;
    int surface_points;
    int interior_points;
    int random_configs;
    const double* eps_list; /* may be NULL */
    size_t n_eps;
} lg_verify_options;

LG_API void lg_verify_options_default(lg_verify_options* o);
LG_API size_t lg_suite_count(void);
LG_API const char* lg_suite_name(size_t i);

/* Runs a suite; a failed check is reported through the handle, not the status. */
LG_API lg_status lg_verify_run(const char* suite, const lg_problem_desc* d, const lg_quad_desc* q,
                               const lg_verify_options* o, lg_report** out);
LG_API void lg_report_destroy(lg_report* r);
LG_API const char* lg_report_suite(const lg_report* r);
LG_API int lg_report_passed(const lg_report* r);
LG_API size_t lg_report_check_count(const lg_report* r);
LG_API lg_status lg_report_check(const lg_report* r, size_t i, const char** name, int* pass, double* measured,
                                 double* threshold, const char** detail);

#ifdef __cplusplus
}
#endif

#endif
