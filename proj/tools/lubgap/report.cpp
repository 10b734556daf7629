#include "report.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <thread>

namespace lubgap_cli {

namespace {

struct ProblemDeleter {
    void operator()(lg_problem* p) const { lg_problem_destroy(p); }
};
struct ExpansionDeleter {
    void operator()(lg_expansion* e) const { lg_expansion_destroy(e); }
};
struct ReportDeleter {
    void operator()(lg_report* r) const { lg_report_destroy(r); }
};

double pick(const lg_force_torque& ft, int comp) { return comp < 3 ? ft.F[comp] : ft.T[comp - 3]; }
double pick_err(const lg_force_torque& ft, int comp) { return comp < 3 ? ft.errF[comp] : ft.errT[comp - 3]; }

struct ComponentExpansion {
    bool empty = true;
    bool interval = false;
    double value = NAN, lower = NAN, upper = NAN;
    std::string text;
    Json terms = Json::array();
};

// Everything computed at one epsilon.
struct PointResult {
    double eps = 0.0;
    int subflows = 0;
    std::vector<std::optional<lg_force_torque>> sub;
    std::optional<lg_force_torque> total;
    bool has_expansion = false;
    std::string regime;
    std::vector<std::string> warnings;
    ComponentExpansion comp[6];
    std::vector<std::string> errors;
};

std::string describe_failure(lg_status s) { return std::string(lg_status_name(s)) + ": " + lg_last_error(); }

Json term_json(const lg_expansion* e, int comp, int list) {
    Json arr = Json::array();
    for (size_t i = 0; i < lg_expansion_term_count(e, comp, list); ++i) {
        double c = 0, pw = 0;
        int lg = 0;
        lg_expansion_term(e, comp, list, i, &c, &pw, &lg);
        arr.push_back(Json{{"coeff", c}, {"power", pw}, {"log", bool(lg)}});
    }
    return arr;
}

PointResult compute_point(const RunConfig& cfg, double eps) {
    PointResult r;
    r.eps = eps;
    lg_problem_desc d = cfg.problem;
    d.eps = eps;
    r.subflows = d.dim == 3 ? 7 : 5;

    if (cfg.mode != Mode::Asymptotic) {
        lg_problem* raw = nullptr;
        lg_status st = lg_problem_create(&d, &raw);
        std::unique_ptr<lg_problem, ProblemDeleter> prob(raw);
        r.sub.resize(r.subflows);
        if (st != LG_OK) {
            r.errors.push_back("problem: " + describe_failure(st));
        } else {
            lg_force_torque sum{};
            bool complete = true;
            for (int k = 0; k < r.subflows; ++k) {
                lg_force_torque ft{};
                st = lg_force_numeric(prob.get(), k, &cfg.quadrature, &ft);
                if (st != LG_OK) {
                    r.errors.push_back("subflow " + std::to_string(k) + ": " + describe_failure(st));
                    complete = false;
                    continue;
                }
                r.sub[k] = ft;
                for (int i = 0; i < 3; ++i) {
                    sum.F[i] += ft.F[i];
                    sum.T[i] += ft.T[i];
                    sum.errF[i] += ft.errF[i];
                    sum.errT[i] += ft.errT[i];
                }
                sum.evaluations += ft.evaluations;
            }
            if (complete) r.total = sum;
        }
    }

    if (cfg.mode != Mode::Numeric) {
        unsigned flags = LG_ASY_INTERVALS;
        if (cfg.override_flat_hypothesis) flags |= LG_ASY_OVERRIDE_FLAT;
        lg_expansion* raw = nullptr;
        const lg_status st = lg_expansion_create(&d, flags, &raw);
        std::unique_ptr<lg_expansion, ExpansionDeleter> ex(raw);
        if (st != LG_OK) {
            r.errors.push_back("asymptotic: " + describe_failure(st));
        } else {
            r.has_expansion = true;
            r.regime = lg_expansion_regime(ex.get());
            for (size_t i = 0; i < lg_expansion_warning_count(ex.get()); ++i)
                r.warnings.push_back(lg_expansion_warning(ex.get(), i));
            for (int c = 0; c < 6; ++c) {
                ComponentExpansion& ce = r.comp[c];
                ce.empty = lg_expansion_is_empty(ex.get(), c);
                ce.interval = lg_expansion_has_interval(ex.get(), c);
                lg_expansion_evaluate(ex.get(), c, eps, &ce.value, &ce.lower, &ce.upper);
                ce.text = lg_expansion_string(ex.get(), c);
                ce.terms = term_json(ex.get(), c, 0);
                if (ce.interval) {
                    ce.terms = Json{{"known", ce.terms}, {"lower", term_json(ex.get(), c, 1)},
                                    {"upper", term_json(ex.get(), c, 2)}};
                }
            }
        }
    }
    return r;
}

Json ft_json(const lg_force_torque& ft) {
    return Json{{"F", {ft.F[0], ft.F[1], ft.F[2]}},
                {"T", {ft.T[0], ft.T[1], ft.T[2]}},
                {"errF", {ft.errF[0], ft.errF[1], ft.errF[2]}},
                {"errT", {ft.errT[0], ft.errT[1], ft.errT[2]}},
                {"evaluations", ft.evaluations}};
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::vector<int> components(int dim) { return dim == 3 ? std::vector<int>{0, 1, 2, 3, 4, 5} : std::vector<int>{0, 1, 5}; }

std::string component_name(int dim, int comp) {
    static const char* names[6] = {"F1", "F2", "F3", "T1", "T2", "T3"};
    if (dim == 2 && comp == 5) return "T";
    return names[comp];
}

ForceReport run_force(const RunConfig& cfg, const std::string& command) {
    const std::vector<double> eps = cfg.eps_values();
    std::vector<PointResult> points(eps.size());

    // Results land in fixed slots, so the output order never depends on
    // completion order.
    if (std::thread::hardware_concurrency() > 1 && eps.size() > 1) {
        std::vector<std::future<PointResult>> futs;
        for (double e : eps) futs.push_back(std::async(std::launch::async, compute_point, std::cref(cfg), e));
        for (size_t i = 0; i < futs.size(); ++i) points[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < eps.size(); ++i) points[i] = compute_point(cfg, eps[i]);
    }

    const int dim = cfg.problem.dim;
    ForceReport rep;
    Json jpoints = Json::array();
    Json errors = Json::array();
    for (const PointResult& pr : points) {
        for (const std::string& e : pr.errors) {
            errors.push_back(Json{{"eps", pr.eps}, {"message", e}});
            rep.computation_failed = true;
        }
        for (int c : components(dim)) {
            if (cfg.mode != Mode::Asymptotic) {
                for (int k = 0; k < pr.subflows; ++k) {
                    Row row{pr.eps, c, k, {}, {}, {}, true};
                    if (pr.sub[k]) {
                        row.numeric = pick(*pr.sub[k], c);
                        row.error_est = pick_err(*pr.sub[k], c);
                    }
                    rep.rows.push_back(row);
                }
            }
            Row tot{pr.eps, c, -1, {}, {}, {}, true};
            if (pr.total) {
                tot.numeric = pick(*pr.total, c);
                tot.error_est = pick_err(*pr.total, c);
            }
            if (pr.has_expansion) {
                tot.expansion_empty = pr.comp[c].empty;
                if (!pr.comp[c].empty) tot.asymptotic = pr.comp[c].value;
            }
            rep.rows.push_back(tot);
        }

        Json jp{{"eps", pr.eps}};
        if (cfg.mode != Mode::Asymptotic) {
            Json subs = Json::array();
            for (int k = 0; k < pr.subflows; ++k) {
                Json s{{"subflow", k}};
                if (pr.sub[k])
                    s.update(ft_json(*pr.sub[k]));
                else
                    s["error"] = true;
                subs.push_back(s);
            }
            jp["subflows"] = subs;
            jp["total"] = pr.total ? ft_json(*pr.total) : Json(nullptr);
        }
        if (cfg.mode != Mode::Numeric) {
            if (pr.has_expansion) {
                Json comps = Json::array();
                for (int c : components(dim)) {
                    const ComponentExpansion& ce = pr.comp[c];
                    Json jc{{"component", component_name(dim, c)}, {"expansion", ce.text}, {"terms", ce.terms}};
                    jc["value"] = ce.empty ? Json(nullptr) : Json(ce.value);
                    if (ce.interval) {
                        jc["lower"] = ce.lower;
                        jc["upper"] = ce.upper;
                    }
                    comps.push_back(jc);
                }
                jp["asymptotic"] = Json{{"regime", pr.regime}, {"warnings", pr.warnings}, {"components", comps}};
            } else {
                jp["asymptotic"] = nullptr;
            }
        }
        jpoints.push_back(jp);
    }

    // Fitted exponents of the totals, where the samples allow a fit.
    Json exps = Json::array();
    if (eps.size() >= 3 && cfg.mode != Mode::Asymptotic) {
        for (int c : components(dim)) {
            std::vector<double> e, v;
            bool resolved = true;  // a slope through quadrature noise means nothing
            for (const PointResult& pr : points) {
                if (!pr.total) break;
                e.push_back(pr.eps);
                v.push_back(pick(*pr.total, c));
                resolved = resolved && std::abs(v.back()) > 10.0 * pick_err(*pr.total, c);
            }
            if (e.size() != eps.size() || !resolved) continue;
            double slope = 0, icpt = 0, res = 0;
            if (lg_fit_exponent(e.size(), e.data(), v.data(), &slope, &icpt, &res) == LG_OK)
                exps.push_back(Json{{"component", component_name(dim, c)}, {"subflow", "total"},
                                    {"slope", slope}, {"intercept", icpt}, {"residual", res}});
        }
    }

    Json rows = Json::array();
    for (const Row& r : rep.rows) {
        Json jr{{"eps", r.eps}, {"component", component_name(dim, r.component)},
                {"subflow", r.subflow < 0 ? Json("total") : Json(r.subflow)}};
        jr["numeric"] = r.numeric ? Json(*r.numeric) : Json(nullptr);
        jr["error_est"] = r.error_est ? Json(*r.error_est) : Json(nullptr);
        jr["asymptotic"] = r.asymptotic ? Json(*r.asymptotic) : Json(nullptr);
        jr["ratio"] = (r.numeric && r.asymptotic) ? Json(*r.numeric / *r.asymptotic) : Json(nullptr);
        rows.push_back(jr);
    }

    rep.json = Json{{"schema", "lubgap-report v1"},
                    {"command", command},
                    {"version", lg_version()},
                    {"config_echo", to_ini(cfg)},
                    {"mode", mode_name(cfg.mode)},
                    {"points", jpoints},
                    {"rows", rows},
                    {"exponents", exps},
                    {"errors", errors}};
    return rep;
}

std::string to_csv(const std::vector<Row>& rows, int dim) {
    std::ostringstream o;
    o << "# lubgap-report v1\n";
    o << "eps,component,subflow,numeric,error_est,asymptotic,ratio\n";
    for (const Row& r : rows) {
        std::optional<double> ratio;
        if (r.numeric && r.asymptotic && !r.expansion_empty) ratio = *r.numeric / *r.asymptotic;
        o << format_double(r.eps) << ',' << component_name(dim, r.component) << ','
          << (r.subflow < 0 ? std::string("total") : std::to_string(r.subflow)) << ',' << cell(r.numeric) << ','
          << cell(r.error_est) << ',' << cell(r.asymptotic) << ',' << cell(ratio) << '\n';
    }
    return o.str();
}

VerifyReport run_verify(const RunConfig& cfg, const std::string& suite) {
    lg_verify_options o;
    lg_verify_options_default(&o);
    o.seed = cfg.verify.seed;
    o.surface_points = cfg.verify.surface_points;
    o.interior_points = cfg.verify.interior_points;
    o.random_configs = cfg.verify.random_configs;
    o.eps_list = cfg.verify.eps.empty() ? nullptr : cfg.verify.eps.data();
    o.n_eps = cfg.verify.eps.size();

    lg_report* raw = nullptr;
    const lg_status st = lg_verify_run(suite.c_str(), &cfg.problem, &cfg.quadrature, &o, &raw);
    std::unique_ptr<lg_report, ReportDeleter> rep(raw);
    if (st != LG_OK) throw std::runtime_error(describe_failure(st));

    VerifyReport out;
    out.passed = lg_report_passed(rep.get());
    std::ostringstream csv;
    csv << "# lubgap-verify v1\n";
    csv << "suite,check,pass,measured,threshold,detail\n";
    Json checks = Json::array();
    for (size_t i = 0; i < lg_report_check_count(rep.get()); ++i) {
        const char *name = nullptr, *detail = nullptr;
        int pass = 0;
        double measured = 0, threshold = 0;
        lg_report_check(rep.get(), i, &name, &pass, &measured, &threshold, &detail);
        csv << suite << ',' << csv_escape(name) << ',' << (pass ? "pass" : "fail") << ',' << format_double(measured)
            << ',' << format_double(threshold) << ',' << csv_escape(detail) << '\n';
        Json jc{{"name", name}, {"pass", bool(pass)}};
        jc["measured"] = std::isfinite(measured) ? Json(measured) : Json(format_double(measured));
        jc["threshold"] = threshold;
        jc["detail"] = detail;
        checks.push_back(jc);
    }
    out.csv = csv.str();
    out.json = Json{{"schema", "lubgap-verify v1"},
                    {"suite", suite},
                    {"version", lg_version()},
                    {"config_echo", to_ini(cfg)},
                    {"passed", out.passed},
                    {"checks", checks}};
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace lubgap_cli
