// Acceptance checks, one per criterion.  `acceptance N` runs criterion N,
// `acceptance` runs all of them.  Each prints a single PASS/FAIL line; the
// exit status is non-zero when any requested criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "mpfr_oracle.hpp"
#include "special.hpp"
#include "traction.hpp"
#include "verify.hpp"

using namespace lubgap;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

QuadSpec numeric_spec() {
    QuadSpec q;
    q.rel_tol = 1e-9;
    return q;
}

ProblemParams squeeze(double m, double eps) {
    ProblemParams p;
    p.profile.m = m;
    p.profile.eps = eps;
    p.U = {0, 0, -1};
    return p;
}

// Names of failing checks, at most a few, for the summary line.
std::string failing(const SuiteResult& r) {
    std::string out;
    int n = 0;
    for (const Check& c : r.checks) {
        if (c.pass) continue;
        if (n++ < 3) out += (out.empty() ? "" : ",") + c.name;
    }
    if (n > 3) out += fmt(",+%d more", n - 3);
    return out;
}

Outcome c1() {
    bool ok = true;
    double worst_table = 0.0;
    const struct {
        double i, j, v;
    } table[] = {{1, 2, 0.5}, {3, 4, 0.5}, {1, 1, pi / 2}, {3, 3, pi / 8}};
    for (const auto& t : table) {
        const double err = std::abs(gamma_coeff(t.i, t.j, 2.0) - t.v);
        worst_table = std::max(worst_table, err);
        ok = ok && err <= 1e-12;
    }
    double worst_rand = 0.0;
    for (const auto& t : oracle::random_triples(50, 20240611)) {
        const double ref = oracle::gamma_coeff(t.i, t.j, t.m);
        const double err = std::abs(gamma_coeff(t.i, t.j, t.m) - ref) / std::abs(ref);
        worst_rand = std::max(worst_rand, err);
        ok = ok && err <= 1e-11;
    }
    return {ok, fmt("table max abs err %.2e (tol 1e-12), 50 MPFR triples max rel err %.2e (tol 1e-11)",
                    worst_table, worst_rand)};
}

Outcome c2() {
    double worst = 0.0;
    for (int a = 0; a < 5; ++a) {
        const double r = 0.1 + 0.9 * a / 4;
        for (int b = 0; b < 5; ++b) {
            const double eps = std::pow(10.0, -6.0 + b);
            const double ref = 0.5 * std::log1p(r * r / eps);
            worst = std::max(worst, std::abs(phi(1, 1, 2, r, eps) - ref) / std::abs(ref));
        }
    }
    return {worst <= 1e-9, fmt("max rel err %.2e over 5x5 grid (tol 1e-9)", worst)};
}

Outcome c3() {
    bool ok = true;
    std::string s;
    const double eps = 1e-5;
    for (double m : {2.0, 3.0, 4.0}) {
        const ProblemParams p = squeeze(m, eps);
        const ForceTorque ft = force_numeric(3, p, numeric_spec());
        const double ratio = std::pow(eps, 3 - 4 / m) * ft.F[2] / (3 * pi * p.mu * gamma_coeff(3, 4, m) * -p.U[2]);
        ok = ok && ratio >= 0.99 && ratio <= 1.01;
        s += fmt("%sm=%g ratio %.5f", s.empty() ? "" : ", ", m, ratio);
    }
    return {ok, s + " (band [0.99, 1.01])"};
}

Outcome c4() {
    bool ok = true;
    std::string s;
    const QuadSpec q = numeric_spec();
    auto slope_of = [&](double m, int k, int comp, Vec3 U, const std::vector<double>& eps) {
        std::vector<std::pair<double, double>> samples;
        for (double e : eps) {
            ProblemParams p;
            p.profile.m = m;
            p.profile.eps = e;
            p.U = U;
            samples.push_back({e, force_numeric(k, p, q).F[comp]});
        }
        return fit_exponent(samples).slope;
    };
    const std::vector<double> decade2{1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
    for (double m : {2.0, 3.0, 4.0}) {
        const double want = -(3 - 4 / m);
        const double got = slope_of(m, 3, 2, {0, 0, -1}, decade2);
        const double rel = std::abs(got - want) / std::abs(want);
        ok = ok && rel <= 0.01;
        s += fmt("F3 m=%g slope %.4f vs %.4f; ", m, got, want);
    }
    for (double m : {3.0, 4.0}) {
        const double want = -(1 - 2 / m);
        const double got = slope_of(m, 1, 0, {1, 0, 0}, {1e-7, 1e-8, 1e-9});
        const double rel = std::abs(got - want) / std::abs(want);
        ok = ok && rel <= 0.02;
        const double info = slope_of(m, 1, 0, {1, 0, 0}, decade2);
        s += fmt("F1 m=%g slope %.4f vs %.4f [eps 1e-9..1e-7] (1e-5..1e-3: %.4f); ", m, got, want, info);
    }
    {
        ProblemParams p;
        p.U = {1, 0, 0};
        double v[2];
        const double e[2] = {1e-3, 1e-5};
        for (int i = 0; i < 2; ++i) {
            p.profile.eps = e[i];
            v[i] = force_numeric(1, p, q).F[0];
        }
        const LeadingFit lf = fit_leading(e[0], v[0], e[1], v[1], 0.0, true);
        const double want = pi * p.mu * (p.U[0] - p.omega[1] * p.profile.R);
        const double rel = std::abs(std::abs(lf.c) - want) / want;
        ok = ok && rel <= 0.05;
        s += fmt("m=2 |ln eps| coeff %.4f vs %.4f", std::abs(lf.c), want);
    }
    return {ok, s};
}

Outcome c5() {
    const double m = 3.0, a = 3 - 4 / m;
    const double e[2] = {1e-4, 1e-5};
    double v[2];
    ProblemParams p;
    p.profile.m = m;
    p.omega = {0, 1, 0};
    for (int i = 0; i < 2; ++i) {
        p.profile.eps = e[i];
        const ForceTorque ft = total_numeric(p, numeric_spec());
        v[i] = ft.F[0] - force_asymptotic(p).F[0].evaluate(e[i]);
    }
    const LeadingFit lf = fit_leading(e[0], v[0], e[1], v[1], a);
    const double r3a = std::pow(p.profile.r, 3) * coefficients_3d(m, p.mu, p.profile.r, p.profile.R).alpha34;
    const double lo = std::pow(2.0, -3.0) * r3a, hi = std::pow(2.0, 1.5) * r3a;
    const bool ok = lf.c >= lo * (1 - 0.02) && lf.c <= hi * (1 + 0.02);
    return {ok, fmt("coefficient %.6f in [%.6f, %.6f] with 2%% slack", lf.c, lo, hi)};
}

Outcome c6() {
    bool ok = true;
    std::string s;
    ProblemParams mc;
    mc.profile.eps = 1e-3;
    ProblemParams fl = mc;
    fl.profile.kind = ProfileKind::FlatCapped;
    fl.profile.s = 0.1;
    for (const auto& [name, p] : {std::pair{"m-convex", mc}, {"flat", fl}}) {
        const SuiteResult r = verify_parity(p, numeric_spec(), VerifyOptions{});
        ok = ok && r.pass();
        double worst = 0.0;
        for (const Check& c : r.checks)
            if (c.name.rfind("T3", 0) == 0) worst = std::max(worst, c.measured);
        s += fmt("%s%s: %s (worst |T3|/err %.2e, tol 10)", s.empty() ? "" : "; ", name, r.pass() ? "ok" : "fail",
                 worst);
        if (!r.pass()) s += " [" + failing(r) + "]";
    }
    return {ok, s};
}

Outcome c7() {
    bool ok = true;
    std::string s;
    ProblemParams base;
    base.profile.eps = 1e-3;
    base.U = {1, 0.5, -1};
    base.omega = {0.3, 0.2, 0.7};
    ProblemParams flat = base;
    flat.profile.kind = ProfileKind::FlatCapped;
    flat.profile.s = 0.1;
    ProblemParams two = base;
    two.profile.dim = 2;
    for (const auto& [name, p] : {std::pair{"3D m-convex", base}, {"3D flat", flat}, {"2D", two}}) {
        for (const auto& suite : {"bc", "div"}) {
            const SuiteResult r = run_suite(suite, p, numeric_spec(), VerifyOptions{});
            ok = ok && r.pass();
            s += fmt("%s%s %s: %s", s.empty() ? "" : "; ", name, suite, r.pass() ? "ok" : "fail");
            if (!r.pass()) s += " [" + failing(r) + "]";
        }
    }
    return {ok, s};
}

Outcome c8() {
    ProblemParams p;
    p.profile.kind = ProfileKind::FlatCapped;
    p.profile.s = 0.1;
    p.profile.eps = 1e-4;
    p.U = {0, 0, -1};
    const double num = total_numeric(p, numeric_spec()).F[2];
    const double thm = force_asymptotic(p).F[2].evaluate(p.profile.eps);
    const double ratio = num / thm;
    return {ratio >= 0.98 && ratio <= 1.02,
            fmt("numeric %.6e / expansion %.6e = %.5f (band [0.98, 1.02])", num, thm, ratio)};
}

Outcome c9() {
    bool ok = true;
    const QuadSpec q = numeric_spec();
    std::string s;
    {
        ProblemParams p;
        p.profile.dim = 2;
        p.profile.eps = 1e-6;
        p.U = {1, 0, 0};
        const double num = total_numeric(p, q).F[0];
        const double a11 = coefficients_2d(2.0, p.mu, p.profile.r, p.profile.R).alpha11;
        const double ratio = num / (-(p.U[0] + p.omega[0] * p.profile.R) * a11 * std::pow(p.profile.eps, -0.5));
        ok = ok && std::abs(ratio - 1.0) <= 0.02;
        s += fmt("F1 ratio %.5f at eps=1e-6 (tol 2%%)", ratio);
    }
    for (double m : {5.0 / 3.0, 3.0}) {
        const double e[2] = {1e-6, 1e-7};
        double res[2] = {}, printed = 0.0;
        for (int i = 0; i < 2; ++i) {
            ProblemParams p;
            p.profile.dim = 2;
            p.profile.m = m;
            p.profile.eps = e[i];
            p.omega = {1, 0, 0};
            const TheoremResult th = force_asymptotic(p);
            double power_terms = 0.0;
            for (const AsymptoticTerm& t : th.T[2].terms) {
                if (t.is_log)
                    printed = t.coeff;
                else
                    power_terms += t.evaluate(e[i]);
            }
            res[i] = total_numeric(p, q).T[2] - power_terms;
        }
        const double est = (res[1] - res[0]) / (std::abs(std::log(e[1])) - std::abs(std::log(e[0])));
        const double rel = std::abs(est - printed) / std::abs(printed);
        ok = ok && rel <= 0.10;
        s += fmt("; m=%.4g log coeff %.4f vs %.4f (residual/|ln eps| at 1e-7: %.4f)", m, est, printed,
                 res[1] / std::abs(std::log(e[1])));
    }
    return {ok, s};
}

Outcome c10() {
    ProblemParams p;
    p.U = {1, 0.5, -1};
    p.omega = {0.3, 0.2, 0.7};
    QuadSpec q;
    q.rel_tol = 1e-3;
    VerifyOptions o;
    o.eps_list = {1e-2, 1e-3, 1e-4};
    const SuiteResult r = verify_dual(p, q, o);
    std::string s;
    for (const Check& c : r.checks) s += fmt("%s%s %s %.3g", s.empty() ? "" : ", ", c.name.c_str(), c.pass ? "ok" : "FAIL", c.measured);
    return {r.pass(), s + " (slope tol 0.1)"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome c11() {
    const fs::path dir = fs::temp_directory_path() / ("lubgap_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string config = std::string(LUBGAP_SOURCE_DIR) + "/configs/verify_default.ini";
    bool ok = true;
    std::string s;
    for (const char* suite : {"bc", "div", "exponents", "parity"}) {
        std::string outs[2][2];
        for (int run = 0; run < 2; ++run) {
            // same paths both times: the JSON echoes the configuration, outputs included
            const fs::path csv = dir / fmt("%s.csv", suite), json = dir / fmt("%s.json", suite);
            fs::remove(csv);
            fs::remove(json);
            const std::string cmd = std::string(LUBGAP_CLI_PATH) + " verify " + suite + " --config " + config +
                                    " --out-csv " + csv.string() + " --out-json " + json.string() + " > /dev/null 2>&1";
            const int st = std::system(cmd.c_str());
            const int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
            if (code != 0 && code != 3) ok = false;  // 3 = suite ran, some check failed
            outs[run][0] = slurp(csv);
            outs[run][1] = slurp(json);
        }
        const bool same = !outs[0][0].empty() && !outs[0][1].empty() && outs[0][0] == outs[1][0] && outs[0][1] == outs[1][1];
        ok = ok && same;
        s += fmt("%s%s %s", s.empty() ? "" : ", ", suite, same ? "identical" : "DIFFER");
    }
    fs::remove_all(dir);
    return {ok, s + " (CSV and JSON over two runs)"};
}

struct Criterion {
    const char* label;
    double budget_s;  // 0: no runtime bound stated
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {"special-function oracle", 1, c1},
        {"Phi closed form (m=2)", 5, c2},
        {"squeeze coefficient", 60, c3},
        {"blow-up exponents", 300, c4},
        {"sandwich coefficient", 300, c5},
        {"parity and zero suite", 0, c6},
        {"field correctness suite", 60, c7},
        {"flat-profile expansion", 120, c8},
        {"2D cross-check", 300, c9},
        {"dual boundedness", 600, c10},
        {"determinism", 0, c11},
    };
    return list;
}

bool run_one(int n) {
    const Criterion& c = criteria()[n - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2fs", secs);
    if (c.budget_s > 0) {
        timing += fmt(" of %gs", c.budget_s);
        if (secs >= c.budget_s) pass = false;
    }
    std::printf("criterion %d: %s  %s: %s [%s]\n", n, pass ? "PASS" : "FAIL", c.label, o.summary.c_str(),
                timing.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > int(criteria().size())) {
            std::fprintf(stderr, "usage: acceptance [1..%zu ...]\n", criteria().size());
            return 2;
        }
        which.push_back(n);
    }
    if (which.empty())
        for (int n = 1; n <= int(criteria().size()); ++n) which.push_back(n);
    bool all = true;
    for (int n : which) all = run_one(n) && all;
    return all ? 0 : 1;
}
