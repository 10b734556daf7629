#include "doctest.h"
#include "config.hpp"
#include "report.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace lubgap_cli;
namespace fs = std::filesystem;

namespace {

const char* kBasic = R"(# sliding paraboloid
[problem]
dim = 3
profile = mconvex
m = 2
eps = 1e-3
U = 1 0 0
omega = 0 0 0

[quadrature]
rel_tol = 1e-9
)";

int line_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / ("lubgap_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string& args, const fs::path& out) {
    const std::string cmd = std::string(LUBGAP_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("configuration round trip") {
    RunConfig c = parse_config(kBasic);
    CHECK(c.problem.U[0] == 1.0);
    CHECK(c.problem.eps == 1e-3);
    CHECK(c.quadrature.rel_tol == 1e-9);
    CHECK(parse_config(to_ini(c)) == c);

    c.problem.kind = LG_PROFILE_FLAT;
    c.problem.s = 0.1;
    c.problem.omega[2] = 0.1 + 0.2;  // not exactly representable in short decimal
    c.sweep = Sweep{1e-2, 1e-5, 7};
    c.mode = Mode::Asymptotic;
    c.csv_path = "out.csv";
    c.verify.eps = {1e-2, 3e-3};
    c.override_flat_hypothesis = true;
    CHECK(parse_config(to_ini(c)) == c);
}

TEST_CASE("configuration errors carry line numbers") {
    CHECK(line_of("[problem]\nm = 2\nbogus = 1\n") == 3);
    CHECK(line_of("[problem]\nm = 2\n\n[nothing]\n") == 4);
    CHECK(line_of("[problem]\nm = two\n") == 2);
    CHECK(line_of("[problem]\nU = 1 2\n") == 2);
    CHECK(line_of("[problem]\nm = 2\nm = 3\n") == 3);
    CHECK(line_of("[problem]\neps = 1e-3\n[problem]\n") == 3);
    CHECK(line_of("[sweep]\neps_from = 1e-5\neps_to = 1e-2\npoints = 4\n") == 2);
    CHECK(line_of("[sweep]\neps_from = 1e-2\neps_to = 1e-5\npoints = 2\n") == 4);
    CHECK(line_of(kBasic) == -1);
    CHECK(line_of("[problem]   # note\nm = 3  ; three\nU = 1 0 -1 # down\n") == -1);
    CHECK(parse_config("[problem]\nm = 3  # three\n").problem.m == 3.0);
}

TEST_CASE("sweep epsilons are log spaced from the largest") {
    RunConfig c = parse_config(std::string(kBasic) + "[sweep]\neps_from = 1e-2\neps_to = 1e-5\npoints = 4\n");
    const std::vector<double> e = c.eps_values();
    REQUIRE(e.size() == 4);
    CHECK(e[0] == 1e-2);
    CHECK(e[1] == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(e[3] == 1e-5);
}

TEST_CASE("force report rows") {
    RunConfig c = parse_config(kBasic);
    const ForceReport rep = run_force(c, "force");
    CHECK(!rep.computation_failed);
    // one row per (component, sub-flow) plus the total, for one eps
    CHECK(rep.rows.size() == 6 * 8);
    std::set<std::pair<int, int>> seen;
    for (const Row& r : rep.rows) CHECK(seen.insert({r.component, r.subflow}).second);

    const std::vector<std::string> csv = lines(to_csv(rep.rows, 3));
    REQUIRE(csv.size() == 2 + rep.rows.size());
    CHECK(csv[0] == "# lubgap-report v1");
    CHECK(csv[1] == "eps,component,subflow,numeric,error_est,asymptotic,ratio");
    CHECK(csv[2].rfind("0.001,F1,0,", 0) == 0);
    CHECK(csv[9].rfind("0.001,F1,total,", 0) == 0);
    // sub-flow rows carry no expansion, so the ratio cell is blank
    CHECK(csv[2].back() == ',');
    CHECK(csv[9].back() != ',');
}

TEST_CASE("asymptotic mode reproduces the sliding paraboloid") {
    RunConfig c = parse_config(kBasic);
    c.mode = Mode::Asymptotic;
    c.problem.eps = 1e-4;
    const ForceReport rep = run_force(c, "force");
    bool found = false;
    for (const Row& r : rep.rows) {
        CHECK(!r.numeric.has_value());
        if (r.component == 0 && r.subflow < 0) {
            REQUIRE(r.asymptotic.has_value());
            CHECK(*r.asymptotic == doctest::Approx(-std::numbers::pi * std::log(1e4)).epsilon(1e-14));
            found = true;
        }
    }
    CHECK(found);
    CHECK(rep.json["schema"] == "lubgap-report v1");
}

TEST_CASE("2D reports use F1, F2 and T") {
    CHECK(components(2) == std::vector<int>{0, 1, 5});
    CHECK(component_name(2, 5) == "T");
    CHECK(component_name(3, 4) == "T2");
}

TEST_CASE("command line exit codes and outputs") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "basic.ini", out = dir / "stdout.txt";
    {
        std::ofstream(cfg) << kBasic;
    }
    CHECK(run_cli("force --config " + cfg.string() + " --mode asymptotic", out) == 0);
    CHECK(lines(slurp(out))[0] == "# lubgap-report v1");

    CHECK(run_cli("constants --m 2", out) == 0);
    CHECK(slurp(out).find("1,1,1.57079632679489") != std::string::npos);

    CHECK(run_cli("constants --m 1", out) == 1);
    CHECK(run_cli("phi --i 1 --j 1 --m 2 --r 1 --eps 1e-4", out) == 0);

    const fs::path bad = dir / "bad.ini";
    {
        std::ofstream(bad) << "[problem]\nm = 2\ncolour = red\n";
    }
    CHECK(run_cli("force --config " + bad.string(), out) == 1);
    CHECK(slurp(out).find("line 3") != std::string::npos);

    CHECK(run_cli("sweep --config " + cfg.string(), out) == 1);  // no [sweep]

    const fs::path csv = dir / "bc.csv", json = dir / "bc.json";
    CHECK(run_cli("verify bc --config " + cfg.string() + " --out-csv " + csv.string() + " --out-json " +
                      json.string(),
                  out) == 0);
    CHECK(lines(slurp(csv))[0] == "# lubgap-verify v1");
    CHECK(slurp(json).find("\"schema\": \"lubgap-verify v1\"") != std::string::npos);

    const fs::path flat = dir / "flat.ini";
    {
        std::ofstream(flat) << "[problem]\nprofile = flat\ns = 0.3\nU = 0 0 -1\n";
    }
    CHECK(run_cli("force --config " + flat.string() + " --mode asymptotic", out) == 2);
    CHECK(run_cli("force --config " + flat.string() + " --mode asymptotic --override-flat-hypothesis", out) == 0);

    fs::remove_all(dir);
}
