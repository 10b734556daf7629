#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "report.hpp"

using namespace lubgap_cli;

namespace {

enum Exit { kOk = 0, kConfig = 1, kCompute = 2, kVerify = 3 };

struct Common {
    std::string config_path;
    std::string mode;
    std::optional<double> eps;
    std::string out_csv, out_json;
    bool override_flat = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_mode) {
    cmd->add_option("--config", c.config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
    if (with_mode) cmd->add_option("--mode", c.mode, "numeric, asymptotic or both");
    cmd->add_option("--eps", c.eps, "single gap width (replaces [problem] eps and any sweep)");
    cmd->add_option("--out-csv", c.out_csv, "CSV output path");
    cmd->add_option("--out-json", c.out_json, "JSON report path");
    cmd->add_flag("--override-flat-hypothesis", c.override_flat,
                  "evaluate the flat-profile expansions even when s is outside the theorem range");
}

RunConfig assemble(const Common& c, bool drop_sweep_on_eps) {
    RunConfig cfg = load_config(c.config_path);
    if (!c.mode.empty()) cfg.mode = parse_mode(c.mode);
    if (c.eps) {
        cfg.problem.eps = *c.eps;
        if (drop_sweep_on_eps) cfg.sweep.reset();
    }
    if (!c.out_csv.empty()) cfg.csv_path = c.out_csv;
    if (!c.out_json.empty()) cfg.json_path = c.out_json;
    if (c.override_flat) cfg.override_flat_hypothesis = true;
    validate(cfg);
    return cfg;
}

int cmd_constants(double m, double mu, double r, double R) {
    static const int pairs[9][2] = {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 3}, {3, 4}, {3, 5}, {3, 6}};
    if (!(m > 1.0)) {
        std::fprintf(stderr, "error: constants need m > 1\n");
        return kConfig;
    }
    std::printf("# m = %s\n", format_double(m).c_str());
    std::printf("i,j,Gamma\n");
    for (const auto& p : pairs) {
        double g = 0;
        if (lg_gamma_coeff(p[0], p[1], m, &g) != LG_OK) {
            std::printf("# %d,%d undefined: %s\n", p[0], p[1], lg_last_error());
            continue;
        }
        std::printf("%d,%d,%s\n", p[0], p[1], format_double(g).c_str());
    }
    std::printf("# mu = %s, r = %s, R = %s\n", format_double(mu).c_str(), format_double(r).c_str(),
                format_double(R).c_str());
    double c3[4];
    if (lg_coefficients_3d(m, mu, r, R, c3) == LG_OK) {
        std::printf("alpha12,%s\nalpha34,%s\nbeta1,%s\nbeta2,%s\n", format_double(c3[0]).c_str(),
                    format_double(c3[1]).c_str(), format_double(c3[2]).c_str(), format_double(c3[3]).c_str());
    } else {
        std::printf("# 3D coefficients unavailable: %s\n", lg_last_error());
    }
    double c2[5];
    if (lg_coefficients_2d(m, mu, r, R, c2) == LG_OK) {
        std::printf("alpha11_2d,%s\nalpha33_2d,%s\n", format_double(c2[0]).c_str(), format_double(c2[1]).c_str());
        if (m >= 3.0) std::printf("alpha13_2d,%s\n", format_double(c2[2]).c_str());
        if (m >= 5.0 / 3.0) std::printf("alpha35_2d,%s\n", format_double(c2[3]).c_str());
        std::printf("beta_2d,%s\n", format_double(c2[4]).c_str());
    } else {
        std::printf("# 2D coefficients unavailable: %s\n", lg_last_error());
    }
    return kOk;
}

int emit_force(const RunConfig& cfg, const std::string& command) {
    const ForceReport rep = run_force(cfg, command);
    const std::string csv = to_csv(rep.rows, cfg.problem.dim);
    if (cfg.csv_path.empty())
        std::cout << csv;
    else
        write_file(cfg.csv_path, csv);
    if (!cfg.json_path.empty()) write_file(cfg.json_path, rep.json.dump(2) + "\n");
    if (rep.computation_failed) {
        for (const auto& e : rep.json["errors"])
            std::cerr << "error at eps=" << format_double(e["eps"].get<double>()) << ": "
                      << e["message"].get<std::string>() << "\n";
        return kCompute;
    }
    return kOk;
}

int emit_verify(const RunConfig& cfg, const std::string& suite) {
    const VerifyReport rep = run_verify(cfg, suite);
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, rep.csv);
    if (!cfg.json_path.empty()) write_file(cfg.json_path, rep.json.dump(2) + "\n");
    for (const auto& c : rep.json["checks"]) {
        const std::string measured =
            c["measured"].is_string() ? c["measured"].get<std::string>() : format_double(c["measured"].get<double>());
        std::printf("%s %-24s measured=%s threshold=%s %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                    c["name"].get<std::string>().c_str(), measured.c_str(),
                    format_double(c["threshold"].get<double>()).c_str(), c["detail"].get<std::string>().c_str());
    }
    std::printf("suite %s: %s\n", suite.c_str(), rep.passed ? "passed" : "FAILED");
    return rep.passed ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Force and torque on nearly touching particles in Stokes flow"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lg_version());

    double cm = 2.0, cmu = 1.0, cr = 0.5, cR = 1.0;
    std::string cconfig;
    auto* constants = app.add_subcommand("constants", "print Gamma_ij^(m) and the theorem coefficients");
    constants->add_option("--m", cm, "profile exponent");
    constants->add_option("--mu", cmu, "viscosity");
    constants->add_option("--r", cr, "patch radius");
    constants->add_option("--R", cR, "particle size");
    constants->add_option("--config", cconfig, "take m, mu, r, R from a configuration file")
        ->check(CLI::ExistingFile);

    double pi = 1, pj = 1, pm = 2, pr = 0.5, peps = 1e-3;
    std::optional<double> ps;
    auto* phi = app.add_subcommand("phi", "evaluate Phi_ij^(m)(r; eps), or Psi_ij when --s is given");
    phi->add_option("--i", pi)->required();
    phi->add_option("--j", pj)->required();
    phi->add_option("--m", pm);
    phi->add_option("--r", pr);
    phi->add_option("--eps", peps)->required();
    phi->add_option("--s", ps, "flat cap radius (selects Psi)");

    Common fc, sc, vc;
    auto* force = app.add_subcommand("force", "numeric and/or asymptotic force and torque");
    add_common(force, fc, true);
    auto* sweep = app.add_subcommand("sweep", "force over the [sweep] epsilons with exponent fits");
    add_common(sweep, sc, true);
    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("suite", suite, "bc, div, parity, dual or exponents")
        ->required()
        ->check(CLI::IsMember({"bc", "div", "parity", "dual", "exponents"}));
    add_common(verify, vc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*constants) {
            if (!cconfig.empty()) {
                const RunConfig cfg = load_config(cconfig);
                cm = cfg.problem.m;
                cmu = cfg.problem.mu;
                cr = cfg.problem.r;
                cR = cfg.problem.R;
            }
            return cmd_constants(cm, cmu, cr, cR);
        }
        if (*phi) {
            double v = 0;
            const lg_status st = ps ? lg_psi(pi, pj, *ps, pr, peps, &v) : lg_phi(pi, pj, pm, pr, peps, &v);
            if (st != LG_OK) {
                std::fprintf(stderr, "error: %s\n", lg_last_error());
                return st == LG_ERR_DOMAIN ? kConfig : kCompute;
            }
            std::printf("%s\n", format_double(v).c_str());
            return kOk;
        }
        if (*force) return emit_force(assemble(fc, true), "force");
        if (*sweep) {
            RunConfig cfg = assemble(sc, false);
            if (!cfg.sweep) throw ConfigError("the sweep command needs a [sweep] section");
            return emit_force(cfg, "sweep");
        }
        if (*verify) return emit_verify(assemble(vc, true), suite);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kCompute;
    }
    return kOk;
}
