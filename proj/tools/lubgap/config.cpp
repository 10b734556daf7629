#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace lubgap_cli {

namespace pt = boost::property_tree;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Numeric: return "numeric";
        case Mode::Asymptotic: return "asymptotic";
        case Mode::Both: return "both";
    }
    return "both";
}

Mode parse_mode(const std::string& s) {
    if (s == "numeric") return Mode::Numeric;
    if (s == "asymptotic") return Mode::Asymptotic;
    if (s == "both") return Mode::Both;
    throw ConfigError("mode must be numeric, asymptotic or both (got '" + s + "')");
}

RunConfig::RunConfig() {
    lg_problem_desc_default(&problem);
    lg_quad_desc_default(&quadrature);
    lg_verify_options o;
    lg_verify_options_default(&o);
    verify.seed = o.seed;
    verify.surface_points = o.surface_points;
    verify.interior_points = o.interior_points;
    verify.random_configs = o.random_configs;
}

std::vector<double> RunConfig::eps_values() const {
    if (!sweep) return {problem.eps};
    std::vector<double> out;
    const double a = std::log(sweep->eps_from), b = std::log(sweep->eps_to);
    for (int i = 0; i < sweep->points; ++i) {
        if (i == 0)
            out.push_back(sweep->eps_from);
        else if (i == sweep->points - 1)
            out.push_back(sweep->eps_to);
        else
            out.push_back(std::exp(a + (b - a) * i / (sweep->points - 1)));
    }
    return out;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const lg_problem_desc &p = a.problem, &q = b.problem;
    const bool prob = p.dim == q.dim && p.kind == q.kind && p.m == q.m && p.r == q.r && p.s == q.s &&
                      p.eps == q.eps && p.R == q.R && p.mu == q.mu &&
                      std::equal(p.U, p.U + 3, q.U) && std::equal(p.omega, p.omega + 3, q.omega);
    const bool quad = a.quadrature.abs_tol == b.quadrature.abs_tol && a.quadrature.rel_tol == b.quadrature.rel_tol &&
                      a.quadrature.max_subdivisions == b.quadrature.max_subdivisions;
    return prob && quad && a.sweep == b.sweep && a.csv_path == b.csv_path && a.json_path == b.json_path &&
           a.mode == b.mode && a.override_flat_hypothesis == b.override_flat_hypothesis && a.verify == b.verify;
}

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"problem", {"dim", "profile", "m", "r", "s", "eps", "R", "mu", "U", "omega"}},
    {"quadrature", {"rel_tol", "abs_tol", "max_subdivisions"}},
    {"sweep", {"eps_from", "eps_to", "points"}},
    {"output", {"csv", "json"}},
    {"run", {"mode", "override_flat_hypothesis"}},
    {"verify", {"seed", "surface_points", "interior_points", "random_configs", "eps"}},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Line numbers of sections and keys, collected before boost sees the text.
struct LineIndex {
    std::map<std::string, int> lines;
    int of(const std::string& path) const {
        auto it = lines.find(path);
        return it == lines.end() ? 0 : it->second;
    }
};

std::string prepare(const std::string& text, LineIndex& idx) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line, section;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        // trailing "  # note" or "  ; note" comments
        for (size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line.erase(i);
                break;
            }
        }
        const std::string t = trim(line);
        if (!t.empty() && t[0] == '#') {
            out << ";" << t.substr(1) << "\n";
            continue;
        }
        if (t.empty() || t[0] == ';') {
            out << line << "\n";
            continue;
        }
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            if (!kSchema.count(section)) throw ConfigError("unknown section [" + section + "]", n);
            if (!idx.lines.emplace(section, n).second)
                throw ConfigError("duplicate section [" + section + "]", n);
        } else if (auto eq = t.find('='); eq != std::string::npos) {
            const std::string key = trim(t.substr(0, eq));
            if (section.empty()) throw ConfigError("key '" + key + "' outside any section", n);
            if (!kSchema.at(section).count(key))
                throw ConfigError("unknown key '" + key + "' in [" + section + "]", n);
            idx.lines.emplace(section + "." + key, n);
        }
        out << line << "\n";
    }
    return out.str();
}

class Reader {
public:
    Reader(const pt::ptree& tree, const LineIndex& idx) : tree_(tree), idx_(idx) {}

    bool has(const std::string& path) const { return bool(tree_.get_optional<std::string>(path)); }

    std::optional<std::string> str(const std::string& path) const {
        auto v = tree_.get_optional<std::string>(path);
        if (!v) return std::nullopt;
        return trim(*v);
    }

    template <class T>
    void number(const std::string& path, T& target) const {
        auto s = str(path);
        if (!s) return;
        target = parse<T>(*s, path);
    }

    void list(const std::string& path, std::vector<double>& target) const {
        auto s = str(path);
        if (!s) return;
        target.clear();
        std::string tok;
        std::string src = *s;
        std::replace(src.begin(), src.end(), ',', ' ');
        std::istringstream in(src);
        while (in >> tok) target.push_back(parse<double>(tok, path));
    }

    void vec3(const std::string& path, double* target) const {
        std::vector<double> v;
        list(path, v);
        if (!has(path)) return;
        if (v.size() != 3) fail(path, "expects three components");
        std::copy(v.begin(), v.end(), target);
    }

    bool boolean(const std::string& path, bool fallback) const {
        auto s = str(path);
        if (!s) return fallback;
        if (*s == "true" || *s == "1" || *s == "yes") return true;
        if (*s == "false" || *s == "0" || *s == "no") return false;
        fail(path, "expects true or false");
    }

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        throw ConfigError(path + ": " + what, idx_.of(path));
    }

    int line(const std::string& path) const { return idx_.of(path); }

private:
    template <class T>
    T parse(const std::string& s, const std::string& path) const {
        T v{};
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(path, "cannot parse '" + s + "'");
        return v;
    }

    const pt::ptree& tree_;
    const LineIndex& idx_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    LineIndex idx;
    const std::string prepared = prepare(text, idx);
    pt::ptree tree;
    try {
        std::istringstream in(prepared);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(origin + ": " + e.message(), int(e.line()));
    }
    const Reader rd(tree, idx);
    RunConfig c;
    lg_problem_desc& p = c.problem;

    rd.number("problem.dim", p.dim);
    if (auto prof = rd.str("problem.profile")) {
        if (*prof == "mconvex")
            p.kind = LG_PROFILE_MCONVEX;
        else if (*prof == "flat")
            p.kind = LG_PROFILE_FLAT;
        else
            rd.fail("problem.profile", "expects mconvex or flat");
    }
    rd.number("problem.m", p.m);
    rd.number("problem.r", p.r);
    rd.number("problem.s", p.s);
    rd.number("problem.eps", p.eps);
    rd.number("problem.R", p.R);
    rd.number("problem.mu", p.mu);
    rd.vec3("problem.U", p.U);
    rd.vec3("problem.omega", p.omega);

    rd.number("quadrature.rel_tol", c.quadrature.rel_tol);
    rd.number("quadrature.abs_tol", c.quadrature.abs_tol);
    rd.number("quadrature.max_subdivisions", c.quadrature.max_subdivisions);

    if (tree.get_child_optional("sweep")) {
        Sweep s;
        for (const char* k : {"sweep.eps_from", "sweep.eps_to", "sweep.points"})
            if (!rd.has(k)) throw ConfigError(std::string(k) + " is required in [sweep]", rd.line("sweep"));
        rd.number("sweep.eps_from", s.eps_from);
        rd.number("sweep.eps_to", s.eps_to);
        rd.number("sweep.points", s.points);
        if (!(s.eps_from > s.eps_to && s.eps_to > 0.0))
            throw ConfigError("sweep requires eps_from > eps_to > 0", rd.line("sweep.eps_from"));
        if (s.points < 3) throw ConfigError("sweep requires points >= 3", rd.line("sweep.points"));
        c.sweep = s;
    }

    if (auto v = rd.str("output.csv")) c.csv_path = *v;
    if (auto v = rd.str("output.json")) c.json_path = *v;

    if (auto v = rd.str("run.mode")) {
        try {
            c.mode = parse_mode(*v);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), rd.line("run.mode"));
        }
    }
    c.override_flat_hypothesis = rd.boolean("run.override_flat_hypothesis", false);

    rd.number("verify.seed", c.verify.seed);
    rd.number("verify.surface_points", c.verify.surface_points);
    rd.number("verify.interior_points", c.verify.interior_points);
    rd.number("verify.random_configs", c.verify.random_configs);
    rd.list("verify.eps", c.verify.eps);

    if (lg_problem_desc_validate(&p) != LG_OK) throw ConfigError(origin + ": [problem] " + lg_last_error(), rd.line("problem"));
    if (!(c.quadrature.rel_tol > 0.0) || c.quadrature.abs_tol < 0.0 || c.quadrature.max_subdivisions < 1)
        throw ConfigError("[quadrature] needs rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1", rd.line("quadrature"));
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

void validate(const RunConfig& cfg) {
    lg_problem_desc p = cfg.problem;
    if (lg_problem_desc_validate(&p) != LG_OK) throw ConfigError(std::string("[problem] ") + lg_last_error());
    for (double e : cfg.verify.eps)
        if (!(e > 0.0)) throw ConfigError("[verify] eps values must be positive");
}

std::string to_ini(const RunConfig& c) {
    const lg_problem_desc& p = c.problem;
    auto v3 = [](const double* x) { return format_double(x[0]) + " " + format_double(x[1]) + " " + format_double(x[2]); };
    std::ostringstream o;
    o << "[problem]\n"
      << "dim = " << p.dim << "\n"
      << "profile = " << (p.kind == LG_PROFILE_FLAT ? "flat" : "mconvex") << "\n"
      << "m = " << format_double(p.m) << "\n"
      << "r = " << format_double(p.r) << "\n"
      << "s = " << format_double(p.s) << "\n"
      << "eps = " << format_double(p.eps) << "\n"
      << "R = " << format_double(p.R) << "\n"
      << "mu = " << format_double(p.mu) << "\n"
      << "U = " << v3(p.U) << "\n"
      << "omega = " << v3(p.omega) << "\n\n";
    o << "[quadrature]\n"
      << "rel_tol = " << format_double(c.quadrature.rel_tol) << "\n"
      << "abs_tol = " << format_double(c.quadrature.abs_tol) << "\n"
      << "max_subdivisions = " << c.quadrature.max_subdivisions << "\n\n";
    if (c.sweep) {
        o << "[sweep]\n"
          << "eps_from = " << format_double(c.sweep->eps_from) << "\n"
          << "eps_to = " << format_double(c.sweep->eps_to) << "\n"
          << "points = " << c.sweep->points << "\n\n";
    }
    if (!c.csv_path.empty() || !c.json_path.empty()) {
        o << "[output]\n";
        if (!c.csv_path.empty()) o << "csv = " << c.csv_path << "\n";
        if (!c.json_path.empty()) o << "json = " << c.json_path << "\n";
        o << "\n";
    }
    o << "[run]\n"
      << "mode = " << mode_name(c.mode) << "\n"
      << "override_flat_hypothesis = " << (c.override_flat_hypothesis ? "true" : "false") << "\n\n";
    o << "[verify]\n"
      << "seed = " << c.verify.seed << "\n"
      << "surface_points = " << c.verify.surface_points << "\n"
      << "interior_points = " << c.verify.interior_points << "\n"
      << "random_configs = " << c.verify.random_configs << "\n";
    if (!c.verify.eps.empty()) {
        o << "eps =";
        for (double e : c.verify.eps) o << " " << format_double(e);
        o << "\n";
    }
    return o.str();
}

}  // namespace lubgap_cli
