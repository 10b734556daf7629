#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace lubgap_cli {

using Json = nlohmann::ordered_json;

// One CSV row.  subflow < 0 denotes the total.
struct Row {
    double eps = 0.0;
    int component = 0;  // 0..5 = F1 F2 F3 T1 T2 T3 (2D uses 0, 1, 5)
    int subflow = -1;
    std::optional<double> numeric, error_est, asymptotic;
    bool expansion_empty = true;
};

struct ForceReport {
    std::vector<Row> rows;
    Json json;
    bool computation_failed = false;
};

struct VerifyReport {
    std::string csv;
    Json json;
    bool passed = false;
};

std::vector<int> components(int dim);
std::string component_name(int dim, int comp);

ForceReport run_force(const RunConfig& cfg, const std::string& command);
std::string to_csv(const std::vector<Row>& rows, int dim);

// Throws std::runtime_error carrying the C API message on computation failure.
VerifyReport run_verify(const RunConfig& cfg, const std::string& suite);

void write_file(const std::string& path, const std::string& content);

}  // namespace lubgap_cli
