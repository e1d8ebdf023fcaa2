#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "iontrap/config.hpp"

namespace iontrap::cli {

/// Everything a completed run reports: inputs as resolved (defaults filled),
/// outputs produced, and bookkeeping for reproducibility.
struct RunRecord {
    std::string scenario;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> csv_paths;
    std::vector<Config::Resolved> parameters;
    std::vector<std::string> warnings;
    double wall_time_s = 0.0;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
};

/// The scenario registry, fixed at build time.
std::vector<ScenarioInfo> list_scenarios();

/// Keys a scenario accepts (for unknown-key rejection).
std::set<std::string> allowed_keys(const std::string& scenario);

/// Execute one scenario: read config, run the physics, write one CSV per
/// output series plus run_manifest.txt into out_dir. ConfigError for bad
/// input, DomainError for physics violations, IoError for filesystem trouble.
RunRecord run_scenario(const std::string& config_path, const std::string& scenario,
                       const std::string& out_dir, std::uint64_t seed);

/// Column-wise diff of two run directories (same scenario expected).
/// Relative difference is |a-b| / max(|a|,|b|), zero when both cells agree.
struct ColumnDiff {
    std::string file;
    std::string column;
    double max_rel = 0.0;
    long long worst_row = -1;
    double value_a = 0.0;
    double value_b = 0.0;
    long long text_mismatches = 0;
};
struct CompareReport {
    std::vector<ColumnDiff> columns;
    double rel_tolerance = 0.0;
    double max_rel = 0.0;
    bool within_tolerance = true;
};
CompareReport compare_runs(const std::string& dir_a, const std::string& dir_b,
                           double rel_tolerance);

} // namespace iontrap::cli
