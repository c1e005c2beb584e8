#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace disclab {

using ordered_json = nlohmann::ordered_json;

struct ExperimentConfig {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::string out_dir = ".";
    ordered_json params;   // flat overrides; defaults are written back
    bool timings = false;  // keep runtime_seconds out of the JSON by default
};

enum class CheckStatus { pass, fail, informational };

std::string status_name(CheckStatus s);

/// One acceptance criterion (or informational diagnostic): observed carries
/// the named sub-measurements, expected describes the thresholds in words,
/// tolerance is the primary numeric tolerance used for drift comparisons.
struct CheckRecord {
    std::string id;
    ordered_json observed;
    std::string expected;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::pass;
};

struct SuiteReport {
    std::string suite;
    ordered_json config;
    std::vector<CheckRecord> checks;
    double runtime_seconds = 0.0;

    bool all_passed() const;
    int failed_count() const;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one suite (or all of them) with the given config.  Deterministic for
/// a fixed seed and config; writes CSV side outputs under cfg.out_dir.
SuiteReport run_suite(const ExperimentConfig& cfg);

ordered_json report_to_json(const SuiteReport& rep, bool with_timings);
void write_report(const SuiteReport& rep, const std::string& path, bool with_timings);

struct DriftRow {
    std::string id;
    std::string field;
    double baseline = 0.0;
    double current = 0.0;
    double drift = 0.0;
    bool flagged = false;
};

struct DriftSummary {
    std::vector<DriftRow> rows;
    bool structural_mismatch = false;
    std::vector<std::string> missing_checks;

    bool any_flagged() const;
};

/// Per-check relative drift between two reports of the same suite/config.
DriftSummary compare_reports(const ordered_json& baseline, const ordered_json& current);

}  // namespace disclab
