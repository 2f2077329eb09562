#pragma once

#include <map>
#include <string>
#include <vector>

namespace metriclab {

/// Outcome of one (formula, direction) verification.
struct ReportEntry {
    std::string suite;
    std::string formula;    // stable tag naming the identity being checked
    int direction = -1;     // -1 when the check is direction-independent
    double residual = 0.0;
    double tolerance = 0.0;
    double fitted_order = 0.0;  // 0 when no step/refinement study applies
    std::string status;         // "pass" | "fail" | "skipped:hypothesis"
    std::string detail;         // optional human-readable context
};

/// Machine-readable verification report. Byte-stable for a fixed
/// (config, seed): entries are kept sorted and the wall time lives in
/// an isolated key the stability comparison can drop.
struct VerificationReport {
    static constexpr int kReportVersion = 1;

    std::map<std::string, std::string> config_echo;  // flat key -> rendered value
    std::vector<ReportEntry> entries;
    std::map<std::string, double> values;  // named scalar outputs (field summaries, tables)
    double wall_seconds = 0.0;

    void add(ReportEntry e);
    void sort_entries();

    int passed() const;
    int failed() const;
    int skipped() const;
    bool all_passed() const { return failed() == 0; }

    std::string to_json() const;  // pretty, deterministic key order
    std::string to_csv() const;
};

}  // namespace metriclab
