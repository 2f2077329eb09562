#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metriclab/fscalar.hpp"
#include "metriclab/suites.hpp"

namespace metriclab {

/// Parsed run configuration. The on-disk format is a flat INI-style text
/// file: `[section]` headers and `key = value` lines, `#` comments,
/// whitespace-separated lists. Unknown sections or keys are errors with
/// the offending line number.
struct RunConfig {
    ChartSpec chart;
    MetricRecipe metric;
    FScalarFunction F = FScalarFunction::linear();
    std::vector<Suite> suites;
    SuiteOptions options;

    std::vector<int> warped_beta_table = {2, 3, 4, 5};

    std::string output_path;      // empty: stdout only
    std::string output_format = "json";  // json | csv
    bool dump_fields = false;

    /// Flattened section.key -> rendered value, echoed into reports.
    std::map<std::string, std::string> echo;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text, const std::string& name = "<config>");
};

}  // namespace metriclab
