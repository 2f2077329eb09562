#pragma once

#include <stdexcept>
#include <string>

namespace metriclab {

/// Invalid chart description or a request a chart cannot satisfy
/// (axis out of range, resolution too small for the stencil, ...).
struct chart_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure at a concrete grid node (singular metric,
/// non-finite value). The message carries the node coordinates.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A verification was requested whose hypothesis does not hold
/// (e.g. second variation at a base metric that is not lambda-proportional).
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config-file problem; carries the offending line number when known.
struct config_error : std::runtime_error {
    int line = 0;
    explicit config_error(const std::string& msg, int line_no = 0)
        : std::runtime_error(msg), line(line_no) {}
};

}  // namespace metriclab
