#include "metriclab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace metriclab {

namespace {

// Fixed-width scientific rendering keeps reports byte-stable across
// runs regardless of the json library's shortest-round-trip formatting.
std::string render(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

}  // namespace

void VerificationReport::add(ReportEntry e) { entries.push_back(std::move(e)); }

void VerificationReport::sort_entries() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ReportEntry& a, const ReportEntry& b) {
                         if (a.suite != b.suite) return a.suite < b.suite;
                         if (a.formula != b.formula) return a.formula < b.formula;
                         return a.direction < b.direction;
                     });
}

int VerificationReport::passed() const {
    int n = 0;
    for (const auto& e : entries) n += e.status == "pass";
    return n;
}
int VerificationReport::failed() const {
    int n = 0;
    for (const auto& e : entries) n += e.status == "fail";
    return n;
}
int VerificationReport::skipped() const {
    int n = 0;
    for (const auto& e : entries) n += e.status.rfind("skipped", 0) == 0;
    return n;
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["report_version"] = kReportVersion;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_echo) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json je;
        je["suite"] = e.suite;
        je["formula"] = e.formula;
        je["direction"] = e.direction;
        je["residual"] = render(e.residual);
        je["tolerance"] = render(e.tolerance);
        je["fitted_order"] = render(e.fitted_order);
        je["status"] = e.status;
        if (!e.detail.empty()) je["detail"] = e.detail;
        arr.push_back(je);
    }
    j["entries"] = arr;
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& [k, v] : values) vals[k] = render(v);
    j["values"] = vals;
    j["summary"] = {{"pass", passed()}, {"fail", failed()}, {"skipped", skipped()}};
    j["timing"] = {{"wall_seconds", wall_seconds}};
    return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os << "suite,formula,direction,residual,tolerance,fitted_order,status\n";
    for (const auto& e : entries)
        os << e.suite << ',' << e.formula << ',' << e.direction << ',' << render(e.residual)
           << ',' << render(e.tolerance) << ',' << render(e.fitted_order) << ',' << e.status
           << '\n';
    for (const auto& [k, v] : values) os << "value," << k << ",,," << render(v) << ",,\n";
    return os.str();
}

}  // namespace metriclab
