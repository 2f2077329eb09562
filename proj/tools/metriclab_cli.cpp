// Command-line front end: builds charts and metrics from a config file,
// runs curvature computations and formula-verification suites, and writes
// machine-readable reports.
//
// Exit codes: 0 all checks passed (or skipped), 1 verification failure,
// 2 config error, 3 numerical error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "metriclab/config.hpp"
#include "metriclab/fieldio.hpp"

using namespace metriclab;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format;
    int64_t seed = -1;
    int resolution = 0;
    double tolerance_scale = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "run configuration file")->required();
    cmd->add_option("--out", flags.out_path, "report output path (default: stdout)");
    cmd->add_option("--format", flags.format, "report format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", flags.seed, "override the direction seed");
    cmd->add_option("--resolution", flags.resolution,
                    "override the chart resolution (all axes; open charts: first axis)");
    cmd->add_option("--tolerance-scale", flags.tolerance_scale,
                    "multiply every tolerance by this factor");
}

RunConfig load_config(const CommonFlags& flags) {
    RunConfig cfg = RunConfig::from_file(flags.config_path);
    if (flags.seed >= 0) {
        cfg.options.direction_seed = static_cast<uint64_t>(flags.seed);
        cfg.echo["verify.seed"] = std::to_string(flags.seed);
    }
    if (flags.resolution > 0) {
        if (cfg.chart.boundary == Boundary::Periodic) {
            for (int a = 0; a < cfg.chart.dim; ++a) cfg.chart.resolution[a] = flags.resolution;
        } else {
            cfg.chart.resolution[0] = flags.resolution;
        }
        cfg.chart.validate();
        cfg.echo["chart.resolution"] = std::to_string(flags.resolution);
    }
    if (flags.tolerance_scale > 0.0) {
        cfg.options.tolerance_scale = flags.tolerance_scale;
        cfg.echo["tolerances.scale"] = std::to_string(flags.tolerance_scale);
    }
    if (!flags.out_path.empty()) cfg.output_path = flags.out_path;
    if (!flags.format.empty()) cfg.output_format = flags.format;
    return cfg;
}

void emit(const RunConfig& cfg, VerificationReport& report) {
    report.sort_entries();
    const std::string text =
        cfg.output_format == "csv" ? report.to_csv() : report.to_json();
    if (cfg.output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(cfg.output_path);
        if (!os) throw numeric_error("cannot open " + cfg.output_path + " for writing");
        os << text;
        std::cout << "report written to " << cfg.output_path << " (" << report.passed()
                  << " pass, " << report.failed() << " fail, " << report.skipped()
                  << " skipped)\n";
    }
}

int exit_code(const VerificationReport& report) { return report.failed() ? 1 : 0; }

double field_min(const ScalarField& f, const ChartSpec& chart, const Region& reg) {
    double lo = 0.0;
    bool first = true;
    for (int64_t node = 0; node < f.nodes(); ++node) {
        if (!reg.contains(chart.unravel(node))) continue;
        if (first || f.at(node) < lo) lo = f.at(node);
        first = false;
    }
    return lo;
}

int cmd_curvature(const CommonFlags& flags) {
    RunConfig cfg = load_config(flags);
    const auto t0 = std::chrono::steady_clock::now();

    MetricField m = cfg.metric.build(cfg.chart);
    CurvatureBundle b = curvature_bundle(m);
    Region reg = cfg.chart.boundary == Boundary::Periodic
                     ? whole_chart(cfg.chart)
                     : trusted_interior(cfg.chart, 2 * cfg.chart.stencil_halfwidth());

    VerificationReport report;
    report.config_echo = cfg.echo;
    report.values["gamma_max_abs"] = max_abs(b.christoffel, reg);
    report.values["ricci_max_abs"] = max_abs(b.ricci, reg);
    report.values["scalar_max_abs"] = max_abs(b.scalar, reg);
    report.values["scalar_min"] = field_min(b.scalar, cfg.chart, reg);
    ScalarField neg = scaled(-1.0, b.scalar);
    report.values["scalar_max"] = -field_min(neg, cfg.chart, reg);
    if (cfg.chart.boundary == Boundary::OpenPatch) {
        // summary at the inner edge of the trusted interior (first axis)
        std::array<int, kMaxDim> idx{};
        for (int a = 0; a < cfg.chart.dim; ++a) idx[a] = reg.lo[a];
        report.values["scalar_at_interior_edge"] = b.scalar.at(cfg.chart.node_index(idx));
        report.values["interior_edge_coord"] = cfg.chart.coord(0, reg.lo[0]);
    }

    if (cfg.dump_fields) {
        const std::string stem =
            cfg.output_path.empty() ? "curvature" : cfg.output_path + ".";
        write_field_csv(b.scalar, stem + "scalar.csv");
        write_field_csv(b.ricci, stem + "ricci.csv");
        write_field_csv(b.christoffel, stem + "christoffel.csv");
        write_field_binary(b.scalar, stem + "scalar.mlf");
        write_field_binary(b.ricci, stem + "ricci.mlf");
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(cfg, report);
    return 0;
}

int cmd_verify(const CommonFlags& flags, std::vector<Suite> fixed_suites = {}) {
    RunConfig cfg = load_config(flags);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<Suite> suites = fixed_suites.empty() ? cfg.suites : fixed_suites;
    if (suites.empty())
        throw config_error("no suites requested ([verify] suites = ... or a dedicated command)");

    VerificationReport report;
    report.config_echo = cfg.echo;
    for (Suite s : suites)
        run_formula_suite(s, cfg.metric, cfg.chart, cfg.F, cfg.options, report);

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(cfg, report);
    return exit_code(report);
}

int cmd_warped(const CommonFlags& flags) {
    RunConfig cfg = load_config(flags);
    const auto t0 = std::chrono::steady_clock::now();

    VerificationReport report;
    report.config_echo = cfg.echo;

    // Critical-exponent table over the requested beta values.
    for (int beta : cfg.warped_beta_table) {
        ReportEntry e;
        e.suite = "warped-example";
        e.formula = "alpha-of-beta";
        e.direction = beta;
        if (auto a = alpha_of_beta(beta)) {
            WarpedParams p{*a, beta, cfg.metric.warped.r_min, cfg.metric.warped.r_max};
            e.residual = std::abs(criticality_residual(p));
            e.tolerance = 1e-12;
            e.status = e.residual <= e.tolerance ? "pass" : "fail";
            report.values["alpha_of_beta_" + std::to_string(beta)] = *a;
            report.values["mu_at_rmin_beta_" + std::to_string(beta)] =
                mu_of_r(beta, cfg.metric.warped.r_min);
        } else {
            e.status = "skipped:hypothesis";
            e.detail = "alpha = 0 excluded";
        }
        report.add(e);
    }

    // Numeric cross-validation at the configured (alpha, beta).
    ChartSpec chart = cfg.chart;
    if (cfg.metric.kind != MetricRecipe::Kind::Warped)
        throw config_error("warped-example requires [metric] kind = warped");
    auto checks = cross_validate_numeric(cfg.metric.warped, chart, cfg.options.tolerance_scale);
    std::string first_fail;
    for (const auto& ch : checks) {
        ReportEntry e;
        e.suite = "warped-example";
        e.formula = ch.name;
        e.direction = -1;
        e.residual = ch.residual;
        e.tolerance = ch.tolerance;
        e.status = ch.pass ? "pass" : "fail";
        report.add(e);
        if (!ch.pass && first_fail.empty()) first_fail = ch.name;
    }
    if (!first_fail.empty())
        std::cerr << "closed-form mismatch, first divergent quantity: " << first_fail << "\n";

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(cfg, report);
    return exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for curvature functionals over metric fields"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* curvature = app.add_subcommand("curvature", "curvature fields and summaries");
    add_common(curvature, flags);
    auto* verify = app.add_subcommand("verify", "run the configured verification suites");
    add_common(verify, flags);
    auto* warped = app.add_subcommand(
        "warped-example", "closed-form warped-product cross-validation and tables");
    add_common(warped, flags);
    auto* first = app.add_subcommand("first-variation",
                                     "first-variation suite for the configured setup");
    add_common(first, flags);
    auto* second = app.add_subcommand(
        "second-variation", "second-variation and volume-constraint suites");
    add_common(second, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (curvature->parsed()) return cmd_curvature(flags);
        if (verify->parsed()) return cmd_verify(flags);
        if (warped->parsed()) return cmd_warped(flags);
        if (first->parsed()) return cmd_verify(flags, {Suite::FirstVariation});
        if (second->parsed())
            return cmd_verify(flags, {Suite::SecondVariation, Suite::VolumeConstraint});
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const chart_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
