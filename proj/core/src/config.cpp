#include "metriclab/config.hpp"

#include <fstream>
#include <sstream>

namespace metriclab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_real(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw config_error("expected a number, got '" + v + "'", line);
    }
}

int parse_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        int r = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw config_error("expected an integer, got '" + v + "'", line);
    }
}

uint64_t parse_u64(const std::string& v, int line) {
    try {
        size_t pos = 0;
        uint64_t r = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw config_error("expected a non-negative integer, got '" + v + "'", line);
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("expected true/false, got '" + v + "'", line);
}

struct PendingF {
    std::string kind = "linear";
    int beta = 2;
    std::vector<double> coefficients;
    double scale = 1.0;
    double offset = 0.0;
    int line = 0;
};

struct PendingWarped {
    int beta = 2;
    std::string alpha = "auto";
    double r_min = 1.0;
    double r_max = 2.0;
    std::vector<int> beta_table = {2, 3, 4, 5};
};

}  // namespace

RunConfig RunConfig::from_string(const std::string& text, const std::string& name) {
    RunConfig cfg;
    cfg.chart.dim = 2;
    cfg.chart.resolution = {32, 32, 32, 32};
    cfg.chart.extent = {1.0, 1.0, 1.0, 1.0};

    PendingF pf;
    PendingWarped pw;
    std::vector<std::string> suite_names;
    std::string boundary = "periodic";
    bool resolution_set = false;

    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(name + ":" + std::to_string(line_no) +
                                       ": malformed section header '" + raw + "'",
                                   line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "chart" && section != "metric" && section != "warped" &&
                section != "f" && section != "verify" && section != "output" &&
                section != "tolerances")
                throw config_error(name + ":" + std::to_string(line_no) +
                                       ": unknown section [" + section + "]",
                                   line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(name + ":" + std::to_string(line_no) +
                                   ": expected 'key = value', got '" + raw + "'",
                               line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(name + ":" + std::to_string(line_no) +
                                   ": empty key or value",
                               line_no);
        cfg.echo[section + "." + key] = value;

        auto unknown = [&]() -> config_error {
            return config_error(name + ":" + std::to_string(line_no) + ": unknown key '" +
                                    key + "' in [" + section + "]",
                                line_no);
        };

        if (section == "chart") {
            if (key == "dim") {
                cfg.chart.dim = parse_int(value, line_no);
            } else if (key == "resolution") {
                auto toks = split_ws(value);
                resolution_set = true;
                if (toks.size() == 1) {
                    const int n = parse_int(toks[0], line_no);
                    cfg.chart.resolution = {n, n, n, n};
                } else {
                    for (size_t a = 0; a < toks.size() && a < kMaxDim; ++a)
                        cfg.chart.resolution[a] = parse_int(toks[a], line_no);
                }
            } else if (key == "extent") {
                auto toks = split_ws(value);
                if (toks.size() == 1) {
                    const double L = parse_real(toks[0], line_no);
                    cfg.chart.extent = {L, L, L, L};
                } else {
                    for (size_t a = 0; a < toks.size() && a < kMaxDim; ++a)
                        cfg.chart.extent[a] = parse_real(toks[a], line_no);
                }
            } else if (key == "origin") {
                auto toks = split_ws(value);
                for (size_t a = 0; a < toks.size() && a < kMaxDim; ++a)
                    cfg.chart.origin[a] = parse_real(toks[a], line_no);
            } else if (key == "boundary") {
                if (value != "periodic" && value != "open")
                    throw config_error(name + ":" + std::to_string(line_no) +
                                           ": boundary must be 'periodic' or 'open'",
                                       line_no);
                boundary = value;
            } else if (key == "stencil_order") {
                cfg.chart.stencil_order = parse_int(value, line_no);
            } else {
                throw unknown();
            }
        } else if (section == "metric") {
            if (key == "kind") {
                if (value == "flat")
                    cfg.metric.kind = MetricRecipe::Kind::Flat;
                else if (value == "conformal")
                    cfg.metric.kind = MetricRecipe::Kind::ConformalPerturbed;
                else if (value == "conformal-sin")
                    cfg.metric.kind = MetricRecipe::Kind::ConformalSin;
                else if (value == "warped")
                    cfg.metric.kind = MetricRecipe::Kind::Warped;
                else
                    throw config_error(name + ":" + std::to_string(line_no) +
                                           ": unknown metric kind '" + value + "'",
                                       line_no);
            } else if (key == "amplitude") {
                cfg.metric.amplitude = parse_real(value, line_no);
                if (!(std::abs(cfg.metric.amplitude) < 0.5))
                    throw config_error(name + ":" + std::to_string(line_no) +
                                           ": |amplitude| must be < 0.5",
                                       line_no);
            } else if (key == "max_wavenumber") {
                cfg.metric.max_wavenumber = parse_int(value, line_no);
            } else if (key == "seed") {
                cfg.metric.seed = parse_u64(value, line_no);
            } else {
                throw unknown();
            }
        } else if (section == "warped") {
            if (key == "beta")
                pw.beta = parse_int(value, line_no);
            else if (key == "alpha")
                pw.alpha = value;
            else if (key == "r_min")
                pw.r_min = parse_real(value, line_no);
            else if (key == "r_max")
                pw.r_max = parse_real(value, line_no);
            else if (key == "beta_table") {
                pw.beta_table.clear();
                for (const auto& t : split_ws(value)) pw.beta_table.push_back(parse_int(t, line_no));
            } else
                throw unknown();
        } else if (section == "f") {
            if (key == "kind")
                pf.kind = value;
            else if (key == "beta")
                pf.beta = parse_int(value, line_no);
            else if (key == "coefficients") {
                pf.coefficients.clear();
                for (const auto& t : split_ws(value))
                    pf.coefficients.push_back(parse_real(t, line_no));
            } else if (key == "scale")
                pf.scale = parse_real(value, line_no);
            else if (key == "offset")
                pf.offset = parse_real(value, line_no);
            else
                throw unknown();
            pf.line = line_no;
        } else if (section == "verify") {
            if (key == "suites") {
                suite_names = split_ws(value);
            } else if (key == "directions")
                cfg.options.directions = parse_int(value, line_no);
            else if (key == "seed")
                cfg.options.direction_seed = parse_u64(value, line_no);
            else if (key == "max_wavenumber")
                cfg.options.max_wavenumber = parse_int(value, line_no);
            else if (key == "modes")
                cfg.options.modes = parse_int(value, line_no);
            else if (key == "amplitude")
                cfg.options.direction_amplitude = parse_real(value, line_no);
            else if (key == "dt")
                cfg.options.dt = parse_real(value, line_no);
            else if (key == "ladder")
                cfg.options.ladder = parse_int(value, line_no);
            else if (key == "refinement") {
                cfg.options.refinement.clear();
                for (const auto& t : split_ws(value))
                    cfg.options.refinement.push_back(parse_int(t, line_no));
            } else
                throw unknown();
        } else if (section == "output") {
            if (key == "path")
                cfg.output_path = value;
            else if (key == "format") {
                if (value != "json" && value != "csv")
                    throw config_error(name + ":" + std::to_string(line_no) +
                                           ": format must be json or csv",
                                       line_no);
                cfg.output_format = value;
            } else if (key == "fields")
                cfg.dump_fields = parse_bool(value, line_no);
            else
                throw unknown();
        } else if (section == "tolerances") {
            if (key == "scale")
                cfg.options.tolerance_scale = parse_real(value, line_no);
            else
                throw unknown();
        } else {
            throw config_error(name + ":" + std::to_string(line_no) +
                                   ": key '" + key + "' outside any section",
                               line_no);
        }
    }

    // Resolve the warped parameters and attach them to the metric recipe.
    cfg.metric.warped.beta = pw.beta;
    cfg.metric.warped.r_min = pw.r_min;
    cfg.metric.warped.r_max = pw.r_max;
    if (pw.alpha == "auto") {
        if (auto a = alpha_of_beta(pw.beta)) {
            cfg.metric.warped.alpha = *a;
        } else if (cfg.metric.kind == MetricRecipe::Kind::Warped) {
            throw config_error("beta = " + std::to_string(pw.beta) +
                               " has no admissible critical alpha (alpha = 0 is excluded)");
        }
    } else {
        cfg.metric.warped.alpha = parse_real(pw.alpha, 0);
    }
    cfg.warped_beta_table = pw.beta_table;
    cfg.echo["warped.alpha_resolved"] = std::to_string(cfg.metric.warped.alpha);

    // Resolve F.
    if (pf.kind == "linear")
        cfg.F = FScalarFunction::linear();
    else if (pf.kind == "power")
        cfg.F = FScalarFunction::power(pf.beta);
    else if (pf.kind == "polynomial") {
        if (pf.coefficients.empty())
            throw config_error("polynomial F needs coefficients", pf.line);
        cfg.F = FScalarFunction::polynomial(pf.coefficients);
    } else if (pf.kind == "affine-power")
        cfg.F = FScalarFunction::affine_power(pf.scale, pf.beta, pf.offset);
    else
        throw config_error("unknown F kind '" + pf.kind + "'", pf.line);
    cfg.echo["f.resolved"] = cfg.F.describe();

    // Resolve the chart.
    cfg.chart.boundary = boundary == "periodic" ? Boundary::Periodic : Boundary::OpenPatch;
    if (cfg.metric.kind == MetricRecipe::Kind::Warped) {
        if (!resolution_set) cfg.chart.resolution = {64, 16, 16, 16};
        cfg.chart = ChartSpec::open_patch(
            3, cfg.chart.resolution,
            {cfg.metric.warped.r_max - cfg.metric.warped.r_min, 1.0, 1.0, 1.0},
            {cfg.metric.warped.r_min, 0.0, 0.0, 0.0},
            cfg.chart.stencil_order == 4 && cfg.echo.count("chart.stencil_order") == 0
                ? 6
                : cfg.chart.stencil_order);
    } else {
        cfg.chart.validate();
    }

    // Resolve suites.
    for (const auto& s : suite_names) {
        if (s == "all") {
            cfg.suites = all_suites();
            break;
        }
        cfg.suites.push_back(suite_from_name(s));
    }

    cfg.echo["metric.resolved"] = cfg.metric.describe();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return from_string(buf.str(), path);
}

}  // namespace metriclab
