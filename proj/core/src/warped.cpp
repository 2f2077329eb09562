#include "metriclab/warped.hpp"

#include <cmath>

namespace metriclab {

namespace {

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

constexpr double kExcludedTol = 1e-12;

}  // namespace

void WarpedParams::validate() const {
    if (std::abs(alpha) < kExcludedTol)
        throw chart_error("warped exponent alpha = 0 is excluded (flat degenerate case)");
    if (std::abs(alpha - 2.0 / 3.0) < kExcludedTol)
        throw chart_error("warped exponent alpha = 2/3 is excluded (vanishing scalar curvature)");
    if (beta < 1) throw chart_error("warped beta must be a positive integer");
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw chart_error("warped radial range requires 0 < r_min < r_max");
}

WarpedCurvature closed_form_curvature(const WarpedParams& p, double r) {
    p.validate();
    if (r < p.r_min || r > p.r_max) throw chart_error("radius outside the configured range");
    const double a = p.alpha;
    WarpedCurvature c;
    c.gamma_r_xx = -a * std::pow(r, 2.0 * a - 1.0);
    c.gamma_x_rx = a / r;
    c.ric_rr = 2.0 * a * (1.0 - a) / (r * r);
    c.ric_xx = a * (1.0 - 2.0 * a) * std::pow(r, 2.0 * a - 2.0);
    c.scalar = 2.0 * a * (2.0 - 3.0 * a) / (r * r);
    return c;
}

WarpedFPrimeData closed_form_hess_fprime(const WarpedParams& p, double r) {
    p.validate();
    const double a = p.alpha;
    const double b = p.beta;
    const double s = 2.0 * a * (2.0 - 3.0 * a) / (r * r);
    const double s_pow_b = ipow(s, p.beta);
    WarpedFPrimeData d;
    d.fprime = b * r * r / (2.0 * a * (2.0 - 3.0 * a)) * s_pow_b;
    d.hess_rr = b * (2.0 * b * b - 3.0 * b + 1.0) / (a * (2.0 - 3.0 * a)) * s_pow_b;
    d.hess_xx = b * (1.0 - b) * std::pow(r, 2.0 * a) / (2.0 - 3.0 * a) * s_pow_b;
    return d;
}

std::optional<double> alpha_of_beta(int beta) {
    if (beta < 1) throw chart_error("beta must be a positive integer");
    const double b = beta;
    const double a = -2.0 * (2.0 * b * b - 3.0 * b + 1.0) / (2.0 * b - 3.0);
    if (std::abs(a) < kExcludedTol || std::abs(a - 2.0 / 3.0) < kExcludedTol)
        return std::nullopt;  // beta = 1 lands on the excluded alpha = 0
    return a;
}

double criticality_residual(const WarpedParams& p) {
    p.validate();
    const double a = p.alpha, b = p.beta;
    return -3.0 * a + 4.0 * b * b - 6.0 * b + 2.0 * a * b + 2.0;
}

double mu_of_r(int beta, double r) {
    const double b = beta;
    const double inner =
        -8.0 * b * (2.0 * b * b - 3.0 * b + 1.0) * (6.0 * b - 7.0) /
        ((2.0 * b - 3.0) * (2.0 * b - 3.0) * r * r);
    return (2.0 * b - 1.0) / 4.0 * ipow(inner, beta);
}

ChartSpec warped_chart(const WarpedParams& p, int n_r, int n_t, int stencil_order) {
    p.validate();
    return ChartSpec::open_patch(3, {n_r, n_t, n_t, 0},
                                 {p.r_max - p.r_min, 1.0, 1.0, 0.0},
                                 {p.r_min, 0.0, 0.0, 0.0}, stencil_order);
}

MetricField warped_metric(const ChartSpec& chart, const WarpedParams& p) {
    p.validate();
    if (chart.dim != 3) throw chart_error("warped metric lives on a 3d chart");
    SymTensor2Field g(chart);
    for (int64_t node = 0; node < g.nodes(); ++node) {
        const double r = chart.coords(node)[0];
        const double w = std::pow(r, 2.0 * p.alpha);
        g.at(node, 0, 0) = 1.0;
        g.at(node, 1, 1) = w;
        g.at(node, 2, 2) = w;
    }
    return MetricField::from(std::move(g));
}

namespace {

struct Comparison {
    double max_rel = 0.0;
};

/// Pointwise relative deviation against a closed form of r, with a floor
/// keeping near-zero reference values from inflating the ratio.
template <class Ref, class Num>
double max_rel_err(const ChartSpec& chart, const Region& region, double global_scale,
                   Ref&& reference, Num&& numeric) {
    double worst = 0.0;
    const double floor = 1e-3 * global_scale;
    const int64_t nn = chart.nodes();
    for (int64_t node = 0; node < nn; ++node) {
        if (!region.contains(chart.unravel(node))) continue;
        const double r = chart.coords(node)[0];
        const double ref = reference(r);
        const double err = std::abs(numeric(node) - ref) / std::max(std::abs(ref), floor);
        worst = std::max(worst, err);
    }
    return worst;
}

}  // namespace

std::vector<WarpedCheck> cross_validate_numeric(const WarpedParams& p, const ChartSpec& chart,
                                                double tol_scale) {
    p.validate();
    const int hw = chart.stencil_halfwidth();
    // One-sided contamination widens by one halfwidth per derivative level:
    // Gamma ~ d g, curvature ~ d^2 g, the einstein tensor ~ d^4 g.
    const auto margin_r = [&](int depth) -> std::optional<Region> {
        std::array<int, kMaxDim> m{};
        m[0] = depth * hw;
        m[1] = m[2] = hw;
        if (2 * m[0] >= chart.resolution[0] || 2 * m[1] >= chart.resolution[1])
            return std::nullopt;  // too coarse for this composition depth
        return trusted_interior(chart, m);
    };

    MetricField m = warped_metric(chart, p);
    CurvatureBundle bundle = curvature_bundle(m);

    std::vector<WarpedCheck> checks;
    auto push = [&](const std::string& name, double rel, double tol) {
        checks.push_back({name, rel, tol * tol_scale, rel <= tol * tol_scale});
    };

    const double a = p.alpha;
    const double tol_curv = 1e-5;

    if (auto reg1 = margin_r(1)) {  // connection coefficients
        const Region reg = *reg1;
        const double scale =
            std::max(std::abs(a) / p.r_min,
                     std::abs(a) * std::pow(p.r_min, 2.0 * a - 1.0) *
                         std::max(1.0, std::pow(p.r_max / p.r_min, 2.0 * a - 1.0)));
        double rel = max_rel_err(
            chart, reg, scale,
            [&](double r) { return -a * std::pow(r, 2.0 * a - 1.0); },
            [&](int64_t node) { return bundle.christoffel.at(node, 0, 1, 1); });
        rel = std::max(rel, max_rel_err(
                                chart, reg, scale,
                                [&](double r) { return a / r; },
                                [&](int64_t node) { return bundle.christoffel.at(node, 1, 0, 1); }));
        rel = std::max(rel, max_rel_err(
                                chart, reg, scale,
                                [&](double r) { return a / r; },
                                [&](int64_t node) { return bundle.christoffel.at(node, 2, 0, 2); }));
        // all remaining components vanish
        double zero_max = 0.0;
        const int n = chart.dim;
        for (int64_t node = 0; node < chart.nodes(); ++node) {
            if (!reg.contains(chart.unravel(node))) continue;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) {
                        if ((k == 0 && i == 1 && j == 1) || (k == 0 && i == 2 && j == 2) ||
                            (k == 1 && i == 0 && j == 1) || (k == 2 && i == 0 && j == 2))
                            continue;
                        zero_max = std::max(zero_max,
                                            std::abs(bundle.christoffel.at(node, k, i, j)));
                    }
        }
        rel = std::max(rel, zero_max / scale);
        push("christoffel", rel, tol_curv);
    }

    if (auto reg2 = margin_r(2)) {  // ricci and scalar curvature
        const Region reg = *reg2;
        const double sc_scale = std::abs(2.0 * a * (2.0 - 3.0 * a)) / (p.r_min * p.r_min);
        double rel = max_rel_err(
            chart, reg, sc_scale,
            [&](double r) { return 2.0 * a * (1.0 - a) / (r * r); },
            [&](int64_t node) { return bundle.ricci.at(node, 0, 0); });
        rel = std::max(rel, max_rel_err(
                                chart, reg, sc_scale,
                                [&](double r) { return a * (1.0 - 2.0 * a) * std::pow(r, 2.0 * a - 2.0); },
                                [&](int64_t node) { return bundle.ricci.at(node, 1, 1); }));
        push("ricci", rel, tol_curv);

        double rel_s = max_rel_err(
            chart, reg, sc_scale,
            [&](double r) { return 2.0 * a * (2.0 - 3.0 * a) / (r * r); },
            [&](int64_t node) { return bundle.scalar.at(node); });
        push("scalar-curvature", rel_s, tol_curv);
    }

    FScalarFunction F = FScalarFunction::power(p.beta);

    if (auto reg4 = margin_r(4)) {  // hessian of F'(S) (4 derivative levels)
        const Region reg = *reg4;
        ScalarField f1 = apply_f(F, bundle.scalar, 1);
        SymTensor2Field hess_f1 = hessian(f1, m, bundle.christoffel);
        const double scale =
            std::max(std::abs(closed_form_hess_fprime(p, p.r_min).hess_rr),
                     std::abs(closed_form_hess_fprime(p, p.r_min).hess_xx)) +
            1e-300;
        double rel = max_rel_err(
            chart, reg, scale,
            [&](double r) { return closed_form_hess_fprime(p, r).hess_rr; },
            [&](int64_t node) { return hess_f1.at(node, 0, 0); });
        rel = std::max(rel, max_rel_err(
                                chart, reg, scale,
                                [&](double r) { return closed_form_hess_fprime(p, r).hess_xx; },
                                [&](int64_t node) { return hess_f1.at(node, 1, 1); }));
        push("hessian-fprime", rel, 1e-4);
    }

    // Criticality block: only meaningful at alpha = alpha_of_beta(beta).
    const auto a_crit = alpha_of_beta(p.beta);
    const bool critical = a_crit && std::abs(*a_crit - p.alpha) < 1e-9;
    if (auto reg4 = critical ? margin_r(4) : std::nullopt) {
        const Region reg = *reg4;
        EinsteinPackage pkg = f_einstein_tensor(m, bundle, F, EinsteinForm::Compact);
        LambdaStats st = lambda_stats(pkg, reg);

        push("einstein-proportionality", st.max_rel_proportionality, 1e-5);
        const double lambda_scale = std::max(std::abs(st.mean), st.max_term_scale);
        push("lambda-constancy", st.spread / std::max(lambda_scale, 1e-300), 1e-6);

        // mu extracted from the package vs the closed form
        const double mu_scale = std::abs(mu_of_r(p.beta, p.r_min));
        double rel_mu = max_rel_err(
            chart, reg, mu_scale,
            [&](double r) { return mu_of_r(p.beta, r); },
            [&](int64_t node) { return pkg.mu_field.at(node); });
        push("mu-closed-form", rel_mu, 1e-5);

        // mu = lambda + Delta F'(S) + F(S)/2 pointwise, with the constant
        // lambda (the mean), measured against the component ratios of
        // F'(S) Ric - Hess F'(S).
        ScalarField f1 = apply_f(F, bundle.scalar, 1);
        ScalarField fs = apply_f(F, bundle.scalar, 0);
        SymTensor2Field hess_f1 = hessian(f1, m, bundle.christoffel);
        ScalarField lap_f1 = trace(hess_f1, m);
        for (int64_t node = 0; node < lap_f1.nodes(); ++node)
            lap_f1.at(node) = -lap_f1.at(node);
        double worst = 0.0;
        for (int64_t node = 0; node < chart.nodes(); ++node) {
            if (!reg.contains(chart.unravel(node))) continue;
            for (int i : {0, 1}) {
                const double ratio =
                    (f1.at(node) * bundle.ricci.at(node, i, i) - hess_f1.at(node, i, i)) /
                    m.g().at(node, i, i);
                const double rhs =
                    st.mean + lap_f1.at(node) + 0.5 * fs.at(node);
                worst = std::max(worst, std::abs(ratio - rhs) /
                                            std::max(std::abs(rhs), 1e-3 * mu_scale));
            }
        }
        push("mu-identity", worst, 1e-4);
    }

    return checks;
}

}  // namespace metriclab
