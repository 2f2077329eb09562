#pragma once

#include <optional>

#include "metriclab/einstein.hpp"

namespace metriclab {

/// Parameters of the warped product metric g = dr^2 + r^{2a}(dx^2 + dy^2)
/// on (0, inf) x R^2, with F(s) = s^beta. alpha = 0 and alpha = 2/3 are
/// excluded (degenerate / vanishing scalar curvature).
struct WarpedParams {
    double alpha = 1.0;
    int beta = 1;
    double r_min = 1.0;
    double r_max = 2.0;

    void validate() const;  // throws chart_error
};

/// Closed-form connection and curvature at radius r. Coordinates are
/// (r, x, y) = (0, 1, 2); only the listed components are nonzero.
struct WarpedCurvature {
    double gamma_r_xx;   // Gamma^0_{11} = Gamma^0_{22} = -a r^{2a-1}
    double gamma_x_rx;   // Gamma^1_{01} = Gamma^2_{02} = a / r
    double ric_rr;       // 2 a (1 - a) / r^2
    double ric_xx;       // a (1 - 2a) r^{2a-2}  (= ric_yy)
    double scalar;       // 2 a (2 - 3a) / r^2
};
WarpedCurvature closed_form_curvature(const WarpedParams& p, double r);

/// Closed forms of F'(S) and the nonzero Hessian components of F'(S).
struct WarpedFPrimeData {
    double fprime;   // beta r^2 / (2a(2-3a)) * S^beta
    double hess_rr;  // beta (2b^2 - 3b + 1) / (a(2-3a)) * S^beta
    double hess_xx;  // beta (1 - b) r^{2a} / (2-3a) * S^beta  (= hess_yy)
};
WarpedFPrimeData closed_form_hess_fprime(const WarpedParams& p, double r);

/// The alpha for which the warped metric satisfies E_F = lambda g:
/// alpha = -2 (2 b^2 - 3 b + 1) / (2 b - 3). Returns nullopt when that
/// value is excluded (beta = 1 gives alpha = 0, the flat degenerate case).
std::optional<double> alpha_of_beta(int beta);

/// r-independent residual of the two-ratio criticality condition,
/// -3 a + 4 b^2 - 6 b + 2 a b + 2; zero iff alpha = alpha_of_beta(beta).
double criticality_residual(const WarpedParams& p);

/// mu(r) = (2b-1)/4 * ( -8 b (2b^2-3b+1)(6b-7) / ((2b-3)^2 r^2) )^b,
/// the proportionality factor in F'(S) Ric - Hess F'(S) = mu g at the
/// critical alpha.
double mu_of_r(int beta, double r);

/// g = diag(1, r^{2a}, r^{2a}) sampled on an open 3d chart whose first
/// axis spans [r_min, r_max].
MetricField warped_metric(const ChartSpec& chart, const WarpedParams& p);

/// Chart for the warped example: open patch, r in [r_min, r_max] with
/// n_r nodes, transverse axes of length 1 with n_t nodes.
ChartSpec warped_chart(const WarpedParams& p, int n_r, int n_t, int stencil_order = 6);

/// One check of the numeric pipeline against a closed form.
struct WarpedCheck {
    std::string name;
    double residual = 0.0;   // relative
    double tolerance = 0.0;
    bool pass = false;
};

/// Runs the numeric pipeline (christoffel, curvature, einstein tensor)
/// on the chart and compares against every closed form above on the
/// trusted interior. When alpha = alpha_of_beta(beta), additionally
/// checks E_F = lambda g with spatially constant lambda, the mu closed
/// form, and mu = lambda + Delta F'(S) + F(S)/2 pointwise.
std::vector<WarpedCheck> cross_validate_numeric(const WarpedParams& p,
                                                const ChartSpec& chart,
                                                double tol_scale = 1.0);

}  // namespace metriclab
