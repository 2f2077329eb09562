#pragma once

#include "metriclab/curvature.hpp"
#include "metriclab/fscalar.hpp"

namespace metriclab {

enum class EinsteinForm {
    Compact,   // F'(S) Ric - Hess F'(S) - (Delta F'(S) + F(S)/2) g
    Expanded,  // chain rule through S: F'(S) Ric - F''(S) Hess S - F'''(S) dS (x) dS
               //   - (F''(S) Delta S + F'''(S) |grad S|^2 + F(S)/2) g
};

/// The generalized Einstein tensor together with the diagnostics used to
/// test proportionality to the metric:
///   lambda_field = Tr E / n,
///   residual_proportionality = |E - lambda_field * g|_g pointwise,
///   mu_field = lambda_field + Delta F'(S) + F(S)/2
/// (so E = lambda g is equivalent to F'(S) Ric - Hess F'(S) = mu g).
struct EinsteinPackage {
    SymTensor2Field e_f;
    ScalarField lambda_field;
    ScalarField residual_proportionality;
    ScalarField mu_field;
    /// Pointwise magnitude of the terms E is assembled from
    /// (|F'(S) Ric|_g + |Hess F'(S)|_g + |Delta F'(S) + F(S)/2| sqrt(n));
    /// the natural normalization for the proportionality residual, which
    /// stays meaningful when E itself is ~0 (critical metrics).
    ScalarField term_scale;
};

/// Integral of F(S) over a compact chart.
double functional_value(const MetricField& m, const CurvatureBundle& b,
                        const FScalarFunction& F);

EinsteinPackage f_einstein_tensor(const MetricField& m, const CurvatureBundle& b,
                                  const FScalarFunction& F,
                                  EinsteinForm form = EinsteinForm::Compact);

/// Tr E - [S F'(S) + (1-n) Delta F'(S) - (n/2) F(S)]; an algebraic
/// identity of the compact form, so the residual is pure roundoff on
/// shared discrete fields.
ScalarField trace_identity_residual(const EinsteinPackage& pkg, const MetricField& m,
                                    const CurvatureBundle& b, const FScalarFunction& F);

CovectorField divergence_of_ef(const EinsteinPackage& pkg, const MetricField& m,
                               const Tensor3Field& gamma);

/// Mean of lambda_field and (max - min) spread over a region.
struct LambdaStats {
    double mean = 0.0;
    double spread = 0.0;
    double max_proportionality_residual = 0.0;  // absolute
    double max_rel_proportionality = 0.0;       // residual / term_scale
    double max_term_scale = 0.0;
};
LambdaStats lambda_stats(const EinsteinPackage& pkg, const Region& region);

/// Pointwise F^(deriv)(s) over a field.
ScalarField apply_f(const FScalarFunction& F, const ScalarField& s, int deriv = 0);

/// Whether the package certifies E_F = lambda g: the worst pointwise
/// proportionality residual stays below tol relative to the assembly
/// scale (with an absolute floor so exactly-flat bases pass).
bool einstein_proportional(const EinsteinPackage& pkg, double lambda, double tol);

}  // namespace metriclab
