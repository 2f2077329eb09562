#pragma once

#include "metriclab/field.hpp"

namespace metriclab {

/// A positive-definite metric with its pointwise inverse and volume
/// density cached. Construction performs a per-node Cholesky
/// factorization; any non-SPD node aborts with its coordinates.
class MetricField {
public:
    MetricField() = default;

    static MetricField from(SymTensor2Field g);

    const ChartSpec& chart() const { return g_.chart(); }
    int dim() const { return g_.chart().dim; }
    const SymTensor2Field& g() const { return g_; }
    const SymTensor2Field& ginv() const { return ginv_; }
    const ScalarField& sqrt_det() const { return sqrt_det_; }

private:
    SymTensor2Field g_;
    SymTensor2Field ginv_;
    ScalarField sqrt_det_;
};

/// Integral of f over a compact (periodic) chart against the volume
/// density sqrt(det g): rectangle rule with compensated summation, so
/// the result does not depend on evaluation order.
///
/// Throws chart_error on an OpenPatch chart and numeric_error if g is
/// not positive definite somewhere.
double integrate_scalar(const ScalarField& f, const SymTensor2Field& g);
double integrate_scalar(const ScalarField& f, const MetricField& m);

/// Total volume of (chart, g).
double volume(const MetricField& m);

// Metric catalogue used by the CLI and the verification suites.

MetricField flat_metric(const ChartSpec& chart);

/// g_ij = (1 + amplitude * psi(x)) delta_ij with psi a band-limited,
/// zero-mean trigonometric polynomial built from `seed`
/// (|amplitude| < 0.5 keeps g positive definite).
MetricField conformal_perturbed_metric(const ChartSpec& chart, double amplitude,
                                       int max_wavenumber, uint64_t seed);

/// Same shape with the fixed profile psi = sin(2 pi x_0 / L_0).
MetricField conformal_sin_metric(const ChartSpec& chart, double amplitude);

}  // namespace metriclab
