#pragma once

#include "metriclab/variation.hpp"

namespace metriclab {

/// One-parameter family of metrics g_t used by the finite-difference
/// oracle.
///
/// Modes:
///   Linear            g_t = g + t h
///   Quadratic         g_t = g + t h + 1/2 t^2 k
///   VolumeNormalized  g_t = phi(t) (g + t h) with
///                     phi(t) = (c / Vol(g + t h))^{2/n}, c = Vol(g),
///                     so Vol(g_t) = c exactly for every t.
///
/// For VolumeNormalized the family's actual derivatives at t = 0 are
///   h_eff = h + phi'(0) g,  k_eff = phi''(0) g + 2 phi'(0) h,
/// with phi'(0), phi''(0) obtained by differentiating the closed-form
/// volume scaling (the first and second volume variations are evaluated
/// by quadrature).
class MetricFamily {
public:
    enum class Mode { Linear, Quadratic, VolumeNormalized };

    MetricFamily(MetricField base, VariationDirection dir, Mode mode);

    /// Metric at parameter t; throws numeric_error if g_t fails the
    /// positive-definite check (callers shrink the step and retry).
    MetricField at(double t) const;

    const MetricField& base() const { return base_; }
    Mode mode() const { return mode_; }

    /// First/second derivative of the family at t = 0 (exact, not
    /// finite-differenced).
    const SymTensor2Field& h_eff() const { return h_eff_; }
    const SymTensor2Field& k_eff() const { return k_eff_; }

    /// Conserved volume c (VolumeNormalized only).
    double volume_constant() const { return volume_c_; }

    /// Integral of [-|h_eff|^2 + Tr k_eff + 1/2 (Tr h_eff)^2] dV, which
    /// vanishes identically for a volume-preserving family.
    double volume_constraint_integral() const;

private:
    MetricField base_;
    VariationDirection dir_;
    Mode mode_;
    SymTensor2Field h_eff_;
    SymTensor2Field k_eff_;
    double volume_c_ = 0.0;
    double phi1_ = 0.0, phi2_ = 0.0;  // phi'(0), phi''(0)
};

}  // namespace metriclab
