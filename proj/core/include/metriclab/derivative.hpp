#pragma once

#include <vector>

#include "metriclab/field.hpp"

namespace metriclab {

/// Finite-difference weights for the m-th derivative at z given nodes x
/// (Fornberg's recursion; exact for the polynomial space the nodes span).
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m);

/// Partial derivative along `axis` of the given order (1 or 2) at the
/// chart's stencil order. Periodic axes wrap; OpenPatch axes switch to
/// one-sided windows near the edges, which keep the formal order but
/// lose accuracy in a band of stencil_halfwidth() nodes — the trusted
/// interior excludes that band.
///
/// Throws chart_error for a bad axis/order or a resolution too small
/// for the stencil window.
ScalarField partial_derivative(const ScalarField& f, int axis, int order = 1);
CovectorField partial_derivative(const CovectorField& f, int axis, int order = 1);
VectorField partial_derivative(const VectorField& f, int axis, int order = 1);
Rank2Field partial_derivative(const Rank2Field& f, int axis, int order = 1);
SymTensor2Field partial_derivative(const SymTensor2Field& f, int axis, int order = 1);
Tensor3Field partial_derivative(const Tensor3Field& f, int axis, int order = 1);
Tensor4Field partial_derivative(const Tensor4Field& f, int axis, int order = 1);

/// d f: all first partials assembled into a covector.
CovectorField differential(const ScalarField& f);

}  // namespace metriclab
