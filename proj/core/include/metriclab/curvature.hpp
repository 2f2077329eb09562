#pragma once

#include "metriclab/algebra.hpp"
#include "metriclab/derivative.hpp"

namespace metriclab {

/// Connection and curvature of a metric, computed once and reused by the
/// variation formulas. Index layout of riemann: R^l_{kij} is the l-th
/// component of R(d_i, d_j) d_k, so
///   R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
///             + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik},
///   Ric_{kj}  = R^i_{kij},    S = g^{kj} Ric_{kj}.
/// The sign convention is pinned by a regression test against the
/// warped-product closed forms (Ric_11 = 2 a (1-a)/r^2).
struct CurvatureBundle {
    Tensor3Field christoffel;  // Gamma^k_{ij}, symmetric in (i,j)
    Tensor4Field riemann;      // R^l_{kij}
    SymTensor2Field ricci;
    ScalarField scalar;
};

/// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
Tensor3Field christoffel(const MetricField& m);

CurvatureBundle curvature_bundle(const MetricField& m);

/// (grad f)^i = g^{ij} d_j f.
VectorField gradient(const ScalarField& f, const MetricField& m);

/// (Hess f)_ij = d_i d_j f - Gamma^k_{ij} d_k f. Symmetric by construction.
SymTensor2Field hessian(const ScalarField& f, const MetricField& m,
                        const Tensor3Field& gamma);

/// Positive-spectrum convention: Delta f = -Tr Hess f
/// (on a flat chart, Delta sin = +omega^2 sin).
ScalarField laplacian(const ScalarField& f, const MetricField& m,
                      const Tensor3Field& gamma);

// Covariant derivatives in explicit index form (one Gamma correction per
// index).

/// (nabla_a alpha)_b = d_a alpha_b - Gamma^m_{ab} alpha_m.
Rank2Field cov_deriv(const CovectorField& alpha, const MetricField& m,
                     const Tensor3Field& gamma);

/// (nabla_a T)_ij = d_a T_ij - Gamma^m_{ai} T_mj - Gamma^m_{aj} T_im.
Tensor3Field cov_deriv(const SymTensor2Field& T, const MetricField& m,
                       const Tensor3Field& gamma);

/// delta T = -g^{ab} (nabla_a T)_{b ...}, one rank lower.
ScalarField divergence(const CovectorField& alpha, const MetricField& m,
                       const Tensor3Field& gamma);
CovectorField divergence(const SymTensor2Field& T, const MetricField& m,
                         const Tensor3Field& gamma);

/// (delta* alpha)_ij = 1/2 ((nabla_i alpha)_j + (nabla_j alpha)_i).
SymTensor2Field delta_star(const CovectorField& alpha, const MetricField& m,
                           const Tensor3Field& gamma);

/// Rough Laplacian (nabla*nabla T)_ij = -g^{ab} (nabla^2_{a,b} T)_ij.
SymTensor2Field rough_laplacian(const SymTensor2Field& T, const MetricField& m,
                                const Tensor3Field& gamma);

/// Curvature action (ring R) on symmetric 2-tensors:
/// (ring_r T)_xy = g^{ab} R^l_{yax} T_lb. The contraction slots are fixed
/// so that ring_r(g) = Ric holds exactly.
SymTensor2Field ring_r(const SymTensor2Field& T, const CurvatureBundle& b,
                       const MetricField& m);

/// Lichnerowicz Laplacian: nabla*nabla T + Ric o T + T o Ric - 2 ring_r T.
SymTensor2Field lichnerowicz(const SymTensor2Field& T, const CurvatureBundle& b,
                             const MetricField& m);

/// (L_Z g)_ij = (nabla_i Zb)_j + (nabla_j Zb)_i with Zb = g(Z, .).
SymTensor2Field lie_derivative_metric(const VectorField& Z, const MetricField& m,
                                      const Tensor3Field& gamma);

}  // namespace metriclab
