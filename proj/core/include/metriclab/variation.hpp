#pragma once

#include "metriclab/einstein.hpp"

namespace metriclab {

/// First- and second-order data of a metric family at t = 0.
struct VariationDirection {
    SymTensor2Field h;
    SymTensor2Field k;  // empty (default) means zero acceleration
    bool has_k = false;
};

// First-variation formulas. Each returns the analytic t-derivative at
// t = 0 along g_t = g + t h; the finite-difference oracle checks them.

/// Density factor of the volume-element variation: 1/2 Tr h
/// (the variation itself is this factor times the density).
ScalarField volume_element_variation(const SymTensor2Field& h, const MetricField& m);

/// dS/dt = Delta(Tr h) + delta(delta h) - <Ric, h>.
ScalarField scalar_curvature_variation(const SymTensor2Field& h, const MetricField& m,
                                       const CurvatureBundle& b);

/// d/dt <T_t, Q_t>_t = <T', Q> + <T, Q'> - 2 <T, h o Q>.
/// Null T_dot/Q_dot mean time-independent tensors.
ScalarField inner_product_variation(const SymTensor2Field& T, const SymTensor2Field& Q,
                                    const SymTensor2Field& h, const MetricField& m,
                                    const SymTensor2Field* T_dot = nullptr,
                                    const SymTensor2Field* Q_dot = nullptr);

/// (dGamma)^k_{ij} = 1/2 g^{kl} [(nabla_i h)_jl + (nabla_j h)_il - (nabla_l h)_ij].
Tensor3Field connection_variation(const SymTensor2Field& h, const MetricField& m,
                                  const Tensor3Field& gamma);

/// d Hess_t f_t / dt = Hess(f') - ((nabla_. h)(., grad f))^sigma
///                   + 1/2 nabla_{grad f} h.
SymTensor2Field hessian_variation(const ScalarField& f, const ScalarField& f_dot,
                                  const SymTensor2Field& h, const MetricField& m,
                                  const Tensor3Field& gamma);

/// d Delta_t f_t / dt = Delta(f') - <delta h + 1/2 d(Tr h), df> + <Hess f, h>.
ScalarField laplacian_variation(const ScalarField& f, const ScalarField& f_dot,
                                const SymTensor2Field& h, const MetricField& m,
                                const Tensor3Field& gamma);

/// d Ric / dt = 1/2 nabla*nabla h - ring_r h + 1/2 (Ric o h + h o Ric)
///            - delta*(delta h) - 1/2 Hess(Tr h).
SymTensor2Field ricci_variation(const SymTensor2Field& h, const MetricField& m,
                                const CurvatureBundle& b);

/// d/dt of the integrated functional: -integral <E_F(g), h> dV.
double first_variation_functional(const MetricField& m, const CurvatureBundle& b,
                                  const FScalarFunction& F, const SymTensor2Field& h);

// Second-variation operators at a base metric with E_F(g) = lambda g.

/// f = F''(S) [Delta(Tr h) + delta(delta h) - <Ric, h>].
ScalarField f_aux(const SymTensor2Field& h, const MetricField& m,
                  const CurvatureBundle& b, const FScalarFunction& F);

/// T0(h) = -1/2 F'(S) nabla*nabla h + F'(S) ring_r h + F'(S) delta*(delta h)
///       + 1/2 F'(S) Hess(Tr h) + 1/2 F'(S) [Delta(Tr h) + delta(delta h)] g
///       - 1/2 [lambda + F(S)/2] (Tr h) g.
SymTensor2Field t0_operator(const SymTensor2Field& h, const MetricField& m,
                            const CurvatureBundle& b, const FScalarFunction& F,
                            double lambda);

/// T1(h) = -f Ric + Hess f + (Delta f) g - (h o HessF')^sigma
///       - ((nabla_. h)(., grad F'(S)))^sigma + 1/2 nabla_{grad F'(S)} h
///       - <delta h + 1/2 d(Tr h), dF'(S)> g - 1/2 (Delta F'(S)) (Tr h) g
///       + 1/2 <Hess F'(S), h> g.
/// Identically zero whenever F'' and F''' vanish.
SymTensor2Field t1_operator(const SymTensor2Field& h, const MetricField& m,
                            const CurvatureBundle& b, const FScalarFunction& F);

/// integral <T0(h) + T1(h), h> dV. Refuses (hypothesis_error) unless the
/// supplied package certifies E_F = lambda g within proportionality_tol
/// (relative to the package's own field scale).
double second_variation_value(const SymTensor2Field& h, const MetricField& m,
                              const CurvatureBundle& b, const FScalarFunction& F,
                              double lambda, const EinsteinPackage& pkg,
                              double proportionality_tol);

/// Sum of |integral <term, h>| over the individual terms of T0 + T1: the
/// natural magnitude of the second-variation pairing. The assembled value
/// can cancel to zero (the functional is topological on flat 2-tori with
/// linear F), so residuals are measured against this scale.
double second_variation_pairing_scale(const SymTensor2Field& h, const MetricField& m,
                                      const CurvatureBundle& b, const FScalarFunction& F,
                                      double lambda);

}  // namespace metriclab
