#pragma once

#include "metriclab/metric.hpp"

namespace metriclab {

// Pointwise metric algebra. Every frame-based definition is realized in
// coordinate-index form with explicit g^{ij} contractions; an orthonormal
// frame never materializes.

/// <T,Q> = T_ij Q_ab g^{ia} g^{jb}.
ScalarField inner_product(const SymTensor2Field& T, const SymTensor2Field& Q,
                          const MetricField& m);

/// Covector pairing <a,b> = g^{ij} a_i b_j.
ScalarField inner_product(const CovectorField& a, const CovectorField& b,
                          const MetricField& m);

/// (T o Q)_ij = T_ia g^{ab} Q_bj, symmetrized. For symmetric inputs the
/// contraction with any symmetric tensor is unchanged by the
/// symmetrization; T o g = T and g o g = g hold exactly.
SymTensor2Field compose(const SymTensor2Field& T, const SymTensor2Field& Q,
                        const MetricField& m);

/// T^sigma: the symmetric part of a general 2-index field.
SymTensor2Field symmetrize(const Rank2Field& T);

/// Tr T = g^{ij} T_ij.
ScalarField trace(const SymTensor2Field& T, const MetricField& m);

/// Pointwise |T|_g = sqrt(<T,T>).
ScalarField tensor_norm(const SymTensor2Field& T, const MetricField& m);

VectorField raise_index(const CovectorField& a, const MetricField& m);
CovectorField lower_index(const VectorField& v, const MetricField& m);

// Field arithmetic helpers (same chart required).

template <class F>
F axpy(double alpha, const F& x, const F& y) {  // alpha*x + y
    require_same_grid(x, y, "axpy");
    F r = y;
    auto xs = x.raw();
    auto rs = r.raw();
    for (size_t i = 0; i < rs.size(); ++i) rs[i] += alpha * xs[i];
    return r;
}

template <class F>
F scaled(double alpha, const F& x) {
    F r = x;
    for (double& v : r.raw()) v *= alpha;
    return r;
}

/// r += alpha * x
template <class F>
void accumulate(F& r, double alpha, const F& x) {
    require_same_grid(r, x, "accumulate");
    auto xs = x.raw();
    auto rs = r.raw();
    for (size_t i = 0; i < rs.size(); ++i) rs[i] += alpha * xs[i];
}

/// r += s-field * x  (pointwise scalar multiple, per component)
void accumulate_scaled_by_field(SymTensor2Field& r, const ScalarField& s,
                                const SymTensor2Field& x, double factor = 1.0);

/// Pointwise product by a scalar field.
SymTensor2Field multiply(const ScalarField& s, const SymTensor2Field& x);
CovectorField multiply(const ScalarField& s, const CovectorField& x);
ScalarField multiply(const ScalarField& a, const ScalarField& b);

}  // namespace metriclab
