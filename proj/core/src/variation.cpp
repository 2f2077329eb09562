#include "metriclab/variation.hpp"

#include <cmath>

namespace metriclab {

ScalarField volume_element_variation(const SymTensor2Field& h, const MetricField& m) {
    ScalarField out = trace(h, m);
    for (int64_t node = 0; node < out.nodes(); ++node) out.at(node) *= 0.5;
    return out;
}

ScalarField scalar_curvature_variation(const SymTensor2Field& h, const MetricField& m,
                                       const CurvatureBundle& b) {
    ScalarField out = laplacian(trace(h, m), m, b.christoffel);
    accumulate(out, 1.0, divergence(divergence(h, m, b.christoffel), m, b.christoffel));
    accumulate(out, -1.0, inner_product(b.ricci, h, m));
    return out;
}

ScalarField inner_product_variation(const SymTensor2Field& T, const SymTensor2Field& Q,
                                    const SymTensor2Field& h, const MetricField& m,
                                    const SymTensor2Field* T_dot,
                                    const SymTensor2Field* Q_dot) {
    ScalarField out = scaled(-2.0, inner_product(T, compose(h, Q, m), m));
    if (T_dot) accumulate(out, 1.0, inner_product(*T_dot, Q, m));
    if (Q_dot) accumulate(out, 1.0, inner_product(T, *Q_dot, m));
    return out;
}

Tensor3Field connection_variation(const SymTensor2Field& h, const MetricField& m,
                                  const Tensor3Field& gamma) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;
    Tensor3Field nh = cov_deriv(h, m, gamma);  // (nabla_a h)_{ij} at [a][ij]
    Tensor3Field out(chart);
    for (int64_t node = 0; node < chart.nodes(); ++node)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double acc = 0.0;
                    for (int l = 0; l < n; ++l)
                        acc += m.ginv().at(node, k, l) *
                               (nh.at(node, i, j, l) + nh.at(node, j, i, l) -
                                nh.at(node, l, i, j));
                    out.at(node, k, i, j) = 0.5 * acc;
                }
    return out;
}

namespace {

/// ((nabla_. h)(., Z))^sigma for a vector Z: symmetric part of
/// A_ij = (nabla_i h)_{jk} Z^k.
SymTensor2Field grad_h_contracted_sym(const Tensor3Field& nh, const VectorField& Z,
                                      const ChartSpec& chart) {
    const int n = chart.dim;
    SymTensor2Field out(chart);
    for (int64_t node = 0; node < chart.nodes(); ++node)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double aij = 0.0, aji = 0.0;
                for (int k = 0; k < n; ++k) {
                    aij += nh.at(node, i, j, k) * Z.at(node, k);
                    aji += nh.at(node, j, i, k) * Z.at(node, k);
                }
                out.at(node, i, j) = 0.5 * (aij + aji);
            }
    return out;
}

/// nabla_Z h = Z^a (nabla_a h)_{ij}.
SymTensor2Field directional_deriv(const Tensor3Field& nh, const VectorField& Z,
                                  const ChartSpec& chart) {
    const int n = chart.dim;
    SymTensor2Field out(chart);
    for (int64_t node = 0; node < chart.nodes(); ++node)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) acc += Z.at(node, a) * nh.at(node, a, i, j);
                out.at(node, i, j) = acc;
            }
    return out;
}

/// delta h + 1/2 d(Tr h), the covector appearing in the Laplacian
/// variation and in T1.
CovectorField divergence_plus_half_dtrace(const SymTensor2Field& h, const MetricField& m,
                                          const Tensor3Field& gamma) {
    CovectorField w = divergence(h, m, gamma);
    CovectorField dtr = differential(trace(h, m));
    accumulate(w, 0.5, dtr);
    return w;
}

void add_scalar_times_g(SymTensor2Field& out, const ScalarField& s, const MetricField& m,
                        double factor = 1.0) {
    const int n = m.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int64_t node = 0; node < out.nodes(); ++node)
                out.at(node, i, j) += factor * s.at(node) * m.g().at(node, i, j);
}

}  // namespace

SymTensor2Field hessian_variation(const ScalarField& f, const ScalarField& f_dot,
                                  const SymTensor2Field& h, const MetricField& m,
                                  const Tensor3Field& gamma) {
    const ChartSpec& chart = m.chart();
    Tensor3Field nh = cov_deriv(h, m, gamma);
    VectorField gf = gradient(f, m);

    SymTensor2Field out = hessian(f_dot, m, gamma);
    accumulate(out, -1.0, grad_h_contracted_sym(nh, gf, chart));
    accumulate(out, 0.5, directional_deriv(nh, gf, chart));
    return out;
}

ScalarField laplacian_variation(const ScalarField& f, const ScalarField& f_dot,
                                const SymTensor2Field& h, const MetricField& m,
                                const Tensor3Field& gamma) {
    ScalarField out = laplacian(f_dot, m, gamma);
    CovectorField w = divergence_plus_half_dtrace(h, m, gamma);
    accumulate(out, -1.0, inner_product(w, differential(f), m));
    accumulate(out, 1.0, inner_product(hessian(f, m, gamma), h, m));
    return out;
}

SymTensor2Field ricci_variation(const SymTensor2Field& h, const MetricField& m,
                                const CurvatureBundle& b) {
    SymTensor2Field out = scaled(0.5, rough_laplacian(h, m, b.christoffel));
    accumulate(out, -1.0, ring_r(h, b, m));
    accumulate(out, 1.0, compose(b.ricci, h, m));  // (Ric o h + h o Ric) / 2
    accumulate(out, -1.0,
               delta_star(divergence(h, m, b.christoffel), m, b.christoffel));
    accumulate(out, -0.5, hessian(trace(h, m), m, b.christoffel));
    return out;
}

double first_variation_functional(const MetricField& m, const CurvatureBundle& b,
                                  const FScalarFunction& F, const SymTensor2Field& h) {
    EinsteinPackage pkg = f_einstein_tensor(m, b, F, EinsteinForm::Compact);
    return -integrate_scalar(inner_product(pkg.e_f, h, m), m);
}

ScalarField f_aux(const SymTensor2Field& h, const MetricField& m, const CurvatureBundle& b,
                  const FScalarFunction& F) {
    return multiply(apply_f(F, b.scalar, 2), scalar_curvature_variation(h, m, b));
}

SymTensor2Field t0_operator(const SymTensor2Field& h, const MetricField& m,
                            const CurvatureBundle& b, const FScalarFunction& F,
                            double lambda) {
    const Tensor3Field& gamma = b.christoffel;
    ScalarField f1 = apply_f(F, b.scalar, 1);
    ScalarField fs = apply_f(F, b.scalar, 0);
    ScalarField trh = trace(h, m);
    CovectorField dh = divergence(h, m, gamma);
    ScalarField ddh = divergence(dh, m, gamma);
    ScalarField lap_trh = laplacian(trh, m, gamma);

    SymTensor2Field out(m.chart());
    accumulate_scaled_by_field(out, f1, rough_laplacian(h, m, gamma), -0.5);
    accumulate_scaled_by_field(out, f1, ring_r(h, b, m), 1.0);
    accumulate_scaled_by_field(out, f1, delta_star(dh, m, gamma), 1.0);
    accumulate_scaled_by_field(out, f1, hessian(trh, m, gamma), 0.5);

    ScalarField gcoef(m.chart());
    for (int64_t node = 0; node < gcoef.nodes(); ++node)
        gcoef.at(node) = 0.5 * f1.at(node) * (lap_trh.at(node) + ddh.at(node)) -
                         0.5 * (lambda + 0.5 * fs.at(node)) * trh.at(node);
    add_scalar_times_g(out, gcoef, m);
    return out;
}

SymTensor2Field t1_operator(const SymTensor2Field& h, const MetricField& m,
                            const CurvatureBundle& b, const FScalarFunction& F) {
    const ChartSpec& chart = m.chart();
    const Tensor3Field& gamma = b.christoffel;

    ScalarField f_scalar = f_aux(h, m, b, F);
    ScalarField f1 = apply_f(F, b.scalar, 1);
    SymTensor2Field hess_f1 = hessian(f1, m, gamma);
    ScalarField lap_f1 = trace(hess_f1, m);
    for (int64_t node = 0; node < lap_f1.nodes(); ++node) lap_f1.at(node) = -lap_f1.at(node);
    VectorField grad_f1 = gradient(f1, m);
    CovectorField d_f1 = differential(f1);
    Tensor3Field nh = cov_deriv(h, m, gamma);
    ScalarField trh = trace(h, m);

    SymTensor2Field out(chart);
    accumulate_scaled_by_field(out, f_scalar, b.ricci, -1.0);  // -f Ric
    accumulate(out, 1.0, hessian(f_scalar, m, gamma));
    add_scalar_times_g(out, laplacian(f_scalar, m, gamma), m);  // (Delta f) g

    accumulate(out, -1.0, compose(h, hess_f1, m));  // -(h o Hess F')^sigma
    accumulate(out, -1.0, grad_h_contracted_sym(nh, grad_f1, chart));
    accumulate(out, 0.5, directional_deriv(nh, grad_f1, chart));

    ScalarField gcoef = inner_product(divergence_plus_half_dtrace(h, m, gamma), d_f1, m);
    for (int64_t node = 0; node < gcoef.nodes(); ++node)
        gcoef.at(node) = -gcoef.at(node) - 0.5 * lap_f1.at(node) * trh.at(node);
    accumulate(gcoef, 0.5, inner_product(hess_f1, h, m));
    add_scalar_times_g(out, gcoef, m);
    return out;
}

double second_variation_pairing_scale(const SymTensor2Field& h, const MetricField& m,
                                      const CurvatureBundle& b, const FScalarFunction& F,
                                      double lambda) {
    const Tensor3Field& gamma = b.christoffel;
    ScalarField f1 = apply_f(F, b.scalar, 1);
    ScalarField fs = apply_f(F, b.scalar, 0);
    ScalarField trh = trace(h, m);
    CovectorField dh = divergence(h, m, gamma);
    ScalarField ddh = divergence(dh, m, gamma);
    ScalarField lap_trh = laplacian(trh, m, gamma);
    ScalarField f_scalar = f_aux(h, m, b, F);
    SymTensor2Field hess_f1 = hessian(f1, m, gamma);

    auto pairing = [&](const SymTensor2Field& term) {
        return std::abs(integrate_scalar(inner_product(term, h, m), m));
    };
    auto scalar_pairing = [&](const ScalarField& coef) {
        // |integral coef * (Tr h)| for terms proportional to g
        return std::abs(integrate_scalar(multiply(coef, trh), m));
    };

    double scale = 0.0;
    scale += pairing(multiply(f1, rough_laplacian(h, m, gamma))) * 0.5;
    scale += pairing(multiply(f1, ring_r(h, b, m)));
    scale += pairing(multiply(f1, delta_star(dh, m, gamma)));
    scale += pairing(multiply(f1, hessian(trh, m, gamma))) * 0.5;
    ScalarField gcoef(m.chart());
    for (int64_t node = 0; node < gcoef.nodes(); ++node)
        gcoef.at(node) = 0.5 * f1.at(node) * (lap_trh.at(node) + ddh.at(node));
    scale += scalar_pairing(gcoef);
    for (int64_t node = 0; node < gcoef.nodes(); ++node)
        gcoef.at(node) = 0.5 * (lambda + 0.5 * fs.at(node));
    scale += scalar_pairing(multiply(gcoef, trh));
    // T1 groups
    scale += pairing(multiply(f_scalar, b.ricci));
    scale += pairing(hessian(f_scalar, m, gamma));
    scale += scalar_pairing(laplacian(f_scalar, m, gamma));
    scale += pairing(compose(h, hess_f1, m));
    return scale;
}

double second_variation_value(const SymTensor2Field& h, const MetricField& m,
                              const CurvatureBundle& b, const FScalarFunction& F,
                              double lambda, const EinsteinPackage& pkg,
                              double proportionality_tol) {
    if (!einstein_proportional(pkg, lambda, proportionality_tol))
        throw hypothesis_error(
            "second variation requires E_F = lambda g at the base metric");

    SymTensor2Field t = t0_operator(h, m, b, F, lambda);
    accumulate(t, 1.0, t1_operator(h, m, b, F));
    return integrate_scalar(inner_product(t, h, m), m);
}

}  // namespace metriclab
