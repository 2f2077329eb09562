#include "metriclab/curvature.hpp"

namespace metriclab {

Tensor3Field christoffel(const MetricField& m) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;

    std::vector<SymTensor2Field> dg;
    dg.reserve(n);
    for (int a = 0; a < n; ++a) dg.push_back(partial_derivative(m.g(), a, 1));

    Tensor3Field gamma(chart);
    for (int64_t node = 0; node < gamma.nodes(); ++node) {
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double acc = 0.0;
                    for (int l = 0; l < n; ++l)
                        acc += m.ginv().at(node, k, l) *
                               (dg[i].at(node, j, l) + dg[j].at(node, i, l) -
                                dg[l].at(node, i, j));
                    gamma.at(node, k, i, j) = 0.5 * acc;
                }
    }
    return gamma;
}

CurvatureBundle curvature_bundle(const MetricField& m) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;

    CurvatureBundle b;
    b.christoffel = christoffel(m);

    std::vector<Tensor3Field> dgamma;
    dgamma.reserve(n);
    for (int a = 0; a < n; ++a) dgamma.push_back(partial_derivative(b.christoffel, a, 1));

    b.riemann = Tensor4Field(chart);
    b.ricci = SymTensor2Field(chart);
    b.scalar = ScalarField(chart);

    for (int64_t node = 0; node < chart.nodes(); ++node) {
        double ric[kMaxDim][kMaxDim] = {};
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double v = dgamma[i].at(node, l, j, k) - dgamma[j].at(node, l, i, k);
                        for (int mm = 0; mm < n; ++mm)
                            v += b.christoffel.at(node, l, i, mm) * b.christoffel.at(node, mm, j, k) -
                                 b.christoffel.at(node, l, j, mm) * b.christoffel.at(node, mm, i, k);
                        b.riemann.at(node, l, k, i, j) = v;
                        if (l == i) ric[k][j] += v;
                    }
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            for (int j = k; j < n; ++j) {
                const double sym = 0.5 * (ric[k][j] + ric[j][k]);
                b.ricci.at(node, k, j) = sym;
            }
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) s += m.ginv().at(node, k, j) * b.ricci.at(node, k, j);
        b.scalar.at(node) = s;
    }
    return b;
}

VectorField gradient(const ScalarField& f, const MetricField& m) {
    return raise_index(differential(f), m);
}

SymTensor2Field hessian(const ScalarField& f, const MetricField& m, const Tensor3Field& gamma) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;

    std::vector<ScalarField> d1;
    d1.reserve(n);
    for (int a = 0; a < n; ++a) d1.push_back(partial_derivative(f, a, 1));

    SymTensor2Field hess(chart);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ScalarField dij = (i == j) ? partial_derivative(f, i, 2)
                                       : partial_derivative(d1[i], j, 1);
            for (int64_t node = 0; node < chart.nodes(); ++node) {
                double v = dij.at(node);
                for (int k = 0; k < n; ++k) v -= gamma.at(node, k, i, j) * d1[k].at(node);
                hess.at(node, i, j) = v;
            }
        }
    return hess;
}

ScalarField laplacian(const ScalarField& f, const MetricField& m, const Tensor3Field& gamma) {
    ScalarField out = trace(hessian(f, m, gamma), m);
    for (int64_t node = 0; node < out.nodes(); ++node) out.at(node) = -out.at(node);
    return out;
}

Rank2Field cov_deriv(const CovectorField& alpha, const MetricField& m,
                     const Tensor3Field& gamma) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;
    Rank2Field out(chart);
    for (int a = 0; a < n; ++a) {
        CovectorField da = partial_derivative(alpha, a, 1);
        for (int64_t node = 0; node < chart.nodes(); ++node)
            for (int bcomp = 0; bcomp < n; ++bcomp) {
                double v = da.at(node, bcomp);
                for (int mm = 0; mm < n; ++mm)
                    v -= gamma.at(node, mm, a, bcomp) * alpha.at(node, mm);
                out.at(node, a, bcomp) = v;
            }
    }
    return out;
}

Tensor3Field cov_deriv(const SymTensor2Field& T, const MetricField& m,
                       const Tensor3Field& gamma) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;
    Tensor3Field out(chart);
    for (int a = 0; a < n; ++a) {
        SymTensor2Field dT = partial_derivative(T, a, 1);
        for (int64_t node = 0; node < chart.nodes(); ++node)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double v = dT.at(node, i, j);
                    for (int mm = 0; mm < n; ++mm)
                        v -= gamma.at(node, mm, a, i) * T.at(node, mm, j) +
                             gamma.at(node, mm, a, j) * T.at(node, i, mm);
                    out.at(node, a, i, j) = v;
                }
    }
    return out;
}

ScalarField divergence(const CovectorField& alpha, const MetricField& m,
                       const Tensor3Field& gamma) {
    const int n = m.dim();
    Rank2Field grad = cov_deriv(alpha, m, gamma);
    ScalarField out(alpha.chart());
    for (int64_t node = 0; node < out.nodes(); ++node) {
        double acc = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) acc += m.ginv().at(node, a, b) * grad.at(node, a, b);
        out.at(node) = -acc;
    }
    return out;
}

CovectorField divergence(const SymTensor2Field& T, const MetricField& m,
                         const Tensor3Field& gamma) {
    const int n = m.dim();
    Tensor3Field grad = cov_deriv(T, m, gamma);
    CovectorField out(T.chart());
    for (int64_t node = 0; node < out.nodes(); ++node)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    acc += m.ginv().at(node, a, b) * grad.at(node, a, b, j);
            out.at(node, j) = -acc;
        }
    return out;
}

SymTensor2Field delta_star(const CovectorField& alpha, const MetricField& m,
                           const Tensor3Field& gamma) {
    return symmetrize(cov_deriv(alpha, m, gamma));
}

SymTensor2Field rough_laplacian(const SymTensor2Field& T, const MetricField& m,
                                const Tensor3Field& gamma) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;
    Tensor3Field gradT = cov_deriv(T, m, gamma);  // (nabla_b T)_ij stored at [b][ij]

    SymTensor2Field out(chart);
    for (int a = 0; a < n; ++a) {
        Tensor3Field dgrad = partial_derivative(gradT, a, 1);
        for (int64_t node = 0; node < chart.nodes(); ++node)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    for (int bcomp = 0; bcomp < n; ++bcomp) {
                        // (nabla_a nabla T)_{b i j}: one Gamma correction per index
                        double v = dgrad.at(node, bcomp, i, j);
                        for (int mm = 0; mm < n; ++mm)
                            v -= gamma.at(node, mm, a, bcomp) * gradT.at(node, mm, i, j) +
                                 gamma.at(node, mm, a, i) * gradT.at(node, bcomp, mm, j) +
                                 gamma.at(node, mm, a, j) * gradT.at(node, bcomp, i, mm);
                        out.at(node, i, j) -= m.ginv().at(node, a, bcomp) * v;
                    }
                }
    }
    return out;
}

SymTensor2Field ring_r(const SymTensor2Field& T, const CurvatureBundle& b,
                       const MetricField& m) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;
    SymTensor2Field out(chart);
    for (int64_t node = 0; node < chart.nodes(); ++node)
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y) {
                double vxy = 0.0, vyx = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int bb = 0; bb < n; ++bb) {
                        const double gab = m.ginv().at(node, a, bb);
                        for (int l = 0; l < n; ++l) {
                            vxy += gab * b.riemann.at(node, l, y, a, x) * T.at(node, l, bb);
                            vyx += gab * b.riemann.at(node, l, x, a, y) * T.at(node, l, bb);
                        }
                    }
                out.at(node, x, y) = 0.5 * (vxy + vyx);
            }
    return out;
}

SymTensor2Field lichnerowicz(const SymTensor2Field& T, const CurvatureBundle& b,
                             const MetricField& m) {
    SymTensor2Field out = rough_laplacian(T, m, b.christoffel);
    accumulate(out, 2.0, compose(b.ricci, T, m));  // Ric o T + T o Ric
    accumulate(out, -2.0, ring_r(T, b, m));
    return out;
}

SymTensor2Field lie_derivative_metric(const VectorField& Z, const MetricField& m,
                                      const Tensor3Field& gamma) {
    Rank2Field grad = cov_deriv(lower_index(Z, m), m, gamma);
    return scaled(2.0, symmetrize(grad));
}

}  // namespace metriclab
