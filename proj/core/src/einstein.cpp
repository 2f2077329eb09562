#include "metriclab/einstein.hpp"

#include <cmath>

namespace metriclab {

ScalarField apply_f(const FScalarFunction& F, const ScalarField& s, int deriv) {
    ScalarField out(s.chart());
    for (int64_t node = 0; node < out.nodes(); ++node) {
        const double v = s.at(node);
        out.at(node) = deriv == 0   ? F.f(v)
                       : deriv == 1 ? F.d1(v)
                       : deriv == 2 ? F.d2(v)
                                    : F.d3(v);
    }
    return out;
}

double functional_value(const MetricField& m, const CurvatureBundle& b,
                        const FScalarFunction& F) {
    return integrate_scalar(apply_f(F, b.scalar, 0), m);
}

namespace {

void finish_package(EinsteinPackage& pkg, const MetricField& m, const ScalarField& lap_f1,
                    const ScalarField& fs, const ScalarField& f1,
                    const CurvatureBundle& b) {
    const int n = m.dim();
    pkg.lambda_field = trace(pkg.e_f, m);
    for (int64_t node = 0; node < pkg.lambda_field.nodes(); ++node)
        pkg.lambda_field.at(node) /= n;

    SymTensor2Field dev = pkg.e_f;  // E - (Tr E / n) g
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int64_t node = 0; node < dev.nodes(); ++node)
                dev.at(node, i, j) -= pkg.lambda_field.at(node) * m.g().at(node, i, j);
    pkg.residual_proportionality = tensor_norm(dev, m);

    pkg.mu_field = pkg.lambda_field;
    for (int64_t node = 0; node < pkg.mu_field.nodes(); ++node)
        pkg.mu_field.at(node) += lap_f1.at(node) + 0.5 * fs.at(node);

    ScalarField ric_norm = tensor_norm(multiply(f1, b.ricci), m);
    pkg.term_scale = ScalarField(m.chart());
    const double sqn = std::sqrt(static_cast<double>(n));
    for (int64_t node = 0; node < pkg.term_scale.nodes(); ++node) {
        const double hess_part =
            std::abs(pkg.mu_field.at(node) - pkg.lambda_field.at(node)) * sqn;
        pkg.term_scale.at(node) =
            ric_norm.at(node) + hess_part +
            std::abs(lap_f1.at(node) + 0.5 * fs.at(node)) * sqn;
    }
}

}  // namespace

EinsteinPackage f_einstein_tensor(const MetricField& m, const CurvatureBundle& b,
                                  const FScalarFunction& F, EinsteinForm form) {
    const ChartSpec& chart = m.chart();
    const int n = chart.dim;

    ScalarField fs = apply_f(F, b.scalar, 0);
    ScalarField f1 = apply_f(F, b.scalar, 1);

    EinsteinPackage pkg;
    pkg.e_f = SymTensor2Field(chart);
    ScalarField lap_f1(chart);  // Delta F'(S), shared with the diagnostics

    if (form == EinsteinForm::Compact) {
        SymTensor2Field hess_f1 = hessian(f1, m, b.christoffel);
        lap_f1 = trace(hess_f1, m);
        for (int64_t node = 0; node < chart.nodes(); ++node) lap_f1.at(node) = -lap_f1.at(node);

        for (int64_t node = 0; node < chart.nodes(); ++node) {
            const double gcoef = lap_f1.at(node) + 0.5 * fs.at(node);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    pkg.e_f.at(node, i, j) = f1.at(node) * b.ricci.at(node, i, j) -
                                             hess_f1.at(node, i, j) -
                                             gcoef * m.g().at(node, i, j);
        }
    } else {
        ScalarField f2 = apply_f(F, b.scalar, 2);
        ScalarField f3 = apply_f(F, b.scalar, 3);
        SymTensor2Field hess_s = hessian(b.scalar, m, b.christoffel);
        ScalarField lap_s = trace(hess_s, m);
        for (int64_t node = 0; node < chart.nodes(); ++node) lap_s.at(node) = -lap_s.at(node);
        CovectorField ds = differential(b.scalar);
        ScalarField grad_s_sq = inner_product(ds, ds, m);

        for (int64_t node = 0; node < chart.nodes(); ++node) {
            // Delta F'(S) = F'' Delta S - F''' |grad S|^2 under the
            // positive-spectrum convention Delta = -Tr Hess.
            lap_f1.at(node) =
                f2.at(node) * lap_s.at(node) - f3.at(node) * grad_s_sq.at(node);
            const double gcoef = lap_f1.at(node) + 0.5 * fs.at(node);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    pkg.e_f.at(node, i, j) =
                        f1.at(node) * b.ricci.at(node, i, j) -
                        f2.at(node) * hess_s.at(node, i, j) -
                        f3.at(node) * ds.at(node, i) * ds.at(node, j) -
                        gcoef * m.g().at(node, i, j);
        }
    }

    finish_package(pkg, m, lap_f1, fs, f1, b);
    return pkg;
}

ScalarField trace_identity_residual(const EinsteinPackage& pkg, const MetricField& m,
                                    const CurvatureBundle& b, const FScalarFunction& F) {
    const int n = m.dim();
    ScalarField f1 = apply_f(F, b.scalar, 1);
    ScalarField fs = apply_f(F, b.scalar, 0);
    // Delta F'(S) recovered from the package's own mu and lambda fields,
    // so both sides of the identity share the identical discrete field.
    ScalarField tr = trace(pkg.e_f, m);
    ScalarField out(m.chart());
    for (int64_t node = 0; node < out.nodes(); ++node) {
        const double lap_f1 =
            pkg.mu_field.at(node) - pkg.lambda_field.at(node) - 0.5 * fs.at(node);
        const double bracket = b.scalar.at(node) * f1.at(node) + (1 - n) * lap_f1 -
                               0.5 * n * fs.at(node);
        out.at(node) = tr.at(node) - bracket;
    }
    return out;
}

CovectorField divergence_of_ef(const EinsteinPackage& pkg, const MetricField& m,
                               const Tensor3Field& gamma) {
    return divergence(pkg.e_f, m, gamma);
}

bool einstein_proportional(const EinsteinPackage& pkg, double lambda, double tol) {
    double max_resid = 0.0, max_scale = 0.0;
    for (int64_t node = 0; node < pkg.residual_proportionality.nodes(); ++node) {
        max_resid = std::max(max_resid, pkg.residual_proportionality.at(node));
        max_scale = std::max(max_scale, pkg.term_scale.at(node));
    }
    const double floor = 1e-6 * (1.0 + std::abs(lambda));
    return max_resid <= tol * std::max(max_scale, floor);
}

LambdaStats lambda_stats(const EinsteinPackage& pkg, const Region& region) {
    const ChartSpec& chart = pkg.lambda_field.chart();
    LambdaStats st;
    double lo = 0.0, hi = 0.0, sum = 0.0;
    int64_t count = 0;
    const int64_t nn = chart.nodes();
    for (int64_t node = 0; node < nn; ++node) {
        if (!region.contains(chart.unravel(node))) continue;
        const double v = pkg.lambda_field.at(node);
        if (count == 0) lo = hi = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        const double resid = pkg.residual_proportionality.at(node);
        const double scale = pkg.term_scale.at(node);
        st.max_proportionality_residual = std::max(st.max_proportionality_residual, resid);
        st.max_term_scale = std::max(st.max_term_scale, scale);
        st.max_rel_proportionality =
            std::max(st.max_rel_proportionality, resid / std::max(scale, 1e-300));
        ++count;
    }
    st.mean = count ? sum / count : 0.0;
    st.spread = hi - lo;
    return st;
}

}  // namespace metriclab
