#include "metriclab/metric.hpp"

#include <cmath>
#include <numbers>

#include "metriclab/randomfields.hpp"

namespace metriclab {

namespace {

// Per-node SPD factorization for n <= 4. Returns false if any pivot is
// non-positive.
bool cholesky(const double a[kMaxDim][kMaxDim], int n, double L[kMaxDim][kMaxDim]) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L[i][j] = 0.0;
    for (int j = 0; j < n; ++j) {
        double d = a[j][j];
        for (int k = 0; k < j; ++k) d -= L[j][k] * L[j][k];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        L[j][j] = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            L[i][j] = s / L[j][j];
        }
    }
    return true;
}

// inv = (L L^T)^{-1} via two triangular solves on basis vectors.
void spd_inverse(const double L[kMaxDim][kMaxDim], int n, double inv[kMaxDim][kMaxDim]) {
    for (int col = 0; col < n; ++col) {
        double y[kMaxDim] = {0, 0, 0, 0};
        for (int i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k) s -= L[i][k] * y[k];
            y[i] = s / L[i][i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            for (int k = i + 1; k < n; ++k) s -= L[k][i] * inv[k][col];
            inv[i][col] = s / L[i][i];
        }
    }
}

}  // namespace

MetricField MetricField::from(SymTensor2Field g) {
    const ChartSpec& chart = g.chart();
    const int n = chart.dim;
    MetricField m;
    m.ginv_ = SymTensor2Field(chart);
    m.sqrt_det_ = ScalarField(chart);

    double a[kMaxDim][kMaxDim], L[kMaxDim][kMaxDim], inv[kMaxDim][kMaxDim];
    const int64_t nn = chart.nodes();
    for (int64_t node = 0; node < nn; ++node) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = g.at(node, i, j);
        if (!cholesky(a, n, L))
            throw numeric_error("metric not positive definite at " + chart.describe_node(node));
        spd_inverse(L, n, inv);
        double sd = 1.0;
        for (int i = 0; i < n; ++i) sd *= L[i][i];
        m.sqrt_det_.at(node) = sd;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.ginv_.at(node, i, j) = 0.5 * (inv[i][j] + inv[j][i]);
    }
    m.g_ = std::move(g);
    return m;
}

namespace {

double cell_volume(const ChartSpec& c) {
    double dv = 1.0;
    for (int a = 0; a < c.dim; ++a) dv *= c.spacing(a);
    return dv;
}

double kahan_sum_weighted(const ScalarField& f, const ScalarField& w) {
    double sum = 0.0, comp = 0.0;
    const int64_t nn = f.nodes();
    for (int64_t node = 0; node < nn; ++node) {
        const double term = f.at(node) * w.at(node) - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

}  // namespace

double integrate_scalar(const ScalarField& f, const SymTensor2Field& g) {
    // The per-node factorization also enforces positive definiteness.
    return integrate_scalar(f, MetricField::from(g));
}

double integrate_scalar(const ScalarField& f, const MetricField& m) {
    const ChartSpec& chart = m.chart();
    if (chart.boundary != Boundary::Periodic)
        throw chart_error("integrate_scalar requires a periodic (compact) chart");
    require_same_grid(f, m.sqrt_det(), "integrate_scalar");
    return kahan_sum_weighted(f, m.sqrt_det()) * cell_volume(chart);
}

double volume(const MetricField& m) {
    ScalarField one(m.chart());
    for (int64_t node = 0; node < one.nodes(); ++node) one.at(node) = 1.0;
    return integrate_scalar(one, m);
}

MetricField flat_metric(const ChartSpec& chart) {
    SymTensor2Field g(chart);
    for (int64_t node = 0; node < g.nodes(); ++node)
        for (int i = 0; i < chart.dim; ++i) g.at(node, i, i) = 1.0;
    return MetricField::from(std::move(g));
}

namespace {

MetricField conformal_from_profile(const ChartSpec& chart, const ScalarField& psi,
                                   double amplitude) {
    if (!(std::abs(amplitude) < 0.5))
        throw chart_error("conformal amplitude must satisfy |a| < 0.5 to keep g positive");
    SymTensor2Field g(chart);
    for (int64_t node = 0; node < g.nodes(); ++node) {
        const double c = 1.0 + amplitude * psi.at(node);
        for (int i = 0; i < chart.dim; ++i) g.at(node, i, i) = c;
    }
    return MetricField::from(std::move(g));
}

}  // namespace

MetricField conformal_perturbed_metric(const ChartSpec& chart, double amplitude,
                                       int max_wavenumber, uint64_t seed) {
    FieldRng rng(seed);
    // modes fixed at 3, unit amplitude bound; profile is zero-mean.
    ScalarField psi = random_bandlimited_scalar(chart, max_wavenumber, 3, 1.0, rng);
    return conformal_from_profile(chart, psi, amplitude);
}

MetricField conformal_sin_metric(const ChartSpec& chart, double amplitude) {
    ScalarField psi(chart);
    const double w = 2.0 * std::numbers::pi / chart.extent[0];
    for (int64_t node = 0; node < psi.nodes(); ++node)
        psi.at(node) = std::sin(w * chart.coords(node)[0]);
    return conformal_from_profile(chart, psi, amplitude);
}

}  // namespace metriclab
