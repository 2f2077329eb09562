#include "metriclab/derivative.hpp"

#include <cmath>

namespace metriclab {

std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    // Fornberg's recursion for interpolation-derivative weights on
    // arbitrary nodes; exact up to the polynomial degree the window spans.
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> C(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    C[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j <= i - 1; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = C[i][m];
    return w;
}

namespace {

struct StencilRow {
    int start = 0;  // neighbor axis positions are i + start + k
    std::vector<double> w;
};

StencilRow make_row(int start, int npts, double target, int deriv, double h) {
    std::vector<double> x(npts);
    for (int k = 0; k < npts; ++k) x[k] = start + k;
    StencilRow row;
    row.start = start;
    row.w = fd_weights(target, x, deriv);
    const double scale = 1.0 / std::pow(h, deriv);
    for (double& v : row.w) v *= scale;
    return row;
}

struct AxisStencil {
    int N = 0;
    int hw = 0;
    bool periodic = true;
    StencilRow central;
    std::vector<StencilRow> left;   // rows for i = 0 .. hw-1
    std::vector<StencilRow> right;  // rows for i = N-hw .. N-1
};

AxisStencil build_axis_stencil(const ChartSpec& chart, int axis, int deriv) {
    AxisStencil s;
    s.N = chart.resolution[axis];
    s.hw = chart.stencil_halfwidth();
    s.periodic = chart.boundary == Boundary::Periodic;
    const double h = chart.spacing(axis);
    const int p = chart.stencil_order;

    s.central = make_row(-s.hw, 2 * s.hw + 1, 0.0, deriv, h);

    if (!s.periodic) {
        const int W = p + deriv;  // one-sided window keeping the formal order
        if (s.N < W)
            throw chart_error("axis " + std::to_string(axis) + " resolution " +
                              std::to_string(s.N) + " too small for a " + std::to_string(W) +
                              "-point edge stencil");
        for (int i = 0; i < s.hw; ++i) s.left.push_back(make_row(-i, W, 0.0, deriv, h));
        for (int i = s.N - s.hw; i < s.N; ++i)
            s.right.push_back(make_row((s.N - W) - i, W, 0.0, deriv, h));
    }
    return s;
}

void apply_axis_derivative(const FieldStorage& src, FieldStorage& dst, int axis, int deriv) {
    const ChartSpec& chart = src.chart();
    if (axis < 0 || axis >= chart.dim)
        throw chart_error("derivative axis " + std::to_string(axis) + " out of range for dim " +
                          std::to_string(chart.dim));
    if (deriv != 1 && deriv != 2)
        throw chart_error("derivative order must be 1 or 2, got " + std::to_string(deriv));

    const AxisStencil st = build_axis_stencil(chart, axis, deriv);
    const int64_t stride = chart.stride(axis);
    const int N = st.N;
    const int64_t block = static_cast<int64_t>(N) * stride;
    const int64_t nblocks = chart.nodes() / block;

    // Neighbor axis positions per node class, resolved once.
    std::vector<std::vector<int>> pos(N);
    std::vector<const StencilRow*> row(N);
    for (int i = 0; i < N; ++i) {
        const StencilRow* r = &st.central;
        if (!st.periodic) {
            if (i < st.hw)
                r = &st.left[i];
            else if (i >= N - st.hw)
                r = &st.right[i - (N - st.hw)];
        }
        row[i] = r;
        pos[i].resize(r->w.size());
        for (size_t k = 0; k < r->w.size(); ++k) {
            int j = i + r->start + static_cast<int>(k);
            if (st.periodic) j = ((j % N) + N) % N;
            pos[i][k] = j;
        }
    }

    for (int c = 0; c < src.ncomp(); ++c) {
        auto in = src.component(c);
        auto out = dst.component(c);
        for (int64_t b = 0; b < nblocks; ++b) {
            const int64_t base = b * block;
            for (int i = 0; i < N; ++i) {
                const auto& w = row[i]->w;
                const auto& p = pos[i];
                const int64_t obase = base + i * stride;
                for (int64_t inner = 0; inner < stride; ++inner) {
                    double acc = 0.0;
                    for (size_t k = 0; k < w.size(); ++k)
                        acc += w[k] * in[base + p[k] * stride + inner];
                    out[obase + inner] = acc;
                }
            }
        }
    }
}

template <class FieldT>
FieldT derive(const FieldT& f, int axis, int order) {
    FieldT out(f.chart());
    apply_axis_derivative(f, out, axis, order);
    return out;
}

}  // namespace

ScalarField partial_derivative(const ScalarField& f, int axis, int order) {
    return derive(f, axis, order);
}
CovectorField partial_derivative(const CovectorField& f, int axis, int order) {
    return derive(f, axis, order);
}
VectorField partial_derivative(const VectorField& f, int axis, int order) {
    return derive(f, axis, order);
}
Rank2Field partial_derivative(const Rank2Field& f, int axis, int order) {
    return derive(f, axis, order);
}
SymTensor2Field partial_derivative(const SymTensor2Field& f, int axis, int order) {
    return derive(f, axis, order);
}
Tensor3Field partial_derivative(const Tensor3Field& f, int axis, int order) {
    return derive(f, axis, order);
}
Tensor4Field partial_derivative(const Tensor4Field& f, int axis, int order) {
    return derive(f, axis, order);
}

CovectorField differential(const ScalarField& f) {
    CovectorField df(f.chart());
    for (int a = 0; a < f.chart().dim; ++a) {
        ScalarField d = partial_derivative(f, a, 1);
        auto src = d.component(0);
        auto dst = df.component(a);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return df;
}

}  // namespace metriclab
