#include "metriclab/algebra.hpp"

#include <cmath>

namespace metriclab {

namespace {

// Load a symmetric field into a full local matrix.
inline void load(const SymTensor2Field& T, int64_t node, int n, double out[kMaxDim][kMaxDim]) {
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out[i][j] = out[j][i] = T.at(node, i, j);
}

}  // namespace

ScalarField inner_product(const SymTensor2Field& T, const SymTensor2Field& Q,
                          const MetricField& m) {
    require_same_grid(T, Q, "inner_product");
    require_same_grid(T, m.g(), "inner_product");
    const int n = m.dim();
    ScalarField out(T.chart());
    double t[kMaxDim][kMaxDim], q[kMaxDim][kMaxDim], gi[kMaxDim][kMaxDim];
    for (int64_t node = 0; node < out.nodes(); ++node) {
        load(T, node, n, t);
        load(Q, node, n, q);
        load(m.ginv(), node, n, gi);
        // raise both indices of Q, contract with T
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double qij = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) qij += gi[i][a] * gi[j][b] * q[a][b];
                acc += t[i][j] * qij;
            }
        out.at(node) = acc;
    }
    return out;
}

ScalarField inner_product(const CovectorField& a, const CovectorField& b,
                          const MetricField& m) {
    require_same_grid(a, b, "inner_product");
    const int n = m.dim();
    ScalarField out(a.chart());
    for (int64_t node = 0; node < out.nodes(); ++node) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += m.ginv().at(node, i, j) * a.at(node, i) * b.at(node, j);
        out.at(node) = acc;
    }
    return out;
}

SymTensor2Field compose(const SymTensor2Field& T, const SymTensor2Field& Q,
                        const MetricField& m) {
    require_same_grid(T, Q, "compose");
    const int n = m.dim();
    SymTensor2Field out(T.chart());
    double t[kMaxDim][kMaxDim], q[kMaxDim][kMaxDim], gi[kMaxDim][kMaxDim];
    for (int64_t node = 0; node < out.nodes(); ++node) {
        load(T, node, n, t);
        load(Q, node, n, q);
        load(m.ginv(), node, n, gi);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double v = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        v += 0.5 * gi[a][b] * (t[i][a] * q[b][j] + t[j][a] * q[b][i]);
                out.at(node, i, j) = v;
            }
    }
    return out;
}

SymTensor2Field symmetrize(const Rank2Field& T) {
    const int n = T.chart().dim;
    SymTensor2Field out(T.chart());
    for (int64_t node = 0; node < out.nodes(); ++node)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                out.at(node, i, j) = 0.5 * (T.at(node, i, j) + T.at(node, j, i));
    return out;
}

ScalarField trace(const SymTensor2Field& T, const MetricField& m) {
    require_same_grid(T, m.g(), "trace");
    const int n = m.dim();
    ScalarField out(T.chart());
    for (int64_t node = 0; node < out.nodes(); ++node) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += m.ginv().at(node, i, j) * T.at(node, i, j);
        out.at(node) = acc;
    }
    return out;
}

ScalarField tensor_norm(const SymTensor2Field& T, const MetricField& m) {
    ScalarField sq = inner_product(T, T, m);
    for (int64_t node = 0; node < sq.nodes(); ++node)
        sq.at(node) = std::sqrt(std::max(0.0, sq.at(node)));
    return sq;
}

VectorField raise_index(const CovectorField& a, const MetricField& m) {
    const int n = m.dim();
    VectorField out(a.chart());
    for (int64_t node = 0; node < out.nodes(); ++node)
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += m.ginv().at(node, i, j) * a.at(node, j);
            out.at(node, i) = acc;
        }
    return out;
}

CovectorField lower_index(const VectorField& v, const MetricField& m) {
    const int n = m.dim();
    CovectorField out(v.chart());
    for (int64_t node = 0; node < out.nodes(); ++node)
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += m.g().at(node, i, j) * v.at(node, j);
            out.at(node, i) = acc;
        }
    return out;
}

void accumulate_scaled_by_field(SymTensor2Field& r, const ScalarField& s,
                                const SymTensor2Field& x, double factor) {
    require_same_grid(r, x, "accumulate_scaled_by_field");
    for (int c = 0; c < r.ncomp(); ++c) {
        auto rc = r.component(c);
        auto xc = x.component(c);
        auto sc = s.component(0);
        for (int64_t node = 0; node < r.nodes(); ++node)
            rc[node] += factor * sc[node] * xc[node];
    }
}

SymTensor2Field multiply(const ScalarField& s, const SymTensor2Field& x) {
    SymTensor2Field out(x.chart());
    accumulate_scaled_by_field(out, s, x);
    return out;
}

CovectorField multiply(const ScalarField& s, const CovectorField& x) {
    CovectorField out = x;
    for (int c = 0; c < out.ncomp(); ++c) {
        auto oc = out.component(c);
        for (int64_t node = 0; node < out.nodes(); ++node) oc[node] *= s.at(node);
    }
    return out;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b, "multiply");
    ScalarField out = a;
    for (int64_t node = 0; node < out.nodes(); ++node) out.at(node) *= b.at(node);
    return out;
}

}  // namespace metriclab
