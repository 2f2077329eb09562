#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "metriclab/chart.hpp"

namespace metriclab {

namespace detail {
/// Packed index of the unordered pair (i,j), i<=j, among the
/// n(n+1)/2 independent components of a symmetric 2-tensor.
inline int sym_pair(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}
inline int sym_count(int n) { return n * (n + 1) / 2; }
}  // namespace detail

/// Component-major storage shared by every field type:
/// value(c, node) = data[c * nodes + node].
class FieldStorage {
public:
    FieldStorage() = default;
    FieldStorage(const ChartSpec& chart, int ncomp)
        : chart_(chart), ncomp_(ncomp), data_(static_cast<size_t>(ncomp) * chart.nodes(), 0.0) {}

    const ChartSpec& chart() const { return chart_; }
    int ncomp() const { return ncomp_; }
    int64_t nodes() const { return chart_.nodes(); }

    double& value(int c, int64_t node) { return data_[static_cast<size_t>(c) * nodes() + node]; }
    double value(int c, int64_t node) const { return data_[static_cast<size_t>(c) * nodes() + node]; }

    std::span<double> component(int c) {
        return {data_.data() + static_cast<size_t>(c) * nodes(), static_cast<size_t>(nodes())};
    }
    std::span<const double> component(int c) const {
        return {data_.data() + static_cast<size_t>(c) * nodes(), static_cast<size_t>(nodes())};
    }

    std::span<double> raw() { return data_; }
    std::span<const double> raw() const { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

protected:
    ChartSpec chart_;
    int ncomp_ = 0;
    std::vector<double> data_;
};

class ScalarField : public FieldStorage {
public:
    ScalarField() = default;
    explicit ScalarField(const ChartSpec& chart) : FieldStorage(chart, 1) {}

    double& at(int64_t node) { return value(0, node); }
    double at(int64_t node) const { return value(0, node); }
};

/// One lower coordinate index (alpha_i).
class CovectorField : public FieldStorage {
public:
    CovectorField() = default;
    explicit CovectorField(const ChartSpec& chart) : FieldStorage(chart, chart.dim) {}

    double& at(int64_t node, int i) { return value(i, node); }
    double at(int64_t node, int i) const { return value(i, node); }
};

/// One upper coordinate index (Z^i).
class VectorField : public FieldStorage {
public:
    VectorField() = default;
    explicit VectorField(const ChartSpec& chart) : FieldStorage(chart, chart.dim) {}

    double& at(int64_t node, int i) { return value(i, node); }
    double at(int64_t node, int i) const { return value(i, node); }
};

/// Two indices, no symmetry assumed (e.g. nabla_a alpha_b).
class Rank2Field : public FieldStorage {
public:
    Rank2Field() = default;
    explicit Rank2Field(const ChartSpec& chart) : FieldStorage(chart, chart.dim * chart.dim) {}

    double& at(int64_t node, int i, int j) { return value(i * chart_.dim + j, node); }
    double at(int64_t node, int i, int j) const { return value(i * chart_.dim + j, node); }
};

/// Symmetric 2-tensor, packed over unordered pairs (i<=j); symmetry
/// holds by construction.
class SymTensor2Field : public FieldStorage {
public:
    SymTensor2Field() = default;
    explicit SymTensor2Field(const ChartSpec& chart)
        : FieldStorage(chart, detail::sym_count(chart.dim)) {}

    double& at(int64_t node, int i, int j) {
        return value(detail::sym_pair(chart_.dim, i, j), node);
    }
    double at(int64_t node, int i, int j) const {
        return value(detail::sym_pair(chart_.dim, i, j), node);
    }
    double& at_pair(int64_t node, int p) { return value(p, node); }
    double at_pair(int64_t node, int p) const { return value(p, node); }
};

/// Three indices, symmetric in the last two: Gamma^k_{ij}, (nabla_a h)_{ij},
/// connection variations. Component layout: [k][pair(i,j)].
class Tensor3Field : public FieldStorage {
public:
    Tensor3Field() = default;
    explicit Tensor3Field(const ChartSpec& chart)
        : FieldStorage(chart, chart.dim * detail::sym_count(chart.dim)) {}

    double& at(int64_t node, int k, int i, int j) {
        return value(k * detail::sym_count(chart_.dim) + detail::sym_pair(chart_.dim, i, j), node);
    }
    double at(int64_t node, int k, int i, int j) const {
        return value(k * detail::sym_count(chart_.dim) + detail::sym_pair(chart_.dim, i, j), node);
    }
};

/// Full four-index tensor R^l_{kij} (antisymmetry in (i,j) is a property
/// of the values, not the storage).
class Tensor4Field : public FieldStorage {
public:
    Tensor4Field() = default;
    explicit Tensor4Field(const ChartSpec& chart)
        : FieldStorage(chart, chart.dim * chart.dim * chart.dim * chart.dim) {}

    double& at(int64_t node, int l, int k, int i, int j) {
        const int n = chart_.dim;
        return value(((l * n + k) * n + i) * n + j, node);
    }
    double at(int64_t node, int l, int k, int i, int j) const {
        const int n = chart_.dim;
        return value(((l * n + k) * n + i) * n + j, node);
    }
};

void require_same_grid(const FieldStorage& a, const FieldStorage& b, const char* what);

/// max |component| over a region (all components).
double max_abs(const FieldStorage& f, const Region& r);
double max_abs(const FieldStorage& f);

/// max |a - b| over components, same layout required.
double max_abs_diff(const FieldStorage& a, const FieldStorage& b, const Region& r);
double max_abs_diff(const FieldStorage& a, const FieldStorage& b);

}  // namespace metriclab
