#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "metriclab/errors.hpp"

namespace metriclab {

enum class Boundary { Periodic, OpenPatch };

constexpr int kMaxDim = 4;

/// A single uniform coordinate chart: dimension, per-axis extent and
/// resolution, boundary handling, and the finite-difference order used
/// by every derivative taken on it.
///
/// Periodic axes place nodes at origin + i*extent/N for i in [0, N)
/// (the node at extent coincides with the one at 0). OpenPatch axes
/// include both endpoints: spacing = extent/(N-1).
struct ChartSpec {
    int dim = 2;
    std::array<int, kMaxDim> resolution{};
    std::array<double, kMaxDim> extent{};
    std::array<double, kMaxDim> origin{};  // nonzero only for OpenPatch
    Boundary boundary = Boundary::Periodic;
    int stencil_order = 4;  // 4 or 6

    static ChartSpec periodic(int dim, std::array<int, kMaxDim> res,
                              std::array<double, kMaxDim> ext);
    static ChartSpec unit_torus(int dim, int n_per_axis, int order = 4);
    static ChartSpec open_patch(int dim, std::array<int, kMaxDim> res,
                                std::array<double, kMaxDim> ext,
                                std::array<double, kMaxDim> orig, int order = 4);

    /// Throws chart_error on violated invariants (dim in [2,4],
    /// resolutions >= 8, extents > 0, stencil order 4 or 6).
    void validate() const;

    int64_t nodes() const {
        int64_t n = 1;
        for (int a = 0; a < dim; ++a) n *= resolution[a];
        return n;
    }

    double spacing(int axis) const {
        return boundary == Boundary::Periodic
                   ? extent[axis] / resolution[axis]
                   : extent[axis] / (resolution[axis] - 1);
    }

    double coord(int axis, int i) const { return origin[axis] + i * spacing(axis); }

    /// Stride of `axis` in the row-major node ordering.
    int64_t stride(int axis) const {
        int64_t s = 1;
        for (int a = axis + 1; a < dim; ++a) s *= resolution[a];
        return s;
    }

    int64_t node_index(const std::array<int, kMaxDim>& idx) const {
        int64_t n = 0;
        for (int a = 0; a < dim; ++a) n = n * resolution[a] + idx[a];
        return n;
    }

    std::array<int, kMaxDim> unravel(int64_t node) const {
        std::array<int, kMaxDim> idx{};
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(node % resolution[a]);
            node /= resolution[a];
        }
        return idx;
    }

    std::array<double, kMaxDim> coords(int64_t node) const {
        auto idx = unravel(node);
        std::array<double, kMaxDim> x{};
        for (int a = 0; a < dim; ++a) x[a] = coord(a, idx[a]);
        return x;
    }

    int stencil_halfwidth() const { return stencil_order / 2; }

    bool same_grid(const ChartSpec& o) const;

    std::string describe_node(int64_t node) const;
};

/// Axis-aligned index box, [lo, hi) per axis; the region a comparison
/// or norm is restricted to.
struct Region {
    std::array<int, kMaxDim> lo{};
    std::array<int, kMaxDim> hi{};
    int dim = 0;

    bool contains(const std::array<int, kMaxDim>& idx) const {
        for (int a = 0; a < dim; ++a)
            if (idx[a] < lo[a] || idx[a] >= hi[a]) return false;
        return true;
    }
    int64_t count() const {
        int64_t c = 1;
        for (int a = 0; a < dim; ++a) c *= (hi[a] - lo[a]) > 0 ? (hi[a] - lo[a]) : 0;
        return c;
    }
};

/// Full region of the chart.
Region whole_chart(const ChartSpec& c);

/// Interior with `margin` nodes stripped from each end of every open
/// axis (periodic axes keep all nodes). One-sided stencils degrade
/// accuracy near open edges; comparisons against closed forms restrict
/// to this region. Deeper operator compositions pass a larger margin.
Region trusted_interior(const ChartSpec& c, int margin);
Region trusted_interior(const ChartSpec& c, const std::array<int, kMaxDim>& margins);

}  // namespace metriclab
