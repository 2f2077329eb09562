#include "metriclab/chart.hpp"

#include <sstream>

namespace metriclab {

ChartSpec ChartSpec::periodic(int dim, std::array<int, kMaxDim> res,
                              std::array<double, kMaxDim> ext) {
    ChartSpec c;
    c.dim = dim;
    c.resolution = res;
    c.extent = ext;
    c.boundary = Boundary::Periodic;
    c.validate();
    return c;
}

ChartSpec ChartSpec::unit_torus(int dim, int n_per_axis, int order) {
    ChartSpec c;
    c.dim = dim;
    for (int a = 0; a < dim; ++a) {
        c.resolution[a] = n_per_axis;
        c.extent[a] = 1.0;
    }
    c.boundary = Boundary::Periodic;
    c.stencil_order = order;
    c.validate();
    return c;
}

ChartSpec ChartSpec::open_patch(int dim, std::array<int, kMaxDim> res,
                                std::array<double, kMaxDim> ext,
                                std::array<double, kMaxDim> orig, int order) {
    ChartSpec c;
    c.dim = dim;
    c.resolution = res;
    c.extent = ext;
    c.origin = orig;
    c.boundary = Boundary::OpenPatch;
    c.stencil_order = order;
    c.validate();
    return c;
}

void ChartSpec::validate() const {
    if (dim < 2 || dim > kMaxDim)
        throw chart_error("chart dimension must be in [2, 4], got " + std::to_string(dim));
    if (stencil_order != 4 && stencil_order != 6)
        throw chart_error("stencil order must be 4 or 6, got " + std::to_string(stencil_order));
    for (int a = 0; a < dim; ++a) {
        if (resolution[a] < 8)
            throw chart_error("axis " + std::to_string(a) + " resolution " +
                              std::to_string(resolution[a]) + " is below the minimum of 8");
        if (!(extent[a] > 0.0))
            throw chart_error("axis " + std::to_string(a) + " extent must be positive");
        // widest window: one-sided second derivative, order + 2 points
        if (boundary == Boundary::OpenPatch && resolution[a] < stencil_order + 2)
            throw chart_error("axis " + std::to_string(a) + " resolution too small for the " +
                              std::to_string(stencil_order) + "th-order edge stencil");
    }
}

bool ChartSpec::same_grid(const ChartSpec& o) const {
    if (dim != o.dim || boundary != o.boundary) return false;
    for (int a = 0; a < dim; ++a)
        if (resolution[a] != o.resolution[a] || extent[a] != o.extent[a] ||
            origin[a] != o.origin[a])
            return false;
    return true;
}

std::string ChartSpec::describe_node(int64_t node) const {
    auto idx = unravel(node);
    auto x = coords(node);
    std::ostringstream os;
    os << "node (";
    for (int a = 0; a < dim; ++a) os << (a ? "," : "") << idx[a];
    os << ") at (";
    for (int a = 0; a < dim; ++a) os << (a ? "," : "") << x[a];
    os << ")";
    return os.str();
}

Region whole_chart(const ChartSpec& c) {
    Region r;
    r.dim = c.dim;
    for (int a = 0; a < c.dim; ++a) {
        r.lo[a] = 0;
        r.hi[a] = c.resolution[a];
    }
    return r;
}

Region trusted_interior(const ChartSpec& c, int margin) {
    std::array<int, kMaxDim> margins{};
    for (int a = 0; a < c.dim; ++a) margins[a] = margin;
    return trusted_interior(c, margins);
}

Region trusted_interior(const ChartSpec& c, const std::array<int, kMaxDim>& margins) {
    Region r = whole_chart(c);
    if (c.boundary == Boundary::Periodic) return r;
    for (int a = 0; a < c.dim; ++a) {
        r.lo[a] = margins[a];
        r.hi[a] = c.resolution[a] - margins[a];
        if (r.hi[a] <= r.lo[a])
            throw chart_error("trusted interior empty on axis " + std::to_string(a) +
                              " (margin " + std::to_string(margins[a]) + ", resolution " +
                              std::to_string(c.resolution[a]) + ")");
    }
    return r;
}

}  // namespace metriclab
