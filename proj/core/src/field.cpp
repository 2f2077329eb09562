#include "metriclab/field.hpp"

#include <cstdlib>

namespace metriclab {

void require_same_grid(const FieldStorage& a, const FieldStorage& b, const char* what) {
    if (!a.chart().same_grid(b.chart()))
        throw chart_error(std::string(what) + ": fields live on different charts");
    if (a.ncomp() != b.ncomp())
        throw chart_error(std::string(what) + ": component count mismatch");
}

namespace {

template <class Fn>
void for_region(const FieldStorage& f, const Region& r, Fn&& fn) {
    const ChartSpec& c = f.chart();
    const int64_t nn = f.nodes();
    // Fast path: whole chart.
    bool whole = true;
    for (int a = 0; a < c.dim; ++a)
        if (r.lo[a] != 0 || r.hi[a] != c.resolution[a]) whole = false;
    if (whole) {
        for (int64_t node = 0; node < nn; ++node) fn(node);
        return;
    }
    std::array<int, kMaxDim> idx = r.lo;
    while (true) {
        fn(c.node_index(idx));
        int a = c.dim - 1;
        while (a >= 0) {
            if (++idx[a] < r.hi[a]) break;
            idx[a] = r.lo[a];
            --a;
        }
        if (a < 0) break;
    }
}

}  // namespace

double max_abs(const FieldStorage& f, const Region& r) {
    double m = 0.0;
    for (int c = 0; c < f.ncomp(); ++c) {
        auto v = f.component(c);
        for_region(f, r, [&](int64_t node) {
            double a = std::abs(v[node]);
            if (a > m) m = a;
        });
    }
    return m;
}

double max_abs(const FieldStorage& f) { return max_abs(f, whole_chart(f.chart())); }

double max_abs_diff(const FieldStorage& a, const FieldStorage& b, const Region& r) {
    require_same_grid(a, b, "max_abs_diff");
    double m = 0.0;
    for (int c = 0; c < a.ncomp(); ++c) {
        auto va = a.component(c);
        auto vb = b.component(c);
        for_region(a, r, [&](int64_t node) {
            double d = std::abs(va[node] - vb[node]);
            if (d > m) m = d;
        });
    }
    return m;
}

double max_abs_diff(const FieldStorage& a, const FieldStorage& b) {
    return max_abs_diff(a, b, whole_chart(a.chart()));
}

}  // namespace metriclab
