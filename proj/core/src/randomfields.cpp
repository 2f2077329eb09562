#include "metriclab/randomfields.hpp"

#include <cmath>
#include <numbers>

namespace metriclab {

namespace {

struct Mode {
    std::array<int, kMaxDim> k{};
    double amplitude = 0.0;
    double phase = 0.0;
};

std::vector<Mode> draw_modes(const ChartSpec& chart, int max_wavenumber, int modes,
                             double amplitude, FieldRng& rng) {
    std::vector<Mode> out;
    out.reserve(modes);
    for (int m = 0; m < modes; ++m) {
        Mode mode;
        bool nonzero = false;
        for (int a = 0; a < chart.dim; ++a) {
            mode.k[a] = rng.uniform_int(-max_wavenumber, max_wavenumber);
            if (mode.k[a] != 0) nonzero = true;
        }
        if (!nonzero) mode.k[0] = 1;  // keep the profile zero-mean
        mode.amplitude = rng.uniform(0.3, 1.0) * amplitude / modes;
        mode.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        out.push_back(mode);
    }
    return out;
}

void fill_component(std::span<double> dst, const ChartSpec& chart,
                    const std::vector<Mode>& modes) {
    const int64_t nn = chart.nodes();
    for (int64_t node = 0; node < nn; ++node) {
        const auto x = chart.coords(node);
        double v = 0.0;
        for (const Mode& m : modes) {
            double arg = m.phase;
            for (int a = 0; a < chart.dim; ++a)
                arg += 2.0 * std::numbers::pi * m.k[a] * x[a] / chart.extent[a];
            v += m.amplitude * std::cos(arg);
        }
        dst[node] = v;
    }
}

void require_periodic(const ChartSpec& chart, int max_wavenumber) {
    if (chart.boundary != Boundary::Periodic)
        throw chart_error("band-limited random fields require a periodic chart");
    for (int a = 0; a < chart.dim; ++a)
        if (4 * max_wavenumber > chart.resolution[a])
            throw chart_error(
                "band limit " + std::to_string(max_wavenumber) +
                " exceeds resolution/4 on axis " + std::to_string(a) +
                "; the spatial error would not stay below the t-differencing error");
}

template <class FieldT>
FieldT random_field(const ChartSpec& chart, int max_wavenumber, int modes, double amplitude,
                    FieldRng& rng) {
    require_periodic(chart);
    FieldT f(chart);
    for (int c = 0; c < f.ncomp(); ++c)
        fill_component(f.component(c), chart, draw_modes(chart, max_wavenumber, modes, amplitude, rng));
    return f;
}

}  // namespace

ScalarField random_bandlimited_scalar(const ChartSpec& chart, int max_wavenumber, int modes,
                                      double amplitude, FieldRng& rng) {
    return random_field<ScalarField>(chart, max_wavenumber, modes, amplitude, rng);
}

SymTensor2Field random_bandlimited_sym2(const ChartSpec& chart, int max_wavenumber, int modes,
                                        double amplitude, FieldRng& rng) {
    return random_field<SymTensor2Field>(chart, max_wavenumber, modes, amplitude, rng);
}

CovectorField random_bandlimited_covector(const ChartSpec& chart, int max_wavenumber, int modes,
                                          double amplitude, FieldRng& rng) {
    return random_field<CovectorField>(chart, max_wavenumber, modes, amplitude, rng);
}

VectorField random_bandlimited_vector(const ChartSpec& chart, int max_wavenumber, int modes,
                                      double amplitude, FieldRng& rng) {
    return random_field<VectorField>(chart, max_wavenumber, modes, amplitude, rng);
}

}  // namespace metriclab
