#pragma once

#include <cstdint>
#include <random>

#include "metriclab/field.hpp"

namespace metriclab {

/// Deterministic uniform doubles from a seeded mt19937_64. The raw-bit
/// mapping avoids std::uniform_real_distribution, whose output is not
/// pinned across standard libraries; reports must be reproducible from
/// (config, seed) alone.
class FieldRng {
public:
    explicit FieldRng(uint64_t seed) : eng_(seed) {}

    double unit() { return (eng_() >> 11) * 0x1.0p-53; }  // [0, 1)
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

/// Band-limited trigonometric polynomial on a periodic chart: a sum of
/// `modes` cosine waves with integer wavevectors |k_a| <= max_wavenumber
/// (not all zero), unit-bounded amplitude. Keeping the band limit low
/// holds the spatial discretization error of the verification suites
/// below the t-differencing error.
ScalarField random_bandlimited_scalar(const ChartSpec& chart, int max_wavenumber,
                                      int modes, double amplitude, FieldRng& rng);

SymTensor2Field random_bandlimited_sym2(const ChartSpec& chart, int max_wavenumber,
                                        int modes, double amplitude, FieldRng& rng);

CovectorField random_bandlimited_covector(const ChartSpec& chart, int max_wavenumber,
                                          int modes, double amplitude, FieldRng& rng);

VectorField random_bandlimited_vector(const ChartSpec& chart, int max_wavenumber,
                                      int modes, double amplitude, FieldRng& rng);

}  // namespace metriclab
