#include "metriclab/family.hpp"

#include <cmath>

namespace metriclab {

MetricFamily::MetricFamily(MetricField base, VariationDirection dir, Mode mode)
    : base_(std::move(base)), dir_(std::move(dir)), mode_(mode) {
    require_same_grid(base_.g(), dir_.h, "MetricFamily");
    const int n = base_.dim();

    if (mode_ == Mode::VolumeNormalized) {
        if (base_.chart().boundary != Boundary::Periodic)
            throw chart_error("volume-normalized families require a periodic chart");
        volume_c_ = volume(base_);

        // Derivatives of V(t) = Vol(g + t h) at t = 0.
        ScalarField trh = trace(dir_.h, base_);
        ScalarField half_trh = trh;
        for (int64_t node = 0; node < half_trh.nodes(); ++node) half_trh.at(node) *= 0.5;
        const double v1 = integrate_scalar(half_trh, base_);

        ScalarField h_sq = inner_product(dir_.h, dir_.h, base_);
        ScalarField v2_density(base_.chart());
        for (int64_t node = 0; node < v2_density.nodes(); ++node)
            v2_density.at(node) =
                0.25 * trh.at(node) * trh.at(node) - 0.5 * h_sq.at(node);
        const double v2 = integrate_scalar(v2_density, base_);

        // phi(t) = (c / V(t))^{2/n}; the family's true derivatives follow
        // from this closed form.
        phi1_ = (-2.0 / n) * v1 / volume_c_;
        phi2_ = (-2.0 / n) *
                ((-2.0 / n - 1.0) * v1 * v1 / (volume_c_ * volume_c_) + v2 / volume_c_);

        h_eff_ = dir_.h;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int64_t node = 0; node < h_eff_.nodes(); ++node)
                    h_eff_.at(node, i, j) += phi1_ * base_.g().at(node, i, j);

        k_eff_ = scaled(2.0 * phi1_, dir_.h);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int64_t node = 0; node < k_eff_.nodes(); ++node)
                    k_eff_.at(node, i, j) += phi2_ * base_.g().at(node, i, j);
    } else {
        h_eff_ = dir_.h;
        k_eff_ = (mode_ == Mode::Quadratic && dir_.has_k) ? dir_.k
                                                          : SymTensor2Field(base_.chart());
    }
}

MetricField MetricFamily::at(double t) const {
    SymTensor2Field gt = base_.g();
    accumulate(gt, t, dir_.h);
    if (mode_ == Mode::Quadratic && dir_.has_k) accumulate(gt, 0.5 * t * t, dir_.k);

    if (mode_ != Mode::VolumeNormalized) return MetricField::from(std::move(gt));

    MetricField inner = MetricField::from(std::move(gt));
    const double v = volume(inner);
    const double phi = std::pow(volume_c_ / v, 2.0 / base_.dim());
    SymTensor2Field scaled_g = scaled(phi, inner.g());
    return MetricField::from(std::move(scaled_g));
}

double MetricFamily::volume_constraint_integral() const {
    ScalarField trh = trace(h_eff_, base_);
    ScalarField trk = trace(k_eff_, base_);
    ScalarField h_sq = inner_product(h_eff_, h_eff_, base_);
    ScalarField density(base_.chart());
    for (int64_t node = 0; node < density.nodes(); ++node)
        density.at(node) = -h_sq.at(node) + trk.at(node) +
                           0.5 * trh.at(node) * trh.at(node);
    return integrate_scalar(density, base_);
}

}  // namespace metriclab
