#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metriclab/randomfields.hpp"
#include "test_support.hpp"

using namespace metriclab;
using namespace metriclab::testing;

TEST_CASE("scalar finite differences") {
    // quadratics are exact for the order-2 stencil
    auto r2 = fd_scalar_derivative([](double t) { return t * t; }, 1e-2, 2);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-9));

    auto r1 = fd_scalar_derivative([](double t) { return std::sin(t); }, 1e-2, 1);
    CHECK(std::abs(r1.value - 1.0) < 1e-10);

    CHECK_THROWS_AS(fd_scalar_derivative([](double) { return 1.0; }, 1e-2, 3), chart_error);
    CHECK_THROWS_AS(
        fd_scalar_derivative([](double t) { return t > 0 ? 1.0 / 0.0 : 0.0; }, 1e-2, 1),
        numeric_error);
}

TEST_CASE("functional derivative along the conformal family") {
    // E(g + t g) with F = s + 1 on the flat unit torus is (1+t)^{n/2}
    ChartSpec c = ChartSpec::unit_torus(2, 16);
    MetricField m = flat_metric(c);
    FScalarFunction F = FScalarFunction::polynomial({1.0, 1.0});
    auto fd = fd_scalar_derivative(
        [&](double t) {
            MetricField mt = MetricField::from(scaled(1.0 + t, m.g()));
            return functional_value(mt, curvature_bundle(mt), F);
        },
        1e-2, 1);
    CHECK(fd.value == doctest::Approx(1.0).epsilon(1e-9));  // n/2 * volume
}

TEST_CASE("field finite differences") {
    ChartSpec c = ChartSpec::unit_torus(2, 16);
    MetricField m = flat_metric(c);

    // S_t stays zero along the scaling family of the flat metric
    auto fd_s = fd_field_derivative(
        [&](double t) {
            return curvature_bundle(MetricField::from(scaled(1.0 + t, m.g()))).scalar;
        },
        1e-2, 1);
    CHECK(max_abs(fd_s.value) < 1e-9);

    // the volume density along (1+t) g goes like (1+t)^{n/2}
    auto fd_v = fd_field_derivative(
        [&](double t) {
            return MetricField::from(scaled(1.0 + t, m.g())).sqrt_det();
        },
        1e-2, 1);
    CHECK(max_err(fd_v.value, [](auto) { return 1.0; }, whole_chart(c)) < 1e-9);
}

TEST_CASE("order fitting") {
    // synthetic residuals e = 3 h^p recover p
    for (double p : {2.0, 4.0}) {
        std::vector<double> steps{1e-1, 5e-2, 2.5e-2}, errs;
        for (double h : steps) errs.push_back(3.0 * std::pow(h, p));
        CHECK(fit_order(steps, errs) == doctest::Approx(p).epsilon(1e-10));
    }
    // roundoff-dominated entries are ignored
    std::vector<double> steps{1e-1, 5e-2, 2.5e-2};
    std::vector<double> errs{4e-2, 1e-2, 1e-16};
    CHECK(fit_order(steps, errs) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("metric families") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField m = flat_metric(c);
    FieldRng rng(61);
    VariationDirection dir;
    dir.h = random_bandlimited_sym2(c, 2, 3, 1.0, rng);

    MetricFamily lin(m, dir, MetricFamily::Mode::Linear);
    CHECK(max_abs_diff(lin.h_eff(), dir.h) == 0.0);
    CHECK(max_abs(lin.k_eff()) == 0.0);

    // non-positive-definite samples are rejected
    CHECK_THROWS_AS(lin.at(5.0), numeric_error);

    // quadratic family carries its acceleration
    VariationDirection dq = dir;
    dq.k = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    dq.has_k = true;
    MetricFamily quad(m, dq, MetricFamily::Mode::Quadratic);
    CHECK(max_abs_diff(quad.k_eff(), dq.k) == 0.0);
    auto fd_k = fd_field_derivative([&](double t) { return quad.at(t).g(); }, 1e-2, 2);
    CHECK(max_abs_diff(fd_k.value, dq.k) < 1e-8 * std::max(1.0, max_abs(dq.k)));
}

TEST_CASE("volume-normalized families") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField m = conformal_perturbed_metric(c, 0.2, 2, 83);
    FieldRng rng(67);
    VariationDirection dir;
    dir.h = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    MetricFamily fam(m, dir, MetricFamily::Mode::VolumeNormalized);

    // volume pinned at c across samples
    for (double t : {-1e-2, -2.5e-3, 1e-3, 5e-3, 1e-2})
        CHECK(volume(fam.at(t)) ==
              doctest::Approx(fam.volume_constant()).epsilon(1e-12));

    // h_eff and k_eff are the family's true derivatives: check against
    // finite differences of the family itself
    auto fd_h = fd_field_derivative([&](double t) { return fam.at(t).g(); }, 1e-2, 1);
    CHECK(max_abs_diff(fd_h.value, fam.h_eff()) < 1e-8 * std::max(1.0, max_abs(fam.h_eff())));
    auto fd_k = fd_field_derivative([&](double t) { return fam.at(t).g(); }, 1e-2, 2);
    CHECK(max_abs_diff(fd_k.value, fam.k_eff()) < 1e-6 * std::max(1.0, max_abs(fam.h_eff())));

    // the tangent is volume-preserving: integral Tr h_eff = 0
    CHECK(std::abs(integrate_scalar(trace(fam.h_eff(), m), m)) < 1e-12);

    // constraint integral vanishes
    CHECK(std::abs(fam.volume_constraint_integral()) < 1e-8);

    // conformal direction h = g: the normalized family is constant
    VariationDirection dg;
    dg.h = m.g();
    MetricFamily cg(m, dg, MetricFamily::Mode::VolumeNormalized);
    CHECK(max_abs(cg.h_eff()) < 1e-12);
    CHECK(max_abs(cg.k_eff()) < 1e-11);
    CHECK(max_abs_diff(cg.at(0.3).g(), m.g()) < 1e-12);
    CHECK(std::abs(cg.volume_constraint_integral()) < 1e-12);

    // zero direction
    VariationDirection dz;
    dz.h = SymTensor2Field(c);
    MetricFamily zf(m, dz, MetricFamily::Mode::VolumeNormalized);
    CHECK(max_abs(zf.h_eff()) == 0.0);
    CHECK(max_abs(zf.k_eff()) == 0.0);
    CHECK(zf.volume_constraint_integral() == 0.0);

    // requires a compact chart
    ChartSpec open = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    SymTensor2Field g(open);
    for (int64_t node = 0; node < g.nodes(); ++node)
        for (int i = 0; i < 2; ++i) g.at(node, i, i) = 1.0;
    VariationDirection od;
    od.h = SymTensor2Field(open);
    CHECK_THROWS_AS(MetricFamily(MetricField::from(std::move(g)), od,
                                 MetricFamily::Mode::VolumeNormalized),
                    chart_error);
}

TEST_CASE("direction draws are deterministic in the seed") {
    ChartSpec c = ChartSpec::unit_torus(2, 16);
    FieldRng a(123), b(123), d(124);
    SymTensor2Field fa = random_bandlimited_sym2(c, 2, 3, 1.0, a);
    SymTensor2Field fb = random_bandlimited_sym2(c, 2, 3, 1.0, b);
    SymTensor2Field fd = random_bandlimited_sym2(c, 2, 3, 1.0, d);
    CHECK(max_abs_diff(fa, fb) == 0.0);
    CHECK(max_abs_diff(fa, fd) > 0.0);
}
