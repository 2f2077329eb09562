#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "metriclab/fieldio.hpp"
#include "metriclab/oracle.hpp"
#include "metriclab/randomfields.hpp"
#include "test_support.hpp"

using namespace metriclab;
using namespace metriclab::testing;

TEST_CASE("chart validation") {
    CHECK_THROWS_AS(ChartSpec::unit_torus(1, 16), chart_error);
    CHECK_THROWS_AS(ChartSpec::unit_torus(5, 16), chart_error);
    CHECK_THROWS_AS(ChartSpec::unit_torus(2, 4), chart_error);  // resolution below 8
    ChartSpec bad = ChartSpec::unit_torus(2, 16);
    bad.stencil_order = 5;
    CHECK_THROWS_AS(bad.validate(), chart_error);
    bad.stencil_order = 4;
    bad.extent[0] = -1.0;
    CHECK_THROWS_AS(bad.validate(), chart_error);

    ChartSpec open = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    CHECK(open.spacing(0) == doctest::Approx(1.0 / 15));
    CHECK(ChartSpec::unit_torus(2, 16).spacing(0) == doctest::Approx(1.0 / 16));
}

TEST_CASE("derivative of constants vanishes") {
    for (Boundary b : {Boundary::Periodic, Boundary::OpenPatch}) {
        ChartSpec c = b == Boundary::Periodic
                          ? ChartSpec::unit_torus(2, 16)
                          : ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
        ScalarField f = scalar_from(c, [](auto) { return 3.25; });
        for (int axis : {0, 1})
            for (int order : {1, 2})
                CHECK(max_abs(partial_derivative(f, axis, order)) < 1e-11);
    }
}

TEST_CASE("derivative errors") {
    ChartSpec c = ChartSpec::unit_torus(2, 16);
    ScalarField f(c);
    CHECK_THROWS_AS(partial_derivative(f, 2, 1), chart_error);
    CHECK_THROWS_AS(partial_derivative(f, 0, 3), chart_error);
}

TEST_CASE("sin derivative hits the stencil order on periodic charts") {
    // rel error ~ (2 pi h)^4 / 30 for order 4
    std::vector<double> steps, errs;
    for (int n : {16, 32, 64}) {
        ChartSpec c = ChartSpec::unit_torus(2, n);
        ScalarField f = scalar_from(c, [](auto x) { return std::sin(2 * kPi * x[0]); });
        ScalarField d = partial_derivative(f, 0, 1);
        double e = max_err(
            d, [](auto x) { return 2 * kPi * std::cos(2 * kPi * x[0]); }, whole_chart(c));
        steps.push_back(1.0 / n);
        errs.push_back(e);
    }
    CHECK(errs.back() < 1e-4);
    CHECK(fit_order(steps, errs) >= 3.5);
}

TEST_CASE("order-6 stencils converge at order 6") {
    std::vector<double> steps, errs;
    for (int n : {16, 32, 64}) {
        ChartSpec c = ChartSpec::unit_torus(2, n, 6);
        ScalarField f = scalar_from(c, [](auto x) { return std::sin(2 * kPi * x[0]); });
        double e = max_err(
            partial_derivative(f, 0, 1),
            [](auto x) { return 2 * kPi * std::cos(2 * kPi * x[0]); }, whole_chart(c));
        steps.push_back(1.0 / n);
        errs.push_back(e);
    }
    CHECK(fit_order(steps, errs) >= 5.5);
}

TEST_CASE("open patch: r^2 second derivative exact on the interior") {
    ChartSpec c = ChartSpec::open_patch(2, {24, 8, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    ScalarField f = scalar_from(c, [](auto x) { return x[0] * x[0]; });
    ScalarField d2 = partial_derivative(f, 0, 2);
    // exact for polynomials up to the window degree, everywhere
    CHECK(max_err(d2, [](auto) { return 2.0; }, whole_chart(c)) < 1e-9);
    ScalarField d1 = partial_derivative(f, 0, 1);
    CHECK(max_err(d1, [](auto x) { return 2.0 * x[0]; }, whole_chart(c)) < 1e-10);
}

TEST_CASE("mixed partials commute") {
    ChartSpec c = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    FieldRng rng(3);
    ScalarField f = scalar_from(c, [](auto x) {
        return std::sin(2 * x[0] + 1) * std::cos(3 * x[1]) + x[0] * x[1] * x[1];
    });
    ScalarField dxy = partial_derivative(partial_derivative(f, 0, 1), 1, 1);
    ScalarField dyx = partial_derivative(partial_derivative(f, 1, 1), 0, 1);
    CHECK(max_abs_diff(dxy, dyx) < 1e-10);
}

TEST_CASE("integration on the unit torus") {
    ChartSpec c = ChartSpec::unit_torus(2, 16);
    MetricField flat = flat_metric(c);
    ScalarField one = scalar_from(c, [](auto) { return 1.0; });

    CHECK(integrate_scalar(one, flat) == doctest::Approx(1.0).epsilon(1e-14));

    // volume scaling: g = c * identity integrates to c^{n/2}
    SymTensor2Field g2(c);
    for (int64_t node = 0; node < g2.nodes(); ++node)
        for (int i = 0; i < 2; ++i) g2.at(node, i, i) = 2.5;
    CHECK(integrate_scalar(one, g2) == doctest::Approx(2.5).epsilon(1e-14));

    ScalarField s = scalar_from(c, [](auto x) { return std::sin(2 * kPi * x[0]); });
    CHECK(std::abs(integrate_scalar(s, flat)) < 1e-12);
}

TEST_CASE("discrete divergence theorem: integral of a derivative vanishes") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField flat = flat_metric(c);
    FieldRng rng(11);
    ScalarField f = random_bandlimited_scalar(c, 4, 5, 2.0, rng);
    ScalarField df = partial_derivative(f, 0, 1);
    CHECK(std::abs(integrate_scalar(df, flat)) < 1e-12 * max_abs(f));
}

TEST_CASE("integration rejects open charts and bad metrics") {
    ChartSpec open = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    ScalarField f(open);
    SymTensor2Field g(open);
    for (int64_t node = 0; node < g.nodes(); ++node)
        for (int i = 0; i < 2; ++i) g.at(node, i, i) = 1.0;
    CHECK_THROWS_AS(integrate_scalar(f, g), chart_error);

    ChartSpec c = ChartSpec::unit_torus(2, 16);
    SymTensor2Field bad(c);  // zero matrix: not positive definite
    ScalarField h(c);
    CHECK_THROWS_AS(integrate_scalar(h, bad), numeric_error);
}

TEST_CASE("binary round trip preserves every bit") {
    ChartSpec c = ChartSpec::unit_torus(3, 8);
    FieldRng rng(5);
    SymTensor2Field f = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    std::stringstream buf;
    write_field_binary(f, buf);
    RawField r = read_field_binary(buf);
    REQUIRE(r.dim == 3);
    REQUIRE(r.ncomp == f.ncomp());
    for (int a = 0; a < 3; ++a) REQUIRE(r.resolution[a] == 8);
    auto raw = f.raw();
    REQUIRE(r.values.size() == raw.size());
    for (size_t i = 0; i < raw.size(); ++i) CHECK(r.values[i] == raw[i]);
}

TEST_CASE("csv export carries header and node rows") {
    ChartSpec c = ChartSpec::unit_torus(2, 8);
    ScalarField f = scalar_from(c, [](auto x) { return x[0]; });
    std::stringstream buf;
    write_field_csv(f, buf);
    std::string header;
    std::getline(buf, header);
    CHECK(header == "i0,i1,x0,x1,c0");
    int rows = 0;
    std::string line;
    while (std::getline(buf, line)) ++rows;
    CHECK(rows == 64);
}

TEST_CASE("trusted interior margins") {
    ChartSpec open = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    Region r = trusted_interior(open, 2);
    CHECK(r.lo[0] == 2);
    CHECK(r.hi[0] == 14);
    CHECK_THROWS_AS(trusted_interior(open, 8), chart_error);
    // periodic charts have no edges to trim
    Region p = trusted_interior(ChartSpec::unit_torus(2, 16), 2);
    CHECK(p.lo[0] == 0);
    CHECK(p.hi[0] == 16);
}
