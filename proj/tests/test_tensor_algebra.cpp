#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metriclab/randomfields.hpp"
#include "metriclab/warped.hpp"
#include "test_support.hpp"

using namespace metriclab;
using namespace metriclab::testing;

namespace {

MetricField diag_metric(const ChartSpec& c, double a, double b) {
    SymTensor2Field g(c);
    for (int64_t node = 0; node < g.nodes(); ++node) {
        g.at(node, 0, 0) = a;
        g.at(node, 1, 1) = b;
    }
    return MetricField::from(std::move(g));
}

}  // namespace

TEST_CASE("metric inversion") {
    ChartSpec c = ChartSpec::unit_torus(2, 8);

    MetricField id = flat_metric(c);
    CHECK(id.ginv().at(0, 0, 0) == doctest::Approx(1.0));
    CHECK(id.sqrt_det().at(0) == doctest::Approx(1.0));

    MetricField d = diag_metric(c, 4.0, 9.0);
    CHECK(d.ginv().at(0, 0, 0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(d.ginv().at(0, 1, 1) == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK(d.sqrt_det().at(0) == doctest::Approx(6.0).epsilon(1e-14));

    // warped diagonal: inverse and volume density in closed form
    WarpedParams p{1.5, 2, 1.0, 2.0};
    ChartSpec wc = warped_chart(p, 16, 8);
    MetricField w = warped_metric(wc, p);
    for (int64_t node = 0; node < wc.nodes(); node += 97) {
        const double r = wc.coords(node)[0];
        CHECK(w.ginv().at(node, 1, 1) ==
              doctest::Approx(std::pow(r, -2 * p.alpha)).epsilon(1e-12));
        CHECK(w.sqrt_det().at(node) ==
              doctest::Approx(std::pow(r, 2 * p.alpha)).epsilon(1e-12));
    }

    // g * ginv = identity pointwise
    FieldRng rng(2);
    MetricField pm = conformal_perturbed_metric(ChartSpec::unit_torus(3, 8), 0.3, 2, 9);
    for (int64_t node = 0; node < pm.chart().nodes(); node += 53)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k)
                    acc += pm.g().at(node, i, k) * pm.ginv().at(node, k, j);
                CHECK(acc == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            }
}

TEST_CASE("non-positive-definite metric reports node coordinates") {
    ChartSpec c = ChartSpec::unit_torus(2, 8);
    SymTensor2Field g(c);
    for (int64_t node = 0; node < g.nodes(); ++node) {
        g.at(node, 0, 0) = 1.0;
        g.at(node, 1, 1) = 1.0;
    }
    g.at(c.node_index({3, 5, 0, 0}), 1, 1) = -2.0;
    try {
        MetricField::from(std::move(g));
        FAIL("expected numeric_error");
    } catch (const numeric_error& e) {
        CHECK(std::string(e.what()).find("(3,5)") != std::string::npos);
    }
}

TEST_CASE("inner products and traces") {
    ChartSpec c = ChartSpec::unit_torus(2, 8);
    MetricField m = flat_metric(c);
    FieldRng rng(7);
    SymTensor2Field h = random_bandlimited_sym2(c, 2, 3, 1.0, rng);

    // <g,g> = n
    CHECK(max_err(inner_product(m.g(), m.g(), m), [](auto) { return 2.0; },
                  whole_chart(c)) < 1e-13);

    // <g,h> = Tr h, identical contractions
    CHECK(max_abs_diff(inner_product(m.g(), h, m), trace(h, m)) < 1e-13);

    // flat diag pairing
    SymTensor2Field T(c), Q(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        T.at(node, 0, 0) = 2.0;
        T.at(node, 1, 1) = 3.0;
        Q.at(node, 0, 0) = 5.0;
        Q.at(node, 1, 1) = 7.0;
    }
    CHECK(inner_product(T, Q, m).at(0) == doctest::Approx(2 * 5 + 3 * 7));

    // Tr g = n, Tr(c g) = c n
    CHECK(trace(m.g(), m).at(0) == doctest::Approx(2.0));
    CHECK(trace(scaled(2.5, m.g()), m).at(0) == doctest::Approx(5.0));

    // symmetry of the pairing
    FieldRng rng2(8);
    SymTensor2Field A = random_bandlimited_sym2(c, 2, 3, 1.0, rng2);
    CHECK(max_abs_diff(inner_product(A, h, m), inner_product(h, A, m)) < 1e-13);
}

TEST_CASE("warped trace reproduces the scalar-curvature closed form") {
    WarpedParams p{-6.0, 2, 1.0, 2.0};
    ChartSpec wc = warped_chart(p, 32, 8, 6);
    MetricField m = warped_metric(wc, p);
    SymTensor2Field ric(wc);  // closed-form ricci
    for (int64_t node = 0; node < wc.nodes(); ++node) {
        auto cf = closed_form_curvature(p, wc.coords(node)[0]);
        ric.at(node, 0, 0) = cf.ric_rr;
        ric.at(node, 1, 1) = cf.ric_xx;
        ric.at(node, 2, 2) = cf.ric_xx;
    }
    ScalarField s = trace(ric, m);
    double worst = 0;
    for (int64_t node = 0; node < wc.nodes(); node += 41) {
        const double r = wc.coords(node)[0];
        worst = std::max(worst, std::abs(s.at(node) - 2 * p.alpha * (2 - 3 * p.alpha) / (r * r)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("compose") {
    ChartSpec c = ChartSpec::unit_torus(2, 8);
    MetricField m = flat_metric(c);
    FieldRng rng(4);
    SymTensor2Field h = random_bandlimited_sym2(c, 2, 3, 1.0, rng);

    // metric acts as identity
    CHECK(max_abs_diff(compose(h, m.g(), m), h) < 1e-13);
    CHECK(max_abs_diff(compose(m.g(), m.g(), m), m.g()) < 1e-13);

    // diagonal squares
    SymTensor2Field D(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        D.at(node, 0, 0) = 2.0;
        D.at(node, 1, 1) = -3.0;
    }
    SymTensor2Field DD = compose(D, D, m);
    CHECK(DD.at(0, 0, 0) == doctest::Approx(4.0));
    CHECK(DD.at(0, 1, 1) == doctest::Approx(9.0));
    CHECK(DD.at(0, 0, 1) == doctest::Approx(0.0));

    // <g, h o h> = |h|^2
    CHECK(max_abs_diff(inner_product(m.g(), compose(h, h, m), m),
                       inner_product(h, h, m)) < 1e-12);

    // <T o Q, g> = <T, Q>
    FieldRng rng2(5);
    SymTensor2Field Q = random_bandlimited_sym2(c, 2, 3, 1.0, rng2);
    CHECK(max_abs_diff(inner_product(compose(h, Q, m), m.g(), m),
                       inner_product(h, Q, m)) < 1e-12);
}

TEST_CASE("symmetrize") {
    ChartSpec c = ChartSpec::unit_torus(2, 8);
    Rank2Field T(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        T.at(node, 0, 1) = 1.0;  // delta_i0 delta_j1
    }
    SymTensor2Field s = symmetrize(T);
    CHECK(s.at(0, 0, 1) == doctest::Approx(0.5));
    CHECK(s.at(0, 0, 0) == doctest::Approx(0.0));

    // antisymmetric input vanishes
    Rank2Field A(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        A.at(node, 0, 1) = 2.0;
        A.at(node, 1, 0) = -2.0;
    }
    CHECK(max_abs(symmetrize(A)) < 1e-15);

    // idempotent on symmetric input
    Rank2Field S(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        S.at(node, 0, 1) = 3.0;
        S.at(node, 1, 0) = 3.0;
        S.at(node, 0, 0) = -1.0;
    }
    SymTensor2Field ss = symmetrize(S);
    CHECK(ss.at(0, 0, 1) == doctest::Approx(3.0));
    CHECK(ss.at(0, 0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("raise then lower is the identity") {
    ChartSpec c = ChartSpec::unit_torus(3, 8);
    MetricField m = conformal_perturbed_metric(c, 0.3, 2, 17);
    FieldRng rng(6);
    CovectorField a = random_bandlimited_covector(c, 2, 3, 1.0, rng);
    CovectorField back = lower_index(raise_index(a, m), m);
    CHECK(max_abs_diff(a, back) < 1e-12 * std::max(1.0, max_abs(a)));
}
