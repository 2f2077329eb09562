#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metriclab/randomfields.hpp"
#include "metriclab/warped.hpp"
#include "test_support.hpp"

using namespace metriclab;
using namespace metriclab::testing;

namespace {

struct FlatCtx {
    ChartSpec chart;
    MetricField m;
    CurvatureBundle b;
    explicit FlatCtx(int dim, int n) : chart(ChartSpec::unit_torus(dim, n)),
                                       m(flat_metric(chart)), b(curvature_bundle(m)) {}
};

}  // namespace

TEST_CASE("flat chart: all curvature vanishes") {
    FlatCtx f(2, 16);
    CHECK(max_abs(f.b.christoffel) < 1e-12);
    CHECK(max_abs(f.b.riemann) < 1e-11);
    CHECK(max_abs(f.b.ricci) < 1e-11);
    CHECK(max_abs(f.b.scalar) < 1e-11);
}

TEST_CASE("conformal 2d metric against the analytic Koszul oracle") {
    // g = e^{2 phi} delta with phi = a sin(2 pi x) cos(2 pi y). The oracle
    // evaluates Gamma^k_ij = d_i phi delta_jk + d_j phi delta_ik - d_k phi delta_ij
    // from the analytic derivatives of phi, never touching the stencils.
    ChartSpec c = ChartSpec::unit_torus(2, 64);
    const double a = 0.2;
    auto phi = [&](auto x) { return a * std::sin(2 * kPi * x[0]) * std::cos(2 * kPi * x[1]); };
    auto dphi = [&](auto x, int k) {
        return k == 0 ? a * 2 * kPi * std::cos(2 * kPi * x[0]) * std::cos(2 * kPi * x[1])
                      : -a * 2 * kPi * std::sin(2 * kPi * x[0]) * std::sin(2 * kPi * x[1]);
    };
    SymTensor2Field g(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        const double w = std::exp(2 * phi(c.coords(node)));
        g.at(node, 0, 0) = w;
        g.at(node, 1, 1) = w;
    }
    MetricField m = MetricField::from(std::move(g));
    Tensor3Field gamma = christoffel(m);

    double worst = 0.0;
    for (int64_t node = 0; node < c.nodes(); ++node) {
        const auto x = c.coords(node);
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = i; j < 2; ++j) {
                    const double oracle = dphi(x, i) * (j == k) + dphi(x, j) * (i == k) -
                                          dphi(x, k) * (i == j);
                    worst = std::max(worst, std::abs(gamma.at(node, k, i, j) - oracle));
                }
    }
    // stencil error of d(e^{2phi}) at N=64 with two harmonics
    CHECK(worst < 5e-5);
    CHECK(gamma.at(5, 0, 0, 0) == doctest::Approx(dphi(c.coords(5), 0)).epsilon(2e-4));
}

TEST_CASE("warped closed forms pin the curvature sign convention") {
    // regression guard: Ric_rr = 2 a (1-a)/r^2 with this sign
    for (double alpha : {1.0, 2.0, -6.0}) {
        WarpedParams p{alpha, 2, 1.0, 2.0};
        ChartSpec wc = warped_chart(p, 64, 8, 6);
        MetricField m = warped_metric(wc, p);
        CurvatureBundle b = curvature_bundle(m);
        Region reg = trusted_interior(wc, {12, 3, 3, 0});
        double worst = 0.0;
        for (int64_t node = 0; node < wc.nodes(); ++node) {
            if (!reg.contains(wc.unravel(node))) continue;
            auto cf = closed_form_curvature(p, wc.coords(node)[0]);
            const double scale = std::abs(cf.scalar) + 1.0;
            worst = std::max({worst,
                              std::abs(b.ricci.at(node, 0, 0) - cf.ric_rr) / scale,
                              std::abs(b.ricci.at(node, 1, 1) - cf.ric_xx) / scale,
                              std::abs(b.scalar.at(node) - cf.scalar) / scale,
                              std::abs(b.christoffel.at(node, 1, 0, 1) - cf.gamma_x_rx) / scale,
                              std::abs(b.christoffel.at(node, 0, 1, 1) - cf.gamma_r_xx) / scale});
        }
        CAPTURE(alpha);
        CHECK(worst < 1e-5);
    }
    // alpha = 1 specifics: Ric_rr = 0, S = -2/r^2
    auto cf = closed_form_curvature(WarpedParams{1.0, 1, 0.5, 3.0}, 1.0);
    CHECK(cf.ric_rr == doctest::Approx(0.0));
    CHECK(cf.ric_xx == doctest::Approx(-1.0));
    CHECK(cf.scalar == doctest::Approx(-2.0));
}

TEST_CASE("gradient") {
    ChartSpec c = ChartSpec::unit_torus(2, 16);
    MetricField m = flat_metric(c);
    CHECK(max_abs(gradient(ScalarField(c), m)) == 0.0);

    ChartSpec oc = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    ScalarField f = scalar_from(oc, [](auto x) { return x[0]; });
    VectorField gf = gradient(f, flat_metric(oc));
    CHECK(max_err(
              [&] {
                  ScalarField comp(oc);
                  for (int64_t n = 0; n < oc.nodes(); ++n) comp.at(n) = gf.at(n, 0);
                  return comp;
              }(),
              [](auto) { return 1.0; }, whole_chart(oc)) < 1e-10);

    // inverse-metric scaling: g = diag(4,1), f = x -> grad = (1/4, 0)
    SymTensor2Field g4(oc);
    for (int64_t n = 0; n < oc.nodes(); ++n) {
        g4.at(n, 0, 0) = 4.0;
        g4.at(n, 1, 1) = 1.0;
    }
    VectorField gf4 = gradient(f, MetricField::from(std::move(g4)));
    CHECK(gf4.at(40, 0) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(std::abs(gf4.at(40, 1)) < 1e-12);
}

TEST_CASE("hessian and laplacian") {
    ChartSpec oc = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0});
    MetricField m = flat_metric(oc);
    Tensor3Field gamma = christoffel(m);

    ScalarField fx2 = scalar_from(oc, [](auto x) { return x[0] * x[0]; });
    SymTensor2Field h = hessian(fx2, m, gamma);
    CHECK(std::abs(h.at(30, 0, 0) - 2.0) < 1e-9);
    CHECK(std::abs(h.at(30, 1, 1)) < 1e-9);
    CHECK(std::abs(h.at(30, 0, 1)) < 1e-9);

    // linear functions are hessian-free
    ScalarField lin = scalar_from(oc, [](auto x) { return 3 * x[0] - 2 * x[1]; });
    CHECK(max_abs(hessian(lin, m, gamma)) < 1e-9);

    // positive-spectrum sign: Delta sin = +(2 pi)^2 sin on the flat torus
    ChartSpec c = ChartSpec::unit_torus(2, 32);
    MetricField mc = flat_metric(c);
    Tensor3Field gc = christoffel(mc);
    ScalarField s = scalar_from(c, [](auto x) { return std::sin(2 * kPi * x[0]); });
    ScalarField ls = laplacian(s, mc, gc);
    CHECK(max_err(ls, [](auto x) { return 4 * kPi * kPi * std::sin(2 * kPi * x[0]); },
                  whole_chart(c)) < 2e-2);
    CHECK(ls.at(3) / s.at(3) > 0.0);  // same sign

    // Delta(x^2) = -2 on an open patch
    ScalarField l2 = laplacian(fx2, m, gamma);
    CHECK(std::abs(l2.at(30) + 2.0) < 1e-9);

    CHECK(max_abs(laplacian(scalar_from(c, [](auto) { return 7.0; }), mc, gc)) < 1e-10);
}

TEST_CASE("divergence identities") {
    ChartSpec c = ChartSpec::unit_torus(2, 32);
    MetricField m = conformal_perturbed_metric(c, 0.2, 2, 3);
    CurvatureBundle b = curvature_bundle(m);

    // the metric is parallel
    CHECK(max_abs(divergence(m.g(), m, b.christoffel)) < 1e-10);

    // delta(f alpha) = -<df, alpha> + f delta(alpha)
    FieldRng rng(9);
    ScalarField f = random_bandlimited_scalar(c, 2, 3, 1.0, rng);
    CovectorField alpha = random_bandlimited_covector(c, 2, 3, 1.0, rng);
    ScalarField lhs = divergence(multiply(f, alpha), m, b.christoffel);
    ScalarField rhs = multiply(f, divergence(alpha, m, b.christoffel));
    accumulate(rhs, -1.0, inner_product(differential(f), alpha, m));
    CHECK(max_abs_diff(lhs, rhs) < 1e-2 * std::max(1.0, max_abs(lhs)));

    // contracted second Bianchi identity under refinement
    std::vector<double> steps, errs;
    for (int n : {16, 32, 64}) {
        ChartSpec cn = ChartSpec::unit_torus(2, n);
        MetricField mn = conformal_perturbed_metric(cn, 0.2, 2, 3);
        CurvatureBundle bn = curvature_bundle(mn);
        CovectorField lhs_n = divergence(bn.ricci, mn, bn.christoffel);
        accumulate(lhs_n, 0.5, differential(bn.scalar));
        steps.push_back(1.0 / n);
        errs.push_back(max_abs(lhs_n));
    }
    CHECK(fit_order(steps, errs) >= 3.0);
}

TEST_CASE("delta_star") {
    ChartSpec oc = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {0.5, 0, 0, 0});
    MetricField m = flat_metric(oc);
    Tensor3Field gamma = christoffel(m);

    // parallel covector on a flat chart
    CovectorField par = covector_from(oc, [](auto, int i) { return i == 0 ? 2.0 : -1.0; });
    CHECK(max_abs(delta_star(par, m, gamma)) < 1e-10);

    // alpha = x dy: delta* alpha = (dx dy + dy dx)/2
    CovectorField xdy = covector_from(oc, [](auto x, int i) { return i == 1 ? x[0] : 0.0; });
    SymTensor2Field ds = delta_star(xdy, m, gamma);
    CHECK(std::abs(ds.at(40, 0, 1) - 0.5) < 1e-10);
    CHECK(std::abs(ds.at(40, 0, 0)) < 1e-10);
    CHECK(std::abs(ds.at(40, 1, 1)) < 1e-10);

    // 2 delta*(Z flat) = L_Z g for random Z on a curved metric
    ChartSpec c = ChartSpec::unit_torus(2, 32);
    MetricField mc = conformal_perturbed_metric(c, 0.2, 2, 5);
    CurvatureBundle bc = curvature_bundle(mc);
    FieldRng rng(12);
    VectorField Z = random_bandlimited_vector(c, 2, 3, 1.0, rng);
    SymTensor2Field lie = lie_derivative_metric(Z, mc, bc.christoffel);
    SymTensor2Field two_ds = scaled(2.0, delta_star(lower_index(Z, mc), mc, bc.christoffel));
    CHECK(max_abs_diff(lie, two_ds) < 1e-12 * std::max(1.0, max_abs(lie)));
}

TEST_CASE("rough laplacian") {
    ChartSpec c = ChartSpec::unit_torus(2, 32);
    MetricField m = flat_metric(c);
    Tensor3Field gamma = christoffel(m);

    // flat reduction to the componentwise laplacian
    SymTensor2Field T = sym2_from(c, [](auto x, int i, int j) {
        return (i == 0 && j == 0) ? std::sin(2 * kPi * x[0]) : 0.0;
    });
    SymTensor2Field rl = rough_laplacian(T, m, gamma);
    double worst = 0.0;
    for (int64_t node = 0; node < c.nodes(); ++node)
        worst = std::max(worst, std::abs(rl.at(node, 0, 0) -
                                         4 * kPi * kPi * T.at(node, 0, 0)));
    CHECK(worst < 2e-2);

    // nabla*nabla g = 0 (parallel metric)
    MetricField mp = conformal_perturbed_metric(c, 0.2, 2, 7);
    CurvatureBundle bp = curvature_bundle(mp);
    CHECK(max_abs(rough_laplacian(mp.g(), mp, bp.christoffel)) < 1e-9);

    // adjointness: integral <nn T, Q> = integral <nabla T, nabla Q>
    FieldRng rng(13);
    SymTensor2Field A = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    SymTensor2Field B = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    const double lhs = integrate_scalar(inner_product(rough_laplacian(A, mp, bp.christoffel), B, mp), mp);
    Tensor3Field nA = cov_deriv(A, mp, bp.christoffel);
    Tensor3Field nB = cov_deriv(B, mp, bp.christoffel);
    ScalarField density(c);
    for (int64_t node = 0; node < c.nodes(); ++node) {
        double acc = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b2 = 0; b2 < 2; ++b2)
                for (int i = 0; i < 2; ++i)
                    for (int k = 0; k < 2; ++k)
                        for (int j = 0; j < 2; ++j)
                            for (int l = 0; l < 2; ++l)
                                acc += mp.ginv().at(node, a, b2) * mp.ginv().at(node, i, k) *
                                       mp.ginv().at(node, j, l) * nA.at(node, a, i, j) *
                                       nB.at(node, b2, k, l);
        density.at(node) = acc;
    }
    const double rhs = integrate_scalar(density, mp);
    CHECK(std::abs(lhs - rhs) < 1e-2 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("curvature action on symmetric tensors") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField flat = flat_metric(c);
    CurvatureBundle fb = curvature_bundle(flat);
    FieldRng rng(14);
    SymTensor2Field T = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    CHECK(max_abs(ring_r(T, fb, flat)) < 1e-9);

    // ring_r(g) = Ric exactly (pure contraction identity)
    MetricField mp = conformal_perturbed_metric(c, 0.2, 2, 21);
    CurvatureBundle bp = curvature_bundle(mp);
    CHECK(max_abs_diff(ring_r(mp.g(), bp, mp), bp.ricci) <
          1e-12 * std::max(1.0, max_abs(bp.ricci)));

    // warped chart: same identity on the trusted interior
    WarpedParams p{-6.0, 2, 1.0, 2.0};
    ChartSpec wc = warped_chart(p, 32, 8, 6);
    MetricField wm = warped_metric(wc, p);
    CurvatureBundle wb = curvature_bundle(wm);
    Region reg = trusted_interior(wc, {6, 3, 3, 0});
    CHECK(max_abs_diff(ring_r(wm.g(), wb, wm), wb.ricci, reg) <
          1e-10 * max_abs(wb.ricci, reg));
}

TEST_CASE("lichnerowicz laplacian") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField flat = flat_metric(c);
    CurvatureBundle fb = curvature_bundle(flat);
    FieldRng rng(15);
    SymTensor2Field T = random_bandlimited_sym2(c, 2, 3, 1.0, rng);

    // flat: reduces to the rough laplacian
    CHECK(max_abs_diff(lichnerowicz(T, fb, flat), rough_laplacian(T, flat, fb.christoffel)) <
          1e-9);

    // lichnerowicz(g) = 0 on any metric (up to the parallel-metric noise)
    MetricField mp = conformal_perturbed_metric(c, 0.2, 2, 23);
    CurvatureBundle bp = curvature_bundle(mp);
    CHECK(max_abs(lichnerowicz(mp.g(), bp, mp)) < 1e-9 * std::max(1.0, max_abs(bp.ricci)));

    // linearity
    SymTensor2Field Q = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    SymTensor2Field lin = lichnerowicz(axpy(2.0, T, scaled(-3.0, Q)), bp, mp);
    SymTensor2Field expect = axpy(2.0, lichnerowicz(T, bp, mp),
                                  scaled(-3.0, lichnerowicz(Q, bp, mp)));
    CHECK(max_abs_diff(lin, expect) < 1e-9 * std::max(1.0, max_abs(expect)));
}

TEST_CASE("lie derivative of the metric") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField flat = flat_metric(c);
    Tensor3Field gamma = christoffel(flat);

    // constant vector fields are Killing on the flat torus
    VectorField k = vector_from(c, [](auto, int i) { return i == 0 ? 1.0 : 2.0; });
    CHECK(max_abs(lie_derivative_metric(k, flat, gamma)) < 1e-11);

    // Z = x d_x on an open flat chart: L_Z g = 2 dx dx
    ChartSpec oc = ChartSpec::open_patch(2, {16, 16, 0, 0}, {1, 1, 0, 0}, {0.5, 0, 0, 0});
    MetricField mo = flat_metric(oc);
    VectorField Z = vector_from(oc, [](auto x, int i) { return i == 0 ? x[0] : 0.0; });
    SymTensor2Field lie = lie_derivative_metric(Z, mo, christoffel(mo));
    CHECK(std::abs(lie.at(40, 0, 0) - 2.0) < 1e-9);
    CHECK(std::abs(lie.at(40, 0, 1)) < 1e-10);
    CHECK(std::abs(lie.at(40, 1, 1)) < 1e-10);

    // (delta T)(Z) = delta(T(.,Z)) + <T, L_Z g>/2
    ChartSpec cf = ChartSpec::unit_torus(2, 64);
    MetricField mp = conformal_perturbed_metric(cf, 0.2, 2, 29);
    CurvatureBundle bp = curvature_bundle(mp);
    FieldRng rng(16);
    SymTensor2Field T = random_bandlimited_sym2(cf, 2, 3, 1.0, rng);
    VectorField W = random_bandlimited_vector(cf, 2, 3, 1.0, rng);
    CovectorField divT = divergence(T, mp, bp.christoffel);
    ScalarField lhs(cf);
    CovectorField TW(cf);
    for (int64_t node = 0; node < cf.nodes(); ++node) {
        double acc = 0.0;
        for (int i = 0; i < 2; ++i) {
            acc += divT.at(node, i) * W.at(node, i);
            double t = 0.0;
            for (int j = 0; j < 2; ++j) t += T.at(node, i, j) * W.at(node, j);
            TW.at(node, i) = t;
        }
        lhs.at(node) = acc;
    }
    ScalarField rhs = divergence(TW, mp, bp.christoffel);
    accumulate(rhs, 0.5,
               inner_product(T, lie_derivative_metric(W, mp, bp.christoffel), mp));
    CHECK(max_abs_diff(lhs, rhs) < 5e-3 * std::max(1.0, max_abs(lhs)));
}

TEST_CASE("riemann tensor symmetries") {
    ChartSpec c = ChartSpec::unit_torus(2, 32);
    MetricField m = conformal_perturbed_metric(c, 0.2, 2, 31);
    CurvatureBundle b = curvature_bundle(m);
    const int n = 2;

    double antisym = 0.0, bianchi = 0.0, scale = max_abs(b.riemann);
    for (int64_t node = 0; node < c.nodes(); node += 7)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        antisym = std::max(antisym,
                                           std::abs(b.riemann.at(node, l, k, i, j) +
                                                    b.riemann.at(node, l, k, j, i)));
                        bianchi = std::max(bianchi,
                                           std::abs(b.riemann.at(node, l, k, i, j) +
                                                    b.riemann.at(node, l, i, j, k) +
                                                    b.riemann.at(node, l, j, k, i)));
                    }
    CHECK(antisym < 1e-11 * std::max(1.0, scale));   // exact by construction
    CHECK(bianchi < 5e-3 * std::max(1.0, scale));    // stencil-order identity
}

TEST_CASE("hessian is exactly symmetric and laplacian is its negative trace") {
    ChartSpec c = ChartSpec::unit_torus(2, 24);
    MetricField m = conformal_perturbed_metric(c, 0.2, 2, 37);
    Tensor3Field gamma = christoffel(m);
    FieldRng rng(17);
    ScalarField f = random_bandlimited_scalar(c, 2, 3, 1.0, rng);
    SymTensor2Field h = hessian(f, m, gamma);  // packed storage: symmetric per se
    ScalarField l = laplacian(f, m, gamma);
    ScalarField tr = trace(h, m);
    accumulate(tr, 1.0, l);
    CHECK(max_abs(tr) < 1e-12 * std::max(1.0, max_abs(l)));
}
