#include <doctest.h>

#include <cmath>

#include "ytf/bubble.hpp"
#include "ytf/energy.hpp"

using namespace ytf;
using namespace ytf::energy;

namespace {

gauge::GaugeSolution e0_solution(double eps, double delta) {
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    return gauge::solve_V(e0.scaled(rat(1, 5)), eps, delta, gauge::build_ansatz(6, 3));
}

// generic admissible data: nonzero gauge field and xi-flux, unlike E0
CoeffSet generic_instance() {
    static CoeffSet c = sym::AdmissibleSpace(6, 2).random_element(90210, 14);
    return c;
}

}  // namespace

TEST_CASE("metric_eval: flat data, normal form, linearisation") {
    const int n = 6;
    CoeffSet zero(n, 2);
    MetricField flat(zero, 0.0, 1.0);
    double x[6] = {0.1, 0.2, -0.1, 0.05, 0.0, 0.3};
    auto jet = flat.eval(x);
    CHECK(jet.R == 0.0);
    CHECK(jet.g.isIdentity(0.0));

    CoeffSet e0 = CoeffSet::standard_quadratic(n);
    MetricField m(e0, 0.05, 1.0);
    auto j2 = m.eval(x);
    // conformal Fermi normal form: g_in = delta_in exactly
    for (int i = 0; i < n; ++i)
        CHECK(j2.g(i, n - 1) == doctest::Approx(i == n - 1 ? 1.0 : 0.0).epsilon(1e-15));
    // trace-free exponent: det g = 1 exactly
    CHECK(j2.det == doctest::Approx(1.0).epsilon(1e-12));
    // boundary normal form: totally geodesic
    double xb[6] = {0.2, -0.1, 0.15, 0.0, 0.1, 0.0};
    auto jb = m.eval(xb);
    CHECK(std::abs(jb.mean_curvature) < 1e-8);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) CHECK(std::abs(jb.dg[n - 1](i, k)) < 1e-8);
}

TEST_CASE("metric_eval: scalar curvature linear term") {
    const int n = 6;
    CoeffSet e0 = CoeffSet::standard_quadratic(n);
    double x[6] = {0.1, 0.05, -0.08, 0.12, -0.02, 0.07};
    // (R_g - scale * sum ddH)/scale -> 0 as scale -> 0
    double prev = -1;
    for (double scale : {0.2, 0.1, 0.05}) {
        MetricField m(e0, scale, 1.0);
        auto jet = m.eval(x);
        const double lin_gap = std::abs(jet.R - jet.R_lin) / scale;
        if (prev >= 0) CHECK(lin_gap < prev);
        prev = lin_gap;
    }
}

TEST_CASE("metric_eval FD order: halving the step divides the error by ~4") {
    const int n = 6;
    CoeffSet e0 = CoeffSet::standard_quadratic(n);
    MetricField m(e0, 0.3, 1.0);
    double x[6] = {0.25, 0.1, -0.2, 0.15, 0.05, 0.3};
    // reference step small enough for convergence but above the roundoff
    // blow-up of second differences (~eps_machine / h^2)
    const double r_fine = m.scalar_curvature(x, 5e-4);
    const double e1 = std::abs(m.scalar_curvature(x, 8e-3) - r_fine);
    const double e2 = std::abs(m.scalar_curvature(x, 4e-3) - r_fine);
    CHECK(e2 < e1);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("analytic exponential-derivative jet agrees with finite differences") {
    const int n = 6;
    CoeffSet cg = sym::AdmissibleSpace(n, 2).random_element(90210, 14);
    MetricField m(cg, 0.3, 1.0);
    Rng rng(77);
    for (int t = 0; t < 12; ++t) {
        double x[6];
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-0.9, 0.9);
        x[5] = std::abs(x[5]);
        auto lt = m.light(x);
        auto jet = m.eval(x, 4e-4);
        // the FD route itself carries ~1e-5 error at this step size
        CHECK(lt.R == doctest::Approx(jet.R).epsilon(3e-4).scale(std::abs(jet.R) + 1e-2));
        CHECK((lt.g - jet.g).norm() < 1e-12);
        CHECK(lt.det == doctest::Approx(jet.det).epsilon(1e-10));
    }
}

TEST_CASE("yamabe energy of the flat bubble equals the hemisphere constant") {
    const int n = 6;
    CoeffSet zero(n, 2);
    MetricField flat(zero, 0.0, 1.0);
    const double eps = 0.7;
    bubble::BubbleParams bp{n, eps};
    ScalarField v{
        [&](const double* x) { return bubble::u_value(bp, x); },
        [&](const double* x, double* g) { bubble::u_gradient(bp, x, g); }};
    quad::QuadratureSpec q;
    q.samples = 400;
    auto res = yamabe_energy(v, flat, -1.0, eps, q);
    const double Y = bubble::sphere_constant(n).value;
    CHECK(std::abs(res.energy - Y) <= std::max(3.0 * res.sigma, 2e-6 * Y));
    // scale invariance of the quotient
    ScalarField v2{
        [&](const double* x) { return 2.0 * bubble::u_value(bp, x); },
        [&](const double* x, double* g) {
            bubble::u_gradient(bp, x, g);
            for (int i = 0; i < n; ++i) g[i] *= 2.0;
        }};
    auto res2 = yamabe_energy(v2, flat, -1.0, eps, q);
    CHECK(res2.energy == doctest::Approx(res.energy).epsilon(1e-12));
}

TEST_CASE("j decomposition: zero data vanishes; flux forms agree; sum consistency") {
    const int n = 6;
    CoeffSet zero(n, 2);
    auto sol0 = gauge::solve_V(zero, 0.5, 1.0, gauge::build_ansatz(n, 3));
    MetricField flat(zero, 0.0, 1.0);
    quad::QuadratureSpec q;
    q.samples = 500;
    auto bd0 = j_decomposition(sol0, flat, q);
    for (int t = 1; t <= 7; ++t) CHECK(bd0.J[t].value == 0.0);

    // generic admissible data so that V, w and the fluxes are all nonzero
    CoeffSet cg = generic_instance().scaled(rat(1, 4));
    auto sol = gauge::solve_V(cg, 0.25, 1.0, gauge::build_ansatz(n, 3));
    double vnorm = 0;
    for (double v : sol.coef) vnorm += v * v;
    REQUIRE(vnorm > 1e-12);
    MetricField metric(generic_instance(), 0.25, 1.0);
    quad::QuadratureSpec q2;
    q2.samples = 3000;
    auto bd = j_decomposition(sol, metric, q2);
    REQUIRE(std::abs(bd.J[1].value) > 0);
    // J1 volume form vs boundary flux
    CHECK(std::abs(bd.J[1].value - bd.J1_flux.value) <=
          3.0 * (bd.J[1].sigma + bd.J1_flux.sigma) + 1e-8 * std::abs(bd.J[1].value) + 1e-14);
    // J3 volume form vs boundary flux
    CHECK(std::abs(bd.J[3].value - bd.J3_flux.value) <=
          3.0 * (bd.J[3].sigma + bd.J3_flux.sigma) + 1e-8 * std::abs(bd.J[3].value) + 1e-14);
    // direct integrand equals flat parts plus the J sum (pointwise identity)
    CHECK(std::abs(bd.direct_minus_sum.value) <=
          3.0 * bd.direct_minus_sum.sigma + 1e-9);
}

TEST_CASE("integrated estimate: zero data, E0 sweep positivity, scaling") {
    const int n = 6;
    quad::QuadratureSpec q;
    q.samples = 2000;
    CoeffSet zero(n, 2);
    auto sol0 = gauge::solve_V(zero, 0.1, 0.25, gauge::build_ansatz(n, 3));
    auto est0 = integrated_estimate(sol0, q);
    CHECK(est0.lhs == 0.0);
    CHECK(est0.positive_part == 0.0);

    CoeffSet e0 = CoeffSet::standard_quadratic(n).scaled(rat(1, 5));
    const double delta = 0.25;
    double lambda_prev = 0;
    for (double frac : {0.5, 0.25, 0.125}) {
        auto sol = gauge::solve_V(e0, delta * frac, delta, gauge::build_ansatz(n, 3));
        auto est = integrated_estimate(sol, q);
        CHECK(est.lambda_hat > 0);
        if (lambda_prev > 0)
            CHECK(est.lambda_hat == doctest::Approx(lambda_prev).epsilon(2.0));
        lambda_prev = est.lambda_hat;
    }
    // quadratic homogeneity: H -> 2H scales lhs by 4
    auto solA = gauge::solve_V(e0, 0.1, delta, gauge::build_ansatz(n, 3));
    auto solB = gauge::solve_V(e0.scaled(rat(2)), 0.1, delta, gauge::build_ansatz(n, 3));
    auto estA = integrated_estimate(solA, q);
    auto estB = integrated_estimate(solB, q);
    CHECK(estB.lhs == doctest::Approx(4.0 * estA.lhs).epsilon(1e-6));
    // delta < 2 eps rejected
    auto solC = gauge::solve_V(e0, 0.2, 0.25, gauge::build_ansatz(n, 3));
    CHECK_THROWS_AS(integrated_estimate(solC, q), std::invalid_argument);
}

TEST_CASE("annulus Q bound: guard, boundedness, scale invariance") {
    const int n = 6;
    quad::QuadratureSpec q;
    q.samples = 1500;
    CoeffSet zero(n, 2);
    auto sol0 = gauge::solve_V(zero, 0.5, 1.0, gauge::build_ansatz(n, 3));
    auto qb0 = annulus_Q_bound(sol0, 1.0, q);
    CHECK(qb0.flat);
    CHECK(qb0.ratio == 0.0);

    CoeffSet e0 = CoeffSet::standard_quadratic(n).scaled(rat(1, 4));
    const double eps = 0.25;
    auto sol = gauge::solve_V(e0, eps, 8.0, gauge::build_ansatz(n, 3));
    std::vector<double> ratios;
    for (double r : {eps, 2 * eps, 4 * eps, 8 * eps})
        ratios.push_back(annulus_Q_bound(sol, r, q).ratio);
    double lo = ratios[0], hi = ratios[0];
    for (double v : ratios) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo > 0);
    CHECK(hi / lo < 10.0);
    CHECK_THROWS_AS(annulus_Q_bound(sol, 0.5 * eps, q), std::invalid_argument);

    // ratio invariant under H -> tH
    auto sol2 = gauge::solve_V(e0.scaled(rat(3)), eps, 8.0, gauge::build_ansatz(n, 3));
    CHECK(annulus_Q_bound(sol2, 2 * eps, q).ratio ==
          doctest::Approx(annulus_Q_bound(sol, 2 * eps, q).ratio).epsilon(1e-6));
}

TEST_CASE("pointwise identity scan: E0 closes exactly; generic data scales like eps^{n-2}") {
    const int n = 6;
    quad::QuadratureSpec q;
    q.samples = 3000;
    const double delta = 0.25;
    // E0: the radial contraction H x vanishes identically, V = 0 and the
    // identity holds with zero divergence remainder
    CoeffSet e0 = CoeffSet::standard_quadratic(n).scaled(rat(1, 5));
    auto scan0 = pointwise_identity_scan(e0, delta, {delta / 8, delta / 16}, 3, q);
    CHECK(scan0.identically_zero);

    // generic admissible data: nonzero flux, slope n-2
    CoeffSet cg = generic_instance().scaled(rat(1, 4));
    auto scan = pointwise_identity_scan(cg, delta, {delta / 8, delta / 16, delta / 32}, 3, q);
    CHECK_FALSE(scan.identically_zero);
    CHECK(std::abs(scan.slope - (n - 2.0)) <= 0.3);
}
