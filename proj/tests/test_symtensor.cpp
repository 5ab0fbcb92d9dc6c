#include <doctest.h>

#include <cmath>

#include "ytf/rng.hpp"
#include "ytf/symtensor.hpp"

using namespace ytf;
using namespace ytf::sym;

TEST_CASE("empty coeffset gives the zero tensor") {
    CoeffSet c(6, 2);
    PolyTensor H = make_H(c);
    CHECK(H.is_zero());
    auto rep = check_admissible(H);
    CHECK(rep.all_pass());
    CHECK(compute_A(H).is_zero());
    CHECK(compute_Z(H).is_zero());
}

TEST_CASE("degree cap rejection names the offending entry") {
    CoeffSet c(6, 2);
    CHECK_THROWS_WITH_AS(c.add(0, 0, MultiIndex(6, {3, 0, 0, 0, 0, 0}), rat(1)),
                         doctest::Contains("degree out of range"), std::invalid_argument);
    CHECK_THROWS_AS(c.add(0, 0, MultiIndex(6, {1, 0, 0, 0, 0, 0}), rat(1)),
                    std::invalid_argument);
}

TEST_CASE("standard quadratic example is admissible and Weyl-active") {
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    PolyTensor H = make_H(e0);
    // symbolic oracle: expand the four blocks by hand
    // H_11 = x2^2 - x3^2, H_22 = x1^2 - x4^2, H_33 = x4^2 - x1^2, H_44 = x3^2 - x2^2
    Poly x1 = Poly::variable(6, 0), x2 = Poly::variable(6, 1), x3 = Poly::variable(6, 2),
         x4 = Poly::variable(6, 3);
    CHECK(H.at(0, 0) == x2 * x2 - x3 * x3);
    CHECK(H.at(1, 1) == x1 * x1 - x4 * x4);
    CHECK(H.at(0, 1) == -(x1 * x2));
    CHECK(H.at(0, 2) == x1 * x3);
    CHECK(H.trace().is_zero());

    auto rep = check_admissible(H);
    CHECK(rep.normal_rows_zero);
    CHECK(rep.boundary_radial_zero);
    CHECK(rep.boundary_normal_deriv_zero);
    CHECK(rep.trace_zero);

    // E0 is divergence-free with harmonic entries, so A vanishes identically;
    // Z keeps a nonzero entry (the example is Weyl-active). A single block
    // B(1,2) alone has nonzero divergence and exercises A.
    PolyTensor A = compute_A(H);
    CHECK(A.is_zero());
    {
        CoeffSet one_block(6, 2);
        one_block.add(0, 0, MultiIndex(6, {0, 2, 0, 0, 0, 0}), rat(1));
        one_block.add(1, 1, MultiIndex(6, {2, 0, 0, 0, 0, 0}), rat(1));
        one_block.add(0, 1, MultiIndex(6, {1, 1, 0, 0, 0, 0}), rat(-1));
        CHECK_FALSE(compute_A(make_H(one_block)).is_zero());
    }
    PolyTensor Z = compute_Z(H, A);
    CHECK_FALSE(Z.is_zero());
    // antisymmetry i<->j as polynomials
    for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) CHECK((Z.at(0, 1, k, l) + Z.at(1, 0, k, l)).is_zero());
}

TEST_CASE("single h_11 x1^2 entry fails the boundary radial check") {
    CoeffSet c(6, 2);
    c.add(0, 0, MultiIndex(6, {2, 0, 0, 0, 0, 0}), rat(1));
    auto rep = check_admissible(make_H(c));
    CHECK_FALSE(rep.boundary_radial_zero);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("perturbing one off-diagonal entry of E0 breaks the radial identity") {
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    // double the H_34 entry (0-based (2,3))
    e0.add(2, 3, MultiIndex(6, {0, 0, 1, 1, 0, 0}), rat(-1));
    auto rep = check_admissible(make_H(e0));
    CHECK_FALSE(rep.boundary_radial_zero);
}

TEST_CASE("divergence identity holds exactly for E0 and random admissible data") {
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    CHECK(divergence_identity_residual(make_H(e0)).is_zero());

    for (int n : {6, 8}) {
        const int d = (n - 2) / 2;
        AdmissibleSpace space(n, d);
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            CoeffSet c = space.random_element(seed, 12);
            PolyTensor H = make_H(c);
            CHECK(check_admissible(H).all_pass());
            CHECK(divergence_identity_residual(H).is_zero());
            // Lemma: boundary A_in vanishes for tangential i
            PolyTensor A = compute_A(H);
            for (int i = 0; i < n - 1; ++i)
                CHECK(A.at(i, n - 1).substitute(n - 1, Rational(0)).is_zero());
        }
    }
}

TEST_CASE("z kernel is trivial for (6,2)") {
    auto kernel = z_kernel(6, 2);
    CHECK(kernel.empty());
}

TEST_CASE("z map is injective on the E0 span") {
    std::vector<CoeffSet> span{CoeffSet::standard_quadratic(6)};
    CHECK(z_rank_on_span(span) == 1);
}

TEST_CASE("ball moments: closed form vs known values and Monte Carlo") {
    // volume of the unit 6-ball = pi^3/6
    MultiIndex zero(6);
    const double vol6 = ball_moment(1.0, std::vector<double>(6, 0.0), zero);
    CHECK(vol6 == doctest::Approx(std::pow(M_PI, 3) / 6.0).epsilon(1e-12));
    // odd centered exponent vanishes
    CHECK(ball_moment(1.0, std::vector<double>(6, 0.0), MultiIndex(6, {1, 0, 0, 0, 0, 0})) == 0.0);
    // scaling law for x_1^2
    const MultiIndex x12(6, {2, 0, 0, 0, 0, 0});
    const double m1 = ball_moment(1.0, std::vector<double>(6, 0.0), x12);
    const double m2 = ball_moment(2.0, std::vector<double>(6, 0.0), x12);
    CHECK(m2 == doctest::Approx(std::pow(2.0, 8) * m1).epsilon(1e-12));

    // exact version agrees with the float version on the K1 ball
    const Rational q = ball_moment_exact(6, rat(1, 4), rat(3, 2), x12);
    std::vector<double> center(6, 0.0);
    center[5] = 1.5;
    CHECK(q.get_d() * std::pow(M_PI, 3) ==
          doctest::Approx(ball_moment(0.25, center, x12)).epsilon(1e-12));

    // Monte-Carlo cross-check within 4 standard errors on random cases
    Rng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 4 + 2 * rng.uniform_int(0, 1);  // 4 or 6
        MultiIndex alpha(n);
        for (int i = 0; i < n; ++i) alpha.e[i] = static_cast<uint8_t>(rng.uniform_int(0, 2));
        const double rho = 0.5 + rng.uniform();
        std::vector<double> c(n);
        for (int i = 0; i < n; ++i) c[i] = rng.uniform(-0.5, 0.5);
        const double exact = ball_moment(rho, c, alpha);
        // MC over the ball
        const long mc_n = 40000;
        Kahan acc, acc2;
        for (long s = 0; s < mc_n; ++s) {
            auto p = rng.ball_point(n);
            double val = 1.0;
            for (int i = 0; i < n; ++i) val *= std::pow(c[i] + rho * p[i], alpha[i]);
            acc.add(val);
            acc2.add(val * val);
        }
        const double volume =
            std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1)) * std::pow(rho, n);
        const double mean = acc.sum() / mc_n;
        const double var = std::max(0.0, acc2.sum() / mc_n - mean * mean);
        const double est = mean * volume;
        const double sigma = std::sqrt(var / mc_n) * volume;
        CHECK(std::abs(est - exact) <= 4.0 * sigma + 1e-12);
    }
}

TEST_CASE("gram K1 is positive definite for (6,2) and scales exactly") {
    auto res = gram_K1(6, 2);
    CHECK(res.dimension > 0);
    CHECK(res.lambda_min > 0);
    CHECK(res.k1_hat == doctest::Approx(1.0 / res.lambda_min));
    // gram symmetric
    for (int a = 0; a < res.dimension; ++a)
        for (int b = 0; b < res.dimension; ++b)
            CHECK(res.gram[a][b] == doctest::Approx(res.gram[b][a]));
    CHECK(gram_scaling_check(6, 2, rat(2)));
    CHECK(gram_scaling_check(6, 2, rat(3, 2)));
}

TEST_CASE("coeffset JSON round trip") {
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    CoeffSet back = CoeffSet::from_json(e0.to_json());
    CHECK(back.n() == 6);
    CHECK(back.norm2() == e0.norm2());
    CHECK(back.get(0, 0, MultiIndex(6, {0, 2, 0, 0, 0, 0})) == rat(1));
}
