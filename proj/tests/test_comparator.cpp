#include <doctest.h>

#include <cmath>

#include "ytf/bubble.hpp"
#include "ytf/comparator.hpp"
#include "ytf/experiment.hpp"

using namespace ytf;
using namespace ytf::comp;

TEST_CASE("flat test function: continuity, center value, far field") {
    const int n = 6;
    const double eps = 0.1, delta = 0.5;
    TestFunction tf(n, eps, delta, nullptr, nullptr);
    // center value
    double zero[6] = {0, 0, 0, 0, 0, 0};
    CHECK(tf.value(zero) == doctest::Approx(std::pow(eps, -2.0)).epsilon(1e-12));
    // far field: exactly eps^{(n-2)/2} |x|^{2-n}
    double far[6] = {1.2, 0, 0, 0.4, 0, 0.3};
    double r2 = 0;
    for (double v : far) r2 += v * v;
    CHECK(tf.value(far) == doctest::Approx(std::pow(eps, 2.0) * std::pow(r2, -2.0)).epsilon(1e-12));
    // continuity across the transition annulus: gradient matches FD
    double x[6] = {0.61, 0.2, 0.1, -0.3, 0.15, 0.35};
    double grad[6];
    tf.gradient(x, grad);
    for (int i = 0; i < n; ++i) {
        double xp[6], xm[6];
        std::copy(x, x + 6, xp);
        std::copy(x, x + 6, xm);
        xp[i] += 1e-6;
        xm[i] -= 1e-6;
        CHECK(grad[i] ==
              doctest::Approx((tf.value(xp) - tf.value(xm)) / 2e-6).epsilon(1e-5));
    }
    tf.verify_positivity();
}

TEST_CASE("flat calibration: energy above Y, decreasing, slope") {
    const int n = 6;
    const double Y = bubble::sphere_constant(n).value;
    const double delta = 0.25;
    std::vector<double> gaps;
    for (double frac : {0.25, 0.125, 0.0625}) {
        auto fc = flat_energy(n, frac * delta, delta);
        CHECK(fc.energy > Y);
        gaps.push_back(fc.energy - Y);
    }
    CHECK(gaps[1] < gaps[0]);
    CHECK(gaps[2] < gaps[1]);
    const double slope01 = std::log(gaps[0] / gaps[1]) / std::log(2.0);
    const double slope12 = std::log(gaps[1] / gaps[2]) / std::log(2.0);
    MESSAGE("flat calibration slopes: ", slope01, " ", slope12);
    CHECK(slope01 > 2.0);  // decreasing fast (see acceptance for the pinned window)
    CHECK(slope12 > 2.0);
}

TEST_CASE("report arithmetic and margin recomputation") {
    const int n = 6;
    CoeffSet zero(n, 2);
    ExperimentInputs in;
    in.coeffs = zero;
    in.scale = 0.0;
    in.rho_outer = 1.0;
    in.quadrature.samples = 400;
    auto rep = total_energy_report(in, 0.05, 0.25);
    CHECK(rep.verdict != "error");
    CHECK(rep.margin == doctest::Approx(rep.sphere_constant - rep.energy).epsilon(1e-12));
    CHECK(rep.flux_term == 0.0);
    // flat case can never demonstrate the inequality
    CHECK(rep.verdict == "inconclusive");
    // energy close to the radial baseline (corrections vanish identically)
    CHECK(rep.energy == doctest::Approx(rep.baseline_energy).epsilon(1e-9));
}

TEST_CASE("nondegenerate check on flat data is inconclusive") {
    ExperimentInputs in;
    in.coeffs = CoeffSet(6, 2);
    in.scale = 0.0;
    auto res = theorem_check_nondegenerate(in, {0.25}, {0.25});
    CHECK(res.verdict == "inconclusive");
}

TEST_CASE("experiment config parsing round trip") {
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    nlohmann::json cfg;
    cfg["coeffs"] = nlohmann::json::parse(e0.to_json());
    cfg["scale"] = 0.25;
    cfg["rho_outer"] = 1.0;
    cfg["quadrature"] = {{"samples", 5000}, {"seed", 99}};
    auto in = cli::parse_experiment_inputs(cfg);
    CHECK(in.scale == 0.25);
    CHECK(in.quadrature.samples == 5000);
    CHECK(in.quadrature.seed == 99);
    auto j = cli::inputs_to_json(in);
    CHECK(j["scale"] == 0.25);
    // missing coeffs -> input error
    nlohmann::json bad;
    bad["scale"] = 1.0;
    CHECK_THROWS_AS(cli::parse_experiment_inputs(bad), std::invalid_argument);
}

TEST_CASE("verify suite passes on seeded data") {
    auto outcome = cli::verify_suite(6, 2, 3, 123);
    CHECK(outcome.pass);
    CHECK(outcome.failures.empty());
}
