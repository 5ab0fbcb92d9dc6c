#pragma once

#include <memory>

#include "ytf/gauge.hpp"
#include "ytf/green.hpp"

namespace ytf::comp {

// Glued test function v = chi_delta (u_eps + w) + (1 - chi_delta) eps^{(n-2)/2} G.
// The flat radial profile (w = 0, G = |x|^{2-n}) doubles as the control-variate
// baseline for the energy quadrature.
class TestFunction {
  public:
    TestFunction(int n, double eps, double delta, const gauge::GaugeSolution* sol,
                 const green::GreenModel* gm);

    int n() const { return n_; }
    double eps() const { return eps_; }
    double delta() const { return delta_; }

    double value(const double* x) const;
    void gradient(const double* x, double* grad) const;

    // flat-data profile and its radial derivative
    double flat_profile(double r) const;
    double flat_profile_deriv(double r) const;

    // checks v > 0 on a seeded sample set; throws on a violation
    void verify_positivity(uint64_t seed = 5, int samples = 4096) const;

  private:
    int n_;
    double eps_, delta_;
    const gauge::GaugeSolution* sol_;
    const green::GreenModel* gm_;
};

}  // namespace ytf::comp
