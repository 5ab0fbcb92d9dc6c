#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ytf/multiindex.hpp"
#include "ytf/rng.hpp"

namespace ytf::quad {

// Quadrature over half-space regions: Gauss-Legendre panels in the radius
// (log-spaced, clustered near a configurable scale) crossed with seeded
// Monte-Carlo directions on the hemisphere. The per-direction radial
// integrals are near-exact, so the reported sigma measures only the angular
// sampling error.
struct QuadratureSpec {
    enum class Mode { ExactMoment, RadialAngularMC };
    Mode mode = Mode::RadialAngularMC;
    long samples = 10000;  // number of direction samples
    uint64_t seed = 1;
    int gauss_points = 16;     // per radial panel
    int panels_per_octave = 1; // radial panel density
    int threads = 1;

    static QuadratureSpec acceptance(uint64_t seed_in, long samples_in = 20000) {
        QuadratureSpec q;
        q.samples = samples_in;
        q.seed = seed_in;
        return q;
    }
};

struct McResult {
    double value = 0;
    double sigma = 0;
    McResult operator+(const McResult& o) const {
        return {value + o.value, std::hypot(sigma, o.sigma)};
    }
};

// Gauss-Legendre nodes/weights on [-1,1].
const std::vector<std::pair<double, double>>& gauss_rule(int k);

// Radial breakpoints for [a,b] with geometric clustering around `cluster`.
std::vector<double> radial_panels(double a, double b, double cluster, int per_octave);

double hemisphere_area(int n);   // |S^{n-1} cap {x_n > 0}|
double sphere_area(int n);       // |S^{n-1}|

using PointFn = std::function<double(const double* x)>;        // f(x), x in R^n
using DirRadialFn = std::function<double(const double* omega)>;  // after radial integration

// integral over {a <= |x| <= b, x_n >= 0} of f dx.
McResult integrate_shell(int n, double a, double b, double cluster, const PointFn& f,
                         const QuadratureSpec& spec, uint32_t stream);

// integral over {|x| >= a, x_n >= 0} of f dx (substitution r = a/t).
McResult integrate_exterior(int n, double a, const PointFn& f, const QuadratureSpec& spec,
                            uint32_t stream);

// surface integral over {|x| = rho, x_n >= 0} of f dsigma.
McResult integrate_sphere(int n, double rho, const PointFn& f, const QuadratureSpec& spec,
                          uint32_t stream);

// integral over the boundary disk {x_n = 0, |x'| <= rho} of f dx'.
McResult integrate_disk(int n, double rho, double cluster, const PointFn& f,
                        const QuadratureSpec& spec, uint32_t stream);

// Multi-output variants: f fills `m` values per point; one shared sample set.
using MultiPointFn = std::function<void(const double* x, double* out)>;
std::vector<McResult> integrate_shell_multi(int n, double a, double b, double cluster, int m,
                                            const MultiPointFn& f, const QuadratureSpec& spec,
                                            uint32_t stream);
std::vector<McResult> integrate_sphere_multi(int n, double rho, int m, const MultiPointFn& f,
                                             const QuadratureSpec& spec, uint32_t stream);
std::vector<McResult> integrate_exterior_multi(int n, double a, int m, const MultiPointFn& f,
                                               const QuadratureSpec& spec, uint32_t stream);

// 1-D: integral over [a,b] of f(r) dr by panels clustered at `cluster`.
double integrate_radial(double a, double b, double cluster, const std::function<double(double)>& f,
                        int gauss_points = 32, int per_octave = 2);
// 1-D over [a, inf).
double integrate_radial_exterior(double a, const std::function<double(double)>& f,
                                 int gauss_points = 32, int per_octave = 2);

// integral over B_delta cap half-space of (eps + |x|)^{q} dx, exact up to the
// 1-D profile which is integrated in closed form (expansion with log terms).
double weight_profile_integral(int n, double eps, double delta, int q);

}  // namespace ytf::quad
