#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ytf/bubble.hpp"
#include "ytf/comparator.hpp"
#include "ytf/experiment.hpp"
#include "ytf/hemisphere.hpp"

namespace py = pybind11;
using namespace ytf;

namespace {

MultiIndex to_multiindex(const std::vector<int>& v) { return MultiIndex::from_vector(v); }

}  // namespace

PYBIND11_MODULE(_ytf, m) {
    m.doc() = "Yamabe test-function toolkit: exact tensor calculus, gauge solves, "
              "Green functions and energy comparisons on the half-space";

    m.def("sphere_constant", [](int n) {
        auto sc = bubble::sphere_constant(n);
        return py::make_tuple(sc.value, sc.moment);
    }, py::arg("n"), "Y(S^n_+) and the critical bubble moment");

    m.def("halfspace_moment", [](int n, double p, const std::vector<int>& alpha) {
        return bubble::halfspace_moment(n, p, to_multiindex(alpha));
    }, py::arg("n"), py::arg("p"), py::arg("alpha"));

    m.def("u_eval", [](int n, double eps, const std::vector<double>& x) {
        bubble::BubbleParams bp{n, eps};
        auto jet = bubble::u_eval(bp, x.data());
        return py::make_tuple(jet.value, jet.gradient);
    }, py::arg("n"), py::arg("eps"), py::arg("x"));

    m.def("identity_residuals", [](int n, double eps, const std::vector<double>& x) {
        bubble::BubbleParams bp{n, eps};
        auto r = bubble::identity_residuals(bp, x.data());
        return py::make_tuple(r.laplace_residual, r.hessian_residual);
    });

    m.def("standard_quadratic_json", [](int n) {
        return CoeffSet::standard_quadratic(n).to_json();
    }, py::arg("n"), "the standard quadratic example as CoeffSet JSON");

    m.def("check_admissible", [](const std::string& coeffs_json) {
        auto c = CoeffSet::from_json(coeffs_json);
        return sym::check_admissible(sym::make_H(c)).to_json();
    }, py::arg("coeffs_json"));

    m.def("divergence_identity_is_zero", [](const std::string& coeffs_json) {
        auto c = CoeffSet::from_json(coeffs_json);
        return sym::divergence_identity_residual(sym::make_H(c)).is_zero();
    });

    m.def("z_kernel_dimension", [](int n, int d) {
        return static_cast<int>(sym::z_kernel(n, d).size());
    }, py::arg("n"), py::arg("d"));

    m.def("ball_moment", [](double rho, const std::vector<double>& center,
                            const std::vector<int>& alpha) {
        return sym::ball_moment(rho, center, to_multiindex(alpha));
    });

    m.def("neumann_kernel", [](const std::vector<double>& x, const std::vector<double>& y) {
        return green::neumann_kernel(x.data(), y.data(), static_cast<int>(x.size()));
    });

    m.def("solve_v_summary", [](const std::string& coeffs_json, double eps, double delta,
                                int degree) {
        auto c = CoeffSet::from_json(coeffs_json);
        auto ansatz = gauge::build_ansatz(c.n(), degree);
        auto sol = gauge::solve_V(c, eps, delta, ansatz);
        py::dict out;
        out["kernel_dim"] = sol.kernel_dim;
        out["normal_eq_residual_rel"] = sol.normal_eq_residual_rel;
        out["weighted_h_norm2"] = sol.weighted_h_norm2;
        out["weighted_residual2"] = sol.weighted_residual2;
        return out;
    }, py::arg("coeffs_json"), py::arg("eps"), py::arg("delta"), py::arg("degree"));

    m.def("flat_energy", [](int n, double eps, double delta) {
        return comp::flat_energy(n, eps, delta).energy;
    }, py::arg("n"), py::arg("eps"), py::arg("delta"),
       "Yamabe energy of the flat glued test function (radial quadrature)");

    m.def("chi_cut", &gauge::chi_cut, py::arg("t"));
}
