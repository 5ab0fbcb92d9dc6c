#pragma once

#include <vector>

#include "ytf/poly.hpp"
#include "ytf/quadrature.hpp"

namespace ytf::gauge {

// Norms on the hemisphere (round metric of sectional curvature 4) of a
// polynomial vector field given in stereographic half-space coordinates,
// g = (1+|x|^2)^{-2} delta. The conformal Killing part uses the flat
// operator thanks to conformal covariance of the trace-free Lie derivative.
struct HemisphereNorms {
    int n = 0;
    double d_norm2 = 0;     // ||DV||^2, full double-sum tensor norm
    double grad_norm2 = 0;  // ||nabla V||^2
    double div_norm2 = 0;   // ||div_g V||^2
    double v_norm2 = 0;     // ||V||^2

    // (1/2)||DV||^2 + 4(n-1)||V||^2 = ||nabla V||^2 + (n-2)/n ||div_g V||^2.
    // The 1/2 carries the symmetrisation: expanding the full double-sum norm
    // of the symmetrised gradient doubles every cross term.
    double identity_lhs() const { return 0.5 * d_norm2 + 4.0 * (n - 1) * v_norm2; }
    double identity_rhs() const { return grad_norm2 + double(n - 2) / n * div_norm2; }
    double residual_abs() const { return std::abs(identity_lhs() - identity_rhs()); }
    double scale() const {
        return std::max({0.5 * d_norm2, 4.0 * (n - 1) * v_norm2, grad_norm2,
                         double(n - 2) / n * div_norm2, 1e-300});
    }
};

// Throws if V is not tangential along the boundary (V_n != 0 at x_n = 0).
HemisphereNorms hemisphere_identity(const std::vector<Poly>& V);
HemisphereNorms hemisphere_identity_mc(const std::vector<Poly>& V,
                                       const quad::QuadratureSpec& spec);

}  // namespace ytf::gauge
