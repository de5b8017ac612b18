#pragma once

#include <array>
#include <vector>

#include "wm/multi_index.hpp"

namespace wm {

/// He_n(x), the monic "probabilists'" Hermite polynomial (weight e^{-x^2/2}).
/// Returns 0 for n < 0. Values are clamped at magnitude 1e300 to keep the
/// three-term recursion finite for extreme arguments; clamped results are
/// inaccurate but only occur far outside the oscillatory region.
double hermite_eval(int n, double x);

/// d/dx He_n(x) = n He_{n-1}(x).
double hermite_deriv(int n, double x);

/// The n real roots of He_n in strictly increasing order.
/// Requires 1 <= n <= 64.
std::vector<double> hermite_roots(int n);

/// Gauss quadrature for the weight e^{-x^2/2} on the whole line:
/// integral of f(x) e^{-x^2/2} dx ~= sum_i weights[i] * f(nodes[i]),
/// exact for polynomials of degree <= 2n-1.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_hermite(int n);

/// Scale/shift parameters of the velocity-space basis: the basis functions
/// are centered at the bulk velocity and scaled by sqrt(temperature).
struct BasisParams1D {
  double temperature = 1.0;  // must be > 0
  double shift = 0.0;
};
struct BasisParams3D {
  double temperature = 1.0;  // must be > 0
  std::array<double, 3> shift{0.0, 0.0, 0.0};
};

/// One-dimensional basis function of degree n evaluated at velocity v:
///   (2*pi)^{-1/2} * T^{-(n+1)/2} * He_n(xi) * e^{-xi^2/2},
/// with xi = (v - shift)/sqrt(T). Returns 0 for n < 0.
/// Throws std::domain_error for temperature <= 0.
double basis_eval(const BasisParams1D& params, int n, double v);

/// Tensor product of three one-dimensional factors with a shared temperature.
/// Returns 0 if any component of alpha is negative.
double basis_eval(const BasisParams3D& params, const MultiIndex& alpha,
                  const std::array<double, 3>& v);

}  // namespace wm
