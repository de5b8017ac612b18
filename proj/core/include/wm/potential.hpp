#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "wm/multi_index.hpp"

namespace wm {

enum class PotentialKind { kZero, kLinear, kHarmonic, kPolynomial, kBump };

/// Returns the display name of a potential kind (matches the config-file
/// spelling accepted by the command-line tool).
std::string to_string(PotentialKind kind);

/// One-dimensional external potential with exact closed-form derivatives.
///
/// All kinds except the bump are polynomials, so every derivative order is
/// exact. The bump kind, amplitude * exp(-1/(1-x^2)) on |x| < 1 and 0
/// outside, supports derivatives up to order 13: each derivative is
/// P_n(x)/(1-x^2)^{2n} times the bump, with P_n an integer-coefficient
/// polynomial generated by a chain-rule recurrence; beyond order 13 the
/// coefficients of P_n no longer fit exactly in a double.
class Potential1D {
 public:
  static Potential1D zero();
  /// V(x) = slope * x.
  static Potential1D linear(double slope);
  /// V(x) = stiffness * x^2 / 2.
  static Potential1D harmonic(double stiffness);
  /// V(x) = sum_k coeffs[k] * x^k.
  static Potential1D polynomial(std::vector<double> coeffs);
  /// V(x) = amplitude * exp(-1/(1-x^2)) for |x| < 1, else 0.
  static Potential1D bump(double amplitude = 1.0);

  /// d^order V / dx^order at x; order 0 is V itself.
  /// Throws std::invalid_argument for order < 0 and std::out_of_range
  /// for order > max_derivative_order().
  double derivative(int order, double x) const;

  /// V(x).
  double operator()(double x) const { return derivative(0, x); }

  /// Largest derivative order evaluable in closed form.
  int max_derivative_order() const;

  PotentialKind kind() const { return kind_; }

  /// Kind-specific parameters (slope, stiffness, coefficients, amplitude).
  const std::vector<double>& params() const { return params_; }

 private:
  Potential1D(PotentialKind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {}

  PotentialKind kind_;
  std::vector<double> params_;
};

/// V^{(k)}(x) for k = 0..max_order packed into a vector (index = order).
/// The layout feeds the system assembly, which reads V' and the odd orders.
std::vector<double> potential_derivs(const Potential1D& pot, double x, int max_order);

/// Three-dimensional potential stored as a sparse polynomial
/// sum_beta c_beta x^beta, so every mixed derivative is exact.
class Potential3D {
 public:
  static Potential3D zero();
  /// V(x) = g . x.
  static Potential3D linear(const std::array<double, 3>& gradient);
  /// V(x) = sum_d stiffness[d] * x_d^2 / 2.
  static Potential3D harmonic(const std::array<double, 3>& stiffness);
  /// V(x) = sum of coeff * x^beta terms.
  static Potential3D polynomial(std::vector<std::pair<MultiIndex, double>> terms);

  /// d^lambda V / dx^lambda at x; lambda = 0 is V itself.
  /// Throws std::invalid_argument if lambda has a negative component.
  double derivative(const MultiIndex& lambda, const std::array<double, 3>& x) const;

  double operator()(const std::array<double, 3>& x) const {
    return derivative(MultiIndex{}, x);
  }

  /// Polynomials differentiate exactly at any order.
  int max_derivative_order() const { return 1000; }

  PotentialKind kind() const { return kind_; }
  const std::vector<std::pair<MultiIndex, double>>& terms() const { return terms_; }

 private:
  Potential3D(PotentialKind kind, std::vector<std::pair<MultiIndex, double>> terms)
      : kind_(kind), terms_(std::move(terms)) {}

  PotentialKind kind_;
  std::vector<std::pair<MultiIndex, double>> terms_;
};

}  // namespace wm
