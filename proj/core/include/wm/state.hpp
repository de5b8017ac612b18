#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "wm/multi_index.hpp"

namespace wm {

/// One-dimensional moment unknowns at a single spatial point:
/// w = (rho, u, P/2, f_3, ..., f_M). The first- and second-order Hermite
/// coefficients vanish identically in the velocity-adapted basis and are
/// not stored.
struct MomentState1D {
  int order = 3;              // truncation order M >= 3
  double rho = 1.0;           // number density, > 0
  double u = 0.0;             // bulk velocity
  double half_pressure = 0.5; // P/2 with P = rho * temperature, > 0
  std::vector<double> coeffs; // f_3 .. f_M (size order - 2)

  /// Scaled temperature P / rho.
  double temperature() const { return 2.0 * half_pressure / rho; }

  /// Hermite coefficient f_n derived from the stored unknowns:
  /// f_0 = rho, f_1 = f_2 = 0, f_n stored for 3 <= n <= M, 0 outside.
  double moment_coeff(int n) const;

  /// rho > 0, P/2 > 0, all entries finite, coefficient count matches order.
  bool admissible() const;

  /// Dense unknown vector (rho, u, P/2, f_3..f_M), length order + 1.
  Eigen::VectorXd to_vector() const;
  static MomentState1D from_vector(int order, const Eigen::VectorXd& w);
};

/// Three-dimensional moment unknowns at a single spatial point. The pressure
/// tensor is stored in place of the second-order coefficients so that the
/// trace constraint on f_{2e_d} holds by construction.
struct MomentState3D {
  int order = 3;                    // truncation order M >= 3
  double rho = 1.0;                 // > 0
  std::array<double, 3> u{0, 0, 0};
  Eigen::Matrix3d pressure = Eigen::Matrix3d::Identity(); // symmetric p_ij
  std::vector<double> coeffs;       // f_alpha, 3 <= |alpha| <= M, ordinal order

  /// Scaled temperature trace(p) / (3 rho).
  double temperature() const { return pressure.trace() / (3.0 * rho); }

  /// Hermite coefficient f_alpha derived from the stored unknowns:
  /// f_0 = rho; f_{e_i} = 0; second order recovered from the pressure
  /// tensor; stored value for 3 <= |alpha| <= M; 0 outside.
  double moment_coeff(const MultiIndex& alpha) const;

  /// Mutable access to a stored coefficient, 3 <= |alpha| <= order.
  double& coeff(const MultiIndex& alpha);

  bool admissible() const;

  /// Dense unknown vector of length C(M+3,3) in ordinal order:
  /// w_1 = rho, w_N(e_i) = u_i, w_N(2e_i) = p_ii/2, w_N(e_i+e_j) = p_ij,
  /// w_N(alpha) = f_alpha for |alpha| >= 3.
  Eigen::VectorXd to_vector() const;
  static MomentState3D from_vector(int order, const Eigen::VectorXd& w);
};

/// Local-equilibrium state: Maxwellian with the given density, velocity and
/// temperature; every coefficient of order >= 1 vanishes and the pressure
/// tensor is isotropic. Throws std::domain_error for non-positive rho or
/// temperature.
MomentState1D maxwellian_state_1d(int order, double rho, double u, double temperature);
MomentState3D maxwellian_state_3d(int order, double rho, const std::array<double, 3>& u,
                                  double temperature);

struct Derived1D {
  double temperature; // P / rho
  double heat_flux;   // q = 3 f_3
};
Derived1D derived_quantities(const MomentState1D& state);

struct Derived3D {
  double temperature;               // trace(p) / (3 rho)
  std::array<double, 3> heat_flux;  // q_i = 2 f_{3e_i} + sum_d f_{2e_d+e_i}
  Eigen::Matrix3d second_coeffs;    // f_{e_i+e_j} recovered from the pressure
};
Derived3D derived_quantities(const MomentState3D& state);

/// Macroscopic quantities recovered from expansion coefficients taken in a
/// foreign basis (bulk velocity u', temperature T'):
/// rho = f'_0, rho u = rho u' + f'_{e_d}, and
/// rho |u - u'|^2 + 3 rho T = sum_d (T' f'_0 + 2 f'_{2e_d}).
/// Throws std::domain_error if the recovered temperature is not positive.
struct ForeignMoments {
  double rho;
  std::array<double, 3> u;
  double temperature;
};
ForeignMoments foreign_expansion_moments(double fprime0,
                                         const std::array<double, 3>& fprime_first,
                                         const std::array<double, 3>& fprime_second_diag,
                                         const std::array<double, 3>& u_prime,
                                         double t_prime);

/// Truncated Hermite-series value of the distribution at velocity v.
double reconstruct_distribution(const MomentState1D& state, double v);
double reconstruct_distribution(const MomentState3D& state, const std::array<double, 3>& v);

}  // namespace wm
