#pragma once

#include <array>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "wm/multi_index.hpp"
#include "wm/potential.hpp"
#include "wm/state.hpp"

namespace wm {

/// Quasi-linear form of the 1D moment system at one state and location:
/// dw/dt + A(w) dw/dx = G w, with w = (rho, u, P/2, f_3..f_M).
struct QuasiLinearSystem1D {
  int order = 3;
  Eigen::MatrixXd a; // (M+1) x (M+1) convective matrix
  Eigen::MatrixXd g; // (M+1) x (M+1) source matrix (force, relaxation, quantum)
  bool regularized = true;
};

/// Quasi-linear form of the 3D moment system:
/// dw/dt + sum_j M_j(w) dw/dx_j = G w, with w ordered by ordinal.
struct QuasiLinearSystem3D {
  int order = 3;
  std::array<Eigen::MatrixXd, 3> m; // N x N convective matrices, N = C(M+3,3)
  Eigen::MatrixXd g;                // N x N source matrix
  bool regularized = true;
};

/// Real coefficient of the quantum potential expansion attached to one
/// derivative order: -(hbar/2i)^{|lambda|-1} / lambda! * d^lambda V, which is
/// real for odd |lambda| with sign alternating as -(-1)^{(|lambda|-1)/2}.
double wigner_coefficient(int lambda_total, double hbar, double lambda_factorial,
                          double v_derivative);

/// Sparse expansion of the quantum potential term for the moment of order
/// alpha: maps each target order alpha - lambda (odd lambda >= 1, target
/// >= 0) to its real coefficient. v_derivs[k] = d^k V / dx^k.
std::map<int, double> wigner_source_column(int alpha, double hbar,
                                           const std::vector<double>& v_derivs);

/// Three-dimensional variant; lambda runs over all component-wise valid
/// multi-indices with odd total >= 1.
std::map<MultiIndex, double> wigner_source_column(const MultiIndex& alpha, double hbar,
                                                  const Potential3D& pot,
                                                  const std::array<double, 3>& x);

/// Convective matrix A(w) of the 1D system. With regularized = false the
/// closure is the plain Grad truncation (highest-order flux derivative
/// dropped, all coefficient terms kept); with regularized = true the terms
/// carrying an (n+1) factor are additionally erased from the highest row,
/// which makes the spectrum real for every admissible state.
Eigen::MatrixXd convective_matrix_1d(const MomentState1D& state, bool regularized);

/// Source matrix G of the 1D system: the force entry on the velocity row,
/// the exact relaxation diagonal on f_3..f_M, and the quantum potential
/// entries. v_derivs[k] = d^k V / dx^k; orders 1 and (for hbar != 0) all odd
/// orders 3..M must be present.
Eigen::MatrixXd source_matrix_1d(const MomentState1D& state,
                                 const std::vector<double>& v_derivs, double tau,
                                 double hbar);

QuasiLinearSystem1D assemble_1d(const MomentState1D& state,
                                const std::vector<double>& v_derivs, double tau,
                                double hbar, bool regularized);
QuasiLinearSystem1D assemble_1d(const MomentState1D& state, const Potential1D& pot,
                                double x, double tau, double hbar, bool regularized);

/// Convective matrices M_j(w) of the 3D system under the same closure rules.
std::array<Eigen::MatrixXd, 3> convective_matrices_3d(const MomentState3D& state,
                                                      bool regularized);

QuasiLinearSystem3D assemble_3d(const MomentState3D& state, const Potential3D& pot,
                                const std::array<double, 3>& x, double tau, double hbar,
                                bool regularized);

}  // namespace wm
