#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "wm/assembly.hpp"
#include "wm/state.hpp"

namespace wm {

/// Eigenstructure certificate of an assembled convective matrix.
struct SpectralReport {
  std::vector<double> computed;      // real parts of the eigenvalues, sorted
  std::vector<double> predicted;     // characteristic-speed multiset, sorted
  double max_imag = 0.0;             // largest |Im(eigenvalue)|
  double max_abs_deviation = 0.0;    // sorted computed vs sorted predicted
  double eigenvector_condition = 0.0;
  bool hyperbolic = false;           // real spectrum and well-conditioned basis
};

/// Condition-number threshold above which the eigenvector basis is treated
/// as numerically defective.
inline constexpr double kConditionLimit = 1e8;

/// Characteristic speeds of the regularized 1D system of the given order:
/// {u + c sqrt(T) : c a root of He_{M+1}}, sorted ascending.
std::vector<double> predicted_spectrum_1d(int order, double u, double temperature);

/// Multiplicity of each root of He_m in the 3D spectrum of order M:
/// M + 2 - m (bootstrapped numerically from small orders and frozen; the
/// multiplicities total C(M+3,3) across 1 <= m <= M+1).
int predicted_multiplicity(int order, int m);

/// Characteristic-speed multiset of the regularized 3D system in direction n:
/// u.n + c sqrt(T) for every root c of He_m, m = 1..M+1, each with
/// multiplicity M + 2 - m; sorted ascending, size C(M+3,3).
std::vector<double> predicted_spectrum_3d(int order, const std::array<double, 3>& u,
                                          double temperature,
                                          const std::array<double, 3>& direction);

/// Computes the spectrum of the matrix, compares it against the predicted
/// multiset (after sorting; equal-length positional pairing), and estimates
/// the eigenvector-basis condition number. Throws std::runtime_error if the
/// eigensolver fails to converge.
SpectralReport certify_matrix(const Eigen::MatrixXd& matrix, std::vector<double> predicted);

/// Certificate for the 1D convective matrix against the theorem's spectrum
/// at the state the system was assembled from.
SpectralReport certify_1d(const QuasiLinearSystem1D& system, const MomentState1D& state);

/// Certificate for the directional 3D matrix sum_j n_j M_j.
SpectralReport certify_3d(const QuasiLinearSystem3D& system, const MomentState3D& state,
                          const std::array<double, 3>& direction);

}  // namespace wm
