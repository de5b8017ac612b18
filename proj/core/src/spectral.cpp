#include "wm/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wm/hermite.hpp"

namespace wm {

std::vector<double> predicted_spectrum_1d(int order, double u, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::domain_error("predicted_spectrum_1d: temperature must be positive");
  }
  const double scale = std::sqrt(temperature);
  std::vector<double> out = hermite_roots(order + 1);
  for (double& c : out) c = u + scale * c;
  return out;
}

int predicted_multiplicity(int order, int m) {
  if (m < 1 || m > order + 1) return 0;
  return order + 2 - m;
}

std::vector<double> predicted_spectrum_3d(int order, const std::array<double, 3>& u,
                                          double temperature,
                                          const std::array<double, 3>& direction) {
  if (!(temperature > 0.0)) {
    throw std::domain_error("predicted_spectrum_3d: temperature must be positive");
  }
  const double un = u[0] * direction[0] + u[1] * direction[1] + u[2] * direction[2];
  const double norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                direction[2] * direction[2]);
  // n . A = |n| (n_hat . A), so the thermal part of each wave speed scales by |n|.
  const double scale = norm * std::sqrt(temperature);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(index_set_size(order)));
  for (int m = 1; m <= order + 1; ++m) {
    const int mult = predicted_multiplicity(order, m);
    for (double c : hermite_roots(m)) {
      for (int k = 0; k < mult; ++k) out.push_back(un + scale * c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpectralReport certify_matrix(const Eigen::MatrixXd& matrix, std::vector<double> predicted) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("certify_matrix: eigensolver did not converge");
  }

  SpectralReport report;
  const auto& values = solver.eigenvalues();
  report.computed.resize(static_cast<size_t>(values.size()));
  double scale = 1.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    report.computed[static_cast<size_t>(i)] = values(i).real();
    report.max_imag = std::max(report.max_imag, std::abs(values(i).imag()));
    scale = std::max(scale, std::abs(values(i)));
  }
  std::sort(report.computed.begin(), report.computed.end());

  std::sort(predicted.begin(), predicted.end());
  report.predicted = std::move(predicted);
  if (report.predicted.size() == report.computed.size()) {
    for (size_t i = 0; i < report.computed.size(); ++i) {
      report.max_abs_deviation = std::max(report.max_abs_deviation,
                                          std::abs(report.computed[i] - report.predicted[i]));
    }
  } else {
    report.max_abs_deviation = std::numeric_limits<double>::infinity();
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(solver.eigenvectors());
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double smax = svd.singularValues()(0);
  report.eigenvector_condition =
      smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

  report.hyperbolic = report.max_imag <= 1e-9 * scale &&
                      report.eigenvector_condition < kConditionLimit;
  return report;
}

SpectralReport certify_1d(const QuasiLinearSystem1D& system, const MomentState1D& state) {
  return certify_matrix(system.a,
                        predicted_spectrum_1d(system.order, state.u, state.temperature()));
}

SpectralReport certify_3d(const QuasiLinearSystem3D& system, const MomentState3D& state,
                          const std::array<double, 3>& direction) {
  Eigen::MatrixXd combined = direction[0] * system.m[0] + direction[1] * system.m[1] +
                             direction[2] * system.m[2];
  return certify_matrix(combined, predicted_spectrum_3d(system.order, state.u,
                                                        state.temperature(), direction));
}

}  // namespace wm
