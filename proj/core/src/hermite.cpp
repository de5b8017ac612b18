#include "wm/hermite.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wm {

namespace {
constexpr double kClamp = 1e300;

double clamp_mag(double v) {
  if (v > kClamp) return kClamp;
  if (v < -kClamp) return -kClamp;
  return v;
}
}  // namespace

double hermite_eval(int n, double x) {
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  double prev = 1.0;   // He_0
  double curr = x;     // He_1
  for (int k = 1; k < n; ++k) {
    const double next = clamp_mag(x * curr - static_cast<double>(k) * prev);
    prev = curr;
    curr = next;
  }
  return curr;
}

double hermite_deriv(int n, double x) {
  if (n <= 0) return 0.0;
  return static_cast<double>(n) * hermite_eval(n - 1, x);
}

static Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi_solve(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermite_roots: eigensolver failed");
  }
  return solver;
}

std::vector<double> hermite_roots(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("hermite_roots: order must be in [1, 64]");
  }
  const auto solver = jacobi_solve(n);
  std::vector<double> roots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    // One Newton polish per root; the Jacobi eigenvalues are already
    // accurate, polishing pins the residual |He_n(root)| near round-off.
    for (int iter = 0; iter < 2; ++iter) {
      const double f = hermite_eval(n, x);
      const double df = hermite_deriv(n, x);
      if (df != 0.0) x -= f / df;
    }
    roots[static_cast<size_t>(i)] = x;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Quadrature gauss_hermite(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("gauss_hermite: order must be in [1, 64]");
  }
  const auto solver = jacobi_solve(n);
  const double mu0 = std::sqrt(2.0 * std::numbers::pi);
  Quadrature quad;
  quad.nodes.resize(static_cast<size_t>(n));
  quad.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    quad.nodes[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    const double q0 = solver.eigenvectors()(0, i);
    quad.weights[static_cast<size_t>(i)] = mu0 * q0 * q0;
  }
  return quad;
}

double basis_eval(const BasisParams1D& params, int n, double v) {
  if (params.temperature <= 0.0) {
    throw std::domain_error("basis_eval: temperature must be positive");
  }
  if (n < 0) return 0.0;
  const double sqrt_t = std::sqrt(params.temperature);
  const double xi = (v - params.shift) / sqrt_t;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return norm * std::pow(params.temperature, -0.5 * (n + 1)) * hermite_eval(n, xi) *
         std::exp(-0.5 * xi * xi);
}

double basis_eval(const BasisParams3D& params, const MultiIndex& alpha,
                  const std::array<double, 3>& v) {
  if (params.temperature <= 0.0) {
    throw std::domain_error("basis_eval: temperature must be positive");
  }
  if (!alpha.valid()) return 0.0;
  double result = 1.0;
  for (int d = 0; d < 3; ++d) {
    BasisParams1D p1{params.temperature, params.shift[static_cast<size_t>(d)]};
    result *= basis_eval(p1, alpha[d], v[static_cast<size_t>(d)]);
  }
  return result;
}

}  // namespace wm
