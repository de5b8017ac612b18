#include "wm/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace wm {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

double multi_factorial(const MultiIndex& lambda) {
  return factorial(lambda[0]) * factorial(lambda[1]) * factorial(lambda[2]);
}

void check_state_1d(const MomentState1D& state) {
  if (!state.admissible()) {
    throw std::domain_error("assembly: inadmissible 1D state (need rho > 0, P > 0, finite)");
  }
}

void check_state_3d(const MomentState3D& state) {
  if (!state.admissible()) {
    throw std::domain_error("assembly: inadmissible 3D state (need rho > 0, T > 0, finite)");
  }
}

void check_tau(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("assembly: tau must be positive");
}

// Columns are 0-based; the ordinal is 1-based.
int rc(const MultiIndex& alpha) { return ordinal(alpha) - 1; }

// Adds coef * f_beta to a matrix row with f_beta expressed in the unknowns:
// f_0 = rho (column 0); f_{e_i} = 0; f_{2e_d} = sum_i (delta_di - 1/3) w_{N(2e_i)};
// f_{e_a+e_b} and all higher coefficients are unknowns themselves.
void add_coeff_columns(Eigen::MatrixXd& mat, int row, const MultiIndex& beta, double coef,
                       int order) {
  if (!beta.valid() || coef == 0.0) return;
  const int total = beta.total();
  if (total == 0) {
    mat(row, 0) += coef;
    return;
  }
  if (total == 1) return;
  if (total == 2) {
    int single = -1;
    for (int d = 0; d < 3; ++d) {
      if (beta[d] == 2) single = d;
    }
    if (single >= 0) {
      for (int i = 0; i < 3; ++i) {
        const double weight = (i == single ? 1.0 : 0.0) - 1.0 / 3.0;
        mat(row, rc(unit_index(i).plus(i))) += coef * weight;
      }
    } else {
      mat(row, rc(beta)) += coef;
    }
    return;
  }
  if (total <= order) mat(row, rc(beta)) += coef;
}

}  // namespace

double wigner_coefficient(int lambda_total, double hbar, double lambda_factorial,
                          double v_derivative) {
  const int half = (lambda_total - 1) / 2;
  const double sign = (half % 2 == 0) ? 1.0 : -1.0;
  return -sign * std::pow(0.5 * hbar, lambda_total - 1) / lambda_factorial * v_derivative;
}

std::map<int, double> wigner_source_column(int alpha, double hbar,
                                           const std::vector<double>& v_derivs) {
  std::map<int, double> out;
  for (int lambda = 1; lambda <= alpha; lambda += 2) {
    if (static_cast<size_t>(lambda) >= v_derivs.size()) {
      throw std::out_of_range("wigner_source_column: derivative table too short");
    }
    out[alpha - lambda] =
        wigner_coefficient(lambda, hbar, factorial(lambda), v_derivs[static_cast<size_t>(lambda)]);
  }
  return out;
}

std::map<MultiIndex, double> wigner_source_column(const MultiIndex& alpha, double hbar,
                                                  const Potential3D& pot,
                                                  const std::array<double, 3>& x) {
  if (!alpha.valid()) {
    throw std::invalid_argument("wigner_source_column: negative component in alpha");
  }
  std::map<MultiIndex, double> out;
  for (int l1 = 0; l1 <= alpha[0]; ++l1) {
    for (int l2 = 0; l2 <= alpha[1]; ++l2) {
      for (int l3 = 0; l3 <= alpha[2]; ++l3) {
        const MultiIndex lambda{l1, l2, l3};
        const int total = lambda.total();
        if (total % 2 == 0 || total < 1) continue;
        const MultiIndex target{alpha[0] - l1, alpha[1] - l2, alpha[2] - l3};
        out[target] = wigner_coefficient(total, hbar, multi_factorial(lambda),
                                         pot.derivative(lambda, x));
      }
    }
  }
  return out;
}

Eigen::MatrixXd convective_matrix_1d(const MomentState1D& state, bool regularized) {
  check_state_1d(state);
  const int m = state.order;
  const double rho = state.rho;
  const double u = state.u;
  const double t = state.temperature();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, m + 1);

  a(0, 0) = u;
  a(0, 1) = rho;
  a(1, 1) = u;
  a(1, 2) = 2.0 / rho;
  a(2, 1) = 3.0 * state.half_pressure; // (3/2) P
  a(2, 2) = u;
  a(2, 3) = 3.0;

  const auto cf = [&](int k) { return state.moment_coeff(k); };
  for (int n = 3; n <= m; ++n) {
    const bool erase = regularized && n == m;
    // Coefficient of the temperature gradient, split below onto the density
    // and half-pressure columns; the (n+1) part is erased by regularization.
    const double s = t * cf(n - 3) + (erase ? 0.0 : (n + 1) * cf(n - 1));
    a(n, 0) += -t * s / (2.0 * rho);
    if (!erase) a(n, 1) += (n + 1) * cf(n);
    a(n, 2) += -2.0 * cf(n - 1) / rho + s / rho;
    a(n, 3) += -3.0 * cf(n - 2) / rho;
    if (n - 1 >= 3) a(n, n - 1) += t;
    a(n, n) += u;
    if (n < m) a(n, n + 1) += static_cast<double>(n + 1);
  }
  return a;
}

Eigen::MatrixXd source_matrix_1d(const MomentState1D& state,
                                 const std::vector<double>& v_derivs, double tau,
                                 double hbar) {
  check_state_1d(state);
  check_tau(tau);
  const int m = state.order;
  if (v_derivs.size() < 2) {
    throw std::invalid_argument("source_matrix_1d: need at least V' in the derivative table");
  }
  if (hbar != 0.0 && v_derivs.size() < static_cast<size_t>(m) + 1) {
    throw std::invalid_argument("source_matrix_1d: derivative table too short for the quantum terms");
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m + 1, m + 1);
  g(1, 0) = -v_derivs[1] / state.rho;
  for (int n = 3; n <= m; ++n) g(n, n) = -1.0 / tau;
  if (hbar != 0.0) {
    for (int n = 3; n <= m; ++n) {
      for (int lambda = 3; lambda <= n; lambda += 2) {
        const int target = n - lambda;
        // First- and second-order coefficients vanish identically in the
        // velocity-adapted basis, so those target columns carry nothing.
        if (target == 1 || target == 2) continue;
        g(n, target) += wigner_coefficient(lambda, hbar, factorial(lambda),
                                           v_derivs[static_cast<size_t>(lambda)]);
      }
    }
  }
  return g;
}

QuasiLinearSystem1D assemble_1d(const MomentState1D& state,
                                const std::vector<double>& v_derivs, double tau,
                                double hbar, bool regularized) {
  QuasiLinearSystem1D sys;
  sys.order = state.order;
  sys.a = convective_matrix_1d(state, regularized);
  sys.g = source_matrix_1d(state, v_derivs, tau, hbar);
  sys.regularized = regularized;
  return sys;
}

QuasiLinearSystem1D assemble_1d(const MomentState1D& state, const Potential1D& pot,
                                double x, double tau, double hbar, bool regularized) {
  const int max_order = hbar != 0.0 ? state.order : 1;
  return assemble_1d(state, potential_derivs(pot, x, max_order), tau, hbar, regularized);
}

std::array<Eigen::MatrixXd, 3> convective_matrices_3d(const MomentState3D& state,
                                                      bool regularized) {
  check_state_3d(state);
  const int m = state.order;
  const int n = index_set_size(m);
  const double rho = state.rho;
  const double t = state.temperature();
  const auto& u = state.u;
  const auto cf = [&](const MultiIndex& beta) { return state.moment_coeff(beta); };

  std::array<Eigen::MatrixXd, 3> mats{Eigen::MatrixXd::Zero(n, n),
                                      Eigen::MatrixXd::Zero(n, n),
                                      Eigen::MatrixXd::Zero(n, n)};

  for (const MultiIndex& alpha : enumerate_index_set(m)) {
    const int row = rc(alpha);
    const int total = alpha.total();

    if (total == 0) { // continuity
      for (int j = 0; j < 3; ++j) {
        mats[static_cast<size_t>(j)](row, 0) += u[static_cast<size_t>(j)];
        mats[static_cast<size_t>(j)](row, rc(unit_index(j))) += rho;
      }
      continue;
    }

    if (total == 1) { // velocity components
      int dir = 0;
      while (alpha[dir] == 0) ++dir;
      for (int j = 0; j < 3; ++j) {
        auto& mj = mats[static_cast<size_t>(j)];
        mj(row, row) += u[static_cast<size_t>(j)];
        if (j == dir) {
          mj(row, rc(unit_index(j).plus(j))) += 2.0 / rho;
        } else {
          mj(row, rc(unit_index(j).plus(dir))) += 1.0 / rho;
        }
      }
      continue;
    }

    if (total == 2 && (alpha[0] == 2 || alpha[1] == 2 || alpha[2] == 2)) {
      // Half diagonal pressure p_ii / 2.
      int i = 0;
      while (alpha[i] != 2) ++i;
      for (int j = 0; j < 3; ++j) {
        auto& mj = mats[static_cast<size_t>(j)];
        const double delta = (i == j) ? 1.0 : 0.0;
        mj(row, row) += u[static_cast<size_t>(j)];
        mj(row, rc(unit_index(j))) += (0.5 + delta) * rho * t;
        for (int d = 0; d < 3; ++d) {
          mj(row, rc(unit_index(d))) +=
              (2.0 * delta + 1.0) * cf(alpha.minus(d).plus(j));
        }
        add_coeff_columns(mj, row, alpha.plus(j), 2.0 * delta + 1.0, m);
      }
      continue;
    }

    // General moment row: off-diagonal pressure (|alpha| = 2) and every
    // higher coefficient.
    const bool erase = regularized && total == m;
    double sum2 = 0.0;
    for (int k = 0; k < 3; ++k) sum2 += cf(alpha.minus(k).minus(k));

    for (int j = 0; j < 3; ++j) {
      auto& mj = mats[static_cast<size_t>(j)];
      const double aj1 = static_cast<double>(alpha[j] + 1);

      add_coeff_columns(mj, row, alpha.minus(j), t, m);
      mj(row, row) += u[static_cast<size_t>(j)];
      if (total < m) add_coeff_columns(mj, row, alpha.plus(j), aj1, m);

      for (int d = 0; d < 3; ++d) {
        double c = t * cf(alpha.minus(d).minus(j)) -
                   state.pressure(j, d) / (3.0 * rho) * sum2;
        if (!erase) c += aj1 * cf(alpha.minus(d).plus(j));
        mj(row, rc(unit_index(d))) += c;
      }

      for (int d = 0; d < 3; ++d) {
        const double c = cf(alpha.minus(d)) / rho;
        if (j == d) {
          mj(row, rc(unit_index(j).plus(j))) += -2.0 * c;
        } else {
          mj(row, rc(unit_index(j).plus(d))) += -c;
        }
      }

      const double cq = sum2 / (3.0 * rho);
      mj(row, rc(unit_index(j).plus(j).plus(j))) += -3.0 * cq;
      for (int d = 0; d < 3; ++d) {
        if (d != j) mj(row, rc(unit_index(d).plus(d).plus(j))) += -cq;
      }

      double sj = 0.0;
      for (int k = 0; k < 3; ++k) {
        sj += t * cf(alpha.minus(k).minus(k).minus(j));
        if (!erase) sj += aj1 * cf(alpha.minus(k).minus(k).plus(j));
      }
      mj(row, 0) += -t * sj / (2.0 * rho);
      for (int d = 0; d < 3; ++d) {
        mj(row, rc(unit_index(d).plus(d))) += sj / (3.0 * rho);
      }
    }
  }
  return mats;
}

QuasiLinearSystem3D assemble_3d(const MomentState3D& state, const Potential3D& pot,
                                const std::array<double, 3>& x, double tau, double hbar,
                                bool regularized) {
  check_tau(tau);
  QuasiLinearSystem3D sys;
  sys.order = state.order;
  sys.m = convective_matrices_3d(state, regularized);
  sys.regularized = regularized;

  const int m = state.order;
  const int n = index_set_size(m);
  sys.g = Eigen::MatrixXd::Zero(n, n);

  for (int d = 0; d < 3; ++d) {
    sys.g(rc(unit_index(d)), 0) = -pot.derivative(unit_index(d), x) / state.rho;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double delta = (i == j) ? 1.0 : 0.0;
      sys.g(rc(unit_index(i).plus(i)), rc(unit_index(j).plus(j))) =
          -(delta - 1.0 / 3.0) / tau;
    }
  }

  for (const MultiIndex& alpha : enumerate_index_set(m)) {
    const int total = alpha.total();
    const int row = rc(alpha);
    const bool mixed_pair = total == 2 && alpha[0] != 2 && alpha[1] != 2 && alpha[2] != 2;
    if (total >= 3 || mixed_pair) sys.g(row, row) += -1.0 / tau;
    if (total < 3 || hbar == 0.0) continue;
    for (const auto& [target, coef] : wigner_source_column(alpha, hbar, pot, x)) {
      // |lambda| = 1 is the classical force; that part already enters through
      // the velocity rows, so the source matrix keeps only |lambda| >= 3.
      if (target.total() == alpha.total() - 1) continue;
      add_coeff_columns(sys.g, row, target, coef, m);
    }
  }
  return sys;
}

}  // namespace wm
