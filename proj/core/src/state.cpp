#include "wm/state.hpp"

#include <cmath>
#include <stdexcept>

#include "wm/hermite.hpp"

namespace wm {

namespace {

void check_order(int order) {
  if (order < 3) throw std::invalid_argument("moment state: order must be >= 3");
}

// Ordinal of the first third-order index; stored coefficients start here.
constexpr int kFirstHighOrdinal = 11;

int coeff_slot(int order, const MultiIndex& alpha) {
  if (!alpha.valid() || alpha.total() < 3 || alpha.total() > order) {
    throw std::invalid_argument("moment state: coefficient index out of range");
  }
  return ordinal(alpha) - kFirstHighOrdinal;
}

}  // namespace

double MomentState1D::moment_coeff(int n) const {
  if (n == 0) return rho;
  if (n < 0 || n == 1 || n == 2 || n > order) return 0.0;
  return coeffs[static_cast<size_t>(n - 3)];
}

bool MomentState1D::admissible() const {
  if (!(rho > 0.0) || !(half_pressure > 0.0)) return false;
  if (!std::isfinite(rho) || !std::isfinite(u) || !std::isfinite(half_pressure)) return false;
  if (coeffs.size() != static_cast<size_t>(order - 2)) return false;
  for (double f : coeffs) {
    if (!std::isfinite(f)) return false;
  }
  return true;
}

Eigen::VectorXd MomentState1D::to_vector() const {
  Eigen::VectorXd w(order + 1);
  w(0) = rho;
  w(1) = u;
  w(2) = half_pressure;
  for (int n = 3; n <= order; ++n) w(n) = coeffs[static_cast<size_t>(n - 3)];
  return w;
}

MomentState1D MomentState1D::from_vector(int order, const Eigen::VectorXd& w) {
  check_order(order);
  if (w.size() != order + 1) {
    throw std::invalid_argument("MomentState1D: vector length must be order + 1");
  }
  MomentState1D s;
  s.order = order;
  s.rho = w(0);
  s.u = w(1);
  s.half_pressure = w(2);
  s.coeffs.assign(static_cast<size_t>(order - 2), 0.0);
  for (int n = 3; n <= order; ++n) s.coeffs[static_cast<size_t>(n - 3)] = w(n);
  return s;
}

double MomentState3D::moment_coeff(const MultiIndex& alpha) const {
  if (!alpha.valid()) return 0.0;
  const int total = alpha.total();
  if (total == 0) return rho;
  if (total == 1) return 0.0;
  if (total == 2) {
    int dims[2];
    int pos = 0;
    for (int d = 0; d < 3; ++d) {
      for (int k = 0; k < alpha[d]; ++k) dims[pos++] = d;
    }
    // f_{e_i+e_j} = (p_ij - delta_ij rho T) / (1 + delta_ij)
    const int i = dims[0];
    const int j = dims[1];
    if (i == j) return 0.5 * (pressure(i, j) - rho * temperature());
    return pressure(i, j);
  }
  if (total > order) return 0.0;
  return coeffs[static_cast<size_t>(ordinal(alpha) - kFirstHighOrdinal)];
}

double& MomentState3D::coeff(const MultiIndex& alpha) {
  return coeffs[static_cast<size_t>(coeff_slot(order, alpha))];
}

bool MomentState3D::admissible() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) return false;
  for (double ud : u) {
    if (!std::isfinite(ud)) return false;
  }
  if (!pressure.allFinite()) return false;
  if (!(temperature() > 0.0)) return false;
  if (coeffs.size() != static_cast<size_t>(index_set_size(order) - kFirstHighOrdinal + 1)) {
    return false;
  }
  for (double f : coeffs) {
    if (!std::isfinite(f)) return false;
  }
  return true;
}

Eigen::VectorXd MomentState3D::to_vector() const {
  const int n = index_set_size(order);
  Eigen::VectorXd w(n);
  w(0) = rho;
  for (int d = 0; d < 3; ++d) {
    w(ordinal(unit_index(d)) - 1) = u[static_cast<size_t>(d)];
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      MultiIndex alpha = unit_index(i).plus(j);
      w(ordinal(alpha) - 1) = (i == j) ? 0.5 * pressure(i, i) : pressure(i, j);
    }
  }
  for (size_t k = 0; k < coeffs.size(); ++k) {
    w(kFirstHighOrdinal - 1 + static_cast<int>(k)) = coeffs[k];
  }
  return w;
}

MomentState3D MomentState3D::from_vector(int order, const Eigen::VectorXd& w) {
  check_order(order);
  const int n = index_set_size(order);
  if (w.size() != n) {
    throw std::invalid_argument("MomentState3D: vector length must be C(order+3,3)");
  }
  MomentState3D s;
  s.order = order;
  s.rho = w(0);
  for (int d = 0; d < 3; ++d) {
    s.u[static_cast<size_t>(d)] = w(ordinal(unit_index(d)) - 1);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      MultiIndex alpha = unit_index(i).plus(j);
      const double entry = w(ordinal(alpha) - 1);
      const double p = (i == j) ? 2.0 * entry : entry;
      s.pressure(i, j) = p;
      s.pressure(j, i) = p;
    }
  }
  s.coeffs.assign(static_cast<size_t>(n - kFirstHighOrdinal + 1), 0.0);
  for (size_t k = 0; k < s.coeffs.size(); ++k) {
    s.coeffs[k] = w(kFirstHighOrdinal - 1 + static_cast<int>(k));
  }
  return s;
}

MomentState1D maxwellian_state_1d(int order, double rho, double u, double temperature) {
  check_order(order);
  if (!(rho > 0.0) || !(temperature > 0.0)) {
    throw std::domain_error("maxwellian_state_1d: rho and temperature must be positive");
  }
  MomentState1D s;
  s.order = order;
  s.rho = rho;
  s.u = u;
  s.half_pressure = 0.5 * rho * temperature;
  s.coeffs.assign(static_cast<size_t>(order - 2), 0.0);
  return s;
}

MomentState3D maxwellian_state_3d(int order, double rho, const std::array<double, 3>& u,
                                  double temperature) {
  check_order(order);
  if (!(rho > 0.0) || !(temperature > 0.0)) {
    throw std::domain_error("maxwellian_state_3d: rho and temperature must be positive");
  }
  MomentState3D s;
  s.order = order;
  s.rho = rho;
  s.u = u;
  s.pressure = rho * temperature * Eigen::Matrix3d::Identity();
  s.coeffs.assign(static_cast<size_t>(index_set_size(order) - kFirstHighOrdinal + 1), 0.0);
  return s;
}

Derived1D derived_quantities(const MomentState1D& state) {
  return {state.temperature(), 3.0 * state.moment_coeff(3)};
}

Derived3D derived_quantities(const MomentState3D& state) {
  Derived3D d;
  d.temperature = state.temperature();
  for (int i = 0; i < 3; ++i) {
    MultiIndex three = unit_index(i).plus(i).plus(i);
    double q = 2.0 * state.moment_coeff(three);
    for (int k = 0; k < 3; ++k) {
      q += state.moment_coeff(unit_index(k).plus(k).plus(i));
    }
    d.heat_flux[static_cast<size_t>(i)] = q;
    for (int j = 0; j < 3; ++j) {
      d.second_coeffs(i, j) = state.moment_coeff(unit_index(i).plus(j));
    }
  }
  return d;
}

ForeignMoments foreign_expansion_moments(double fprime0,
                                         const std::array<double, 3>& fprime_first,
                                         const std::array<double, 3>& fprime_second_diag,
                                         const std::array<double, 3>& u_prime,
                                         double t_prime) {
  if (!(fprime0 > 0.0)) {
    throw std::domain_error("foreign_expansion_moments: density must be positive");
  }
  if (!(t_prime > 0.0)) {
    throw std::domain_error("foreign_expansion_moments: foreign temperature must be positive");
  }
  ForeignMoments out;
  out.rho = fprime0;
  double shift_sq = 0.0;
  double energy = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double ud = u_prime[static_cast<size_t>(d)] + fprime_first[static_cast<size_t>(d)] / fprime0;
    out.u[static_cast<size_t>(d)] = ud;
    const double delta = ud - u_prime[static_cast<size_t>(d)];
    shift_sq += delta * delta;
    energy += t_prime * fprime0 + 2.0 * fprime_second_diag[static_cast<size_t>(d)];
  }
  out.temperature = (energy - fprime0 * shift_sq) / (3.0 * fprime0);
  if (!(out.temperature > 0.0)) {
    throw std::domain_error("foreign_expansion_moments: recovered temperature is not positive");
  }
  return out;
}

double reconstruct_distribution(const MomentState1D& state, double v) {
  const BasisParams1D params{state.temperature(), state.u};
  double acc = state.rho * basis_eval(params, 0, v);
  for (int n = 3; n <= state.order; ++n) {
    acc += state.moment_coeff(n) * basis_eval(params, n, v);
  }
  return acc;
}

double reconstruct_distribution(const MomentState3D& state, const std::array<double, 3>& v) {
  const BasisParams3D params{state.temperature(), state.u};
  double acc = 0.0;
  for (const MultiIndex& alpha : enumerate_index_set(state.order)) {
    const double f = state.moment_coeff(alpha);
    if (f != 0.0) acc += f * basis_eval(params, alpha, v);
  }
  return acc;
}

}  // namespace wm
