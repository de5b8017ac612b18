#include "wm/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wm/assembly.hpp"
#include "wm/hermite.hpp"

namespace wm {

namespace {

void check_field(const Field1D& field, const Grid1D& grid) {
  if (!grid.valid()) throw std::invalid_argument("solver: invalid grid");
  if (field.size() != static_cast<size_t>(grid.cells)) {
    throw std::invalid_argument("solver: field size does not match the grid");
  }
}

struct Totals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

Totals field_totals(const Field1D& field, double dx) {
  Totals t;
  for (const auto& s : field) {
    t.mass += s.rho * dx;
    t.momentum += s.rho * s.u * dx;
    t.energy += (0.5 * s.rho * s.u * s.u + s.half_pressure) * dx;
  }
  return t;
}

}  // namespace

double stable_dt(const Field1D& field, const Grid1D& grid, double cfl) {
  check_field(field, grid);
  const double c_max = hermite_roots(field[0].order + 1).back();
  double speed = 0.0;
  for (size_t i = 0; i < field.size(); ++i) {
    if (!field[i].admissible()) {
      throw std::domain_error("stable_dt: inadmissible state in cell " + std::to_string(i));
    }
    speed = std::max(speed, std::abs(field[i].u) + c_max * std::sqrt(field[i].temperature()));
  }
  if (speed == 0.0) throw std::domain_error("stable_dt: zero wave speed");
  return cfl * grid.dx() / speed;
}

void transport_step(Field1D& field, const Grid1D& grid, double dt) {
  check_field(field, grid);
  const int cells = grid.cells;
  const int order = field[0].order;
  const int dim = order + 1;
  const double coef = dt / grid.dx();

  std::vector<Eigen::VectorXd> w(static_cast<size_t>(cells));
  for (int i = 0; i < cells; ++i) w[static_cast<size_t>(i)] = field[static_cast<size_t>(i)].to_vector();
  std::vector<Eigen::VectorXd> delta(static_cast<size_t>(cells), Eigen::VectorXd::Zero(dim));

  const bool periodic = grid.boundary == Grid1D::Boundary::kPeriodic;
  // Zero-gradient boundaries mirror the edge cell into the ghost, so the
  // boundary interfaces carry no jump and contribute nothing.
  const int interfaces = periodic ? cells : cells - 1;

  for (int k = 0; k < interfaces; ++k) {
    const int left = k;
    const int right = (k + 1) % cells;
    const Eigen::VectorXd jump = w[static_cast<size_t>(right)] - w[static_cast<size_t>(left)];
    if (jump.isZero(0.0)) continue;

    const MomentState1D avg = MomentState1D::from_vector(
        order, 0.5 * (w[static_cast<size_t>(left)] + w[static_cast<size_t>(right)]));
    if (!avg.admissible()) {
      throw std::runtime_error("transport_step: inadmissible interface state after cell " +
                               std::to_string(left));
    }
    const Eigen::MatrixXd a = convective_matrix_1d(avg, /*regularized=*/true);
    Eigen::EigenSolver<Eigen::MatrixXd> eig(a, /*computeEigenvectors=*/true);
    if (eig.info() != Eigen::Success) {
      throw std::runtime_error("transport_step: eigendecomposition failed after cell " +
                               std::to_string(left));
    }
    // The regularized spectrum is real for admissible states; the imaginary
    // parts are eigensolver round-off.
    const Eigen::VectorXd lambda = eig.eigenvalues().real();
    const Eigen::MatrixXd basis = eig.eigenvectors().real();
    const Eigen::VectorXd strengths = basis.partialPivLu().solve(jump);

    Eigen::VectorXd up = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd down = Eigen::VectorXd::Zero(dim);
    for (int c = 0; c < dim; ++c) {
      const Eigen::VectorXd wave = strengths(c) * basis.col(c);
      if (lambda(c) > 0.0) {
        up += lambda(c) * wave;
      } else {
        down += lambda(c) * wave;
      }
    }
    delta[static_cast<size_t>(left)] -= coef * down;
    delta[static_cast<size_t>(right)] -= coef * up;
  }

  for (int i = 0; i < cells; ++i) {
    if (delta[static_cast<size_t>(i)].isZero(0.0)) continue;
    MomentState1D next =
        MomentState1D::from_vector(order, w[static_cast<size_t>(i)] + delta[static_cast<size_t>(i)]);
    if (!next.admissible()) {
      throw std::runtime_error("transport_step: positivity loss in cell " + std::to_string(i));
    }
    field[static_cast<size_t>(i)] = next;
  }
}

void source_step(Field1D& field, const Grid1D& grid, double dt, const SolverConfig& config,
                 double* applied_momentum, double* applied_energy) {
  check_field(field, grid);
  if (!config.valid()) throw std::invalid_argument("source_step: invalid configuration");
  const int order = config.order;
  const double dx = grid.dx();
  const double decay = std::exp(-0.5 * dt / config.tau);
  const double hbar = config.zero_wigner ? 0.0 : config.hbar;
  const int deriv_order = hbar != 0.0 ? order : 1;

  for (int i = 0; i < grid.cells; ++i) {
    auto& s = field[static_cast<size_t>(i)];
    const double x = grid.center(i);
    const std::vector<double> dv = potential_derivs(config.potential, x, deriv_order);

    for (double& f : s.coeffs) f *= decay;

    // Force and quantum terms: dw/dt = L w with L constant over the substep
    // (the only state dependence of the sources is through rho, which they
    // do not change). One explicit midpoint substep.
    const double u_old = s.u;
    s.u += -dv[1] * dt;
    if (hbar != 0.0) {
      const size_t nf = s.coeffs.size();
      std::vector<double> rate(nf, 0.0), rate_half(nf, 0.0);
      std::vector<double> half(nf, 0.0);
      auto coeff_at = [&](const std::vector<double>& f, int k) {
        if (k == 0) return s.rho;
        if (k < 3 || k > order) return 0.0;
        return f[static_cast<size_t>(k - 3)];
      };
      for (int n = 3; n <= order; ++n) {
        double r = 0.0;
        for (int lam = 3; lam <= n; lam += 2) {
          const int target = n - lam;
          if (target == 1 || target == 2) continue;
          double fact = 1.0;
          for (int q = 2; q <= lam; ++q) fact *= q;
          r += wigner_coefficient(lam, hbar, fact, dv[static_cast<size_t>(lam)]) *
               coeff_at(s.coeffs, target);
        }
        rate[static_cast<size_t>(n - 3)] = r;
      }
      for (size_t k = 0; k < nf; ++k) half[k] = s.coeffs[k] + 0.5 * dt * rate[k];
      for (int n = 3; n <= order; ++n) {
        double r = 0.0;
        for (int lam = 3; lam <= n; lam += 2) {
          const int target = n - lam;
          if (target == 1 || target == 2) continue;
          double fact = 1.0;
          for (int q = 2; q <= lam; ++q) fact *= q;
          r += wigner_coefficient(lam, hbar, fact, dv[static_cast<size_t>(lam)]) *
               coeff_at(half, target);
        }
        rate_half[static_cast<size_t>(n - 3)] = r;
      }
      for (size_t k = 0; k < nf; ++k) s.coeffs[k] += dt * rate_half[k];
    }

    if (applied_momentum) *applied_momentum += s.rho * (s.u - u_old) * dx;
    if (applied_energy) *applied_energy += 0.5 * s.rho * (s.u * s.u - u_old * u_old) * dx;

    for (double& f : s.coeffs) f *= decay;
  }
}

RunResult run(const SolverConfig& config, const Grid1D& grid, const Field1D& initial) {
  if (!config.valid()) throw std::invalid_argument("run: invalid configuration");
  check_field(initial, grid);
  for (const auto& s : initial) {
    if (s.order != config.order) {
      throw std::invalid_argument("run: field order does not match the configuration");
    }
  }

  RunResult result;
  Field1D field = initial;
  const double dx = grid.dx();

  std::vector<double> records = config.record_times;
  std::sort(records.begin(), records.end());
  records.erase(std::unique(records.begin(), records.end()), records.end());

  double applied_momentum = 0.0;
  double applied_energy = 0.0;
  const Totals start = field_totals(field, dx);

  auto record_diagnostics = [&](double t) {
    const Totals now = field_totals(field, dx);
    StepDiagnostics d;
    d.time = t;
    d.mass = now.mass;
    d.momentum = now.momentum;
    d.energy = now.energy;
    d.applied_momentum = applied_momentum;
    d.applied_energy = applied_energy;
    const double mom_scale = std::max({std::abs(applied_momentum), std::abs(start.momentum), 1e-30});
    const double en_scale = std::max({std::abs(applied_energy), std::abs(start.energy), 1e-30});
    d.momentum_residual = std::abs(now.momentum - start.momentum - applied_momentum) / mom_scale;
    d.energy_residual = std::abs(now.energy - start.energy - applied_energy) / en_scale;
    result.trajectory.times.push_back(t);
    result.trajectory.diagnostics.push_back(d);
  };

  size_t next_record = 0;
  while (next_record < records.size() && records[next_record] <= 0.0) {
    result.trajectory.snapshots.push_back({0.0, field});
    ++next_record;
  }
  record_diagnostics(0.0);

  double t = 0.0;
  long step = 0;
  const double t_tol = 1e-12 * std::max(1.0, config.t_end);
  while (t < config.t_end - t_tol) {
    double dt;
    try {
      dt = stable_dt(field, grid, config.cfl);
      dt = std::min(dt, config.t_end - t);
      if (next_record < records.size() && records[next_record] < config.t_end) {
        const double gap = records[next_record] - t;
        if (gap > t_tol) dt = std::min(dt, gap);
      }
      source_step(field, grid, 0.5 * dt, config, &applied_momentum, &applied_energy);
      transport_step(field, grid, dt);
      source_step(field, grid, 0.5 * dt, config, &applied_momentum, &applied_energy);
    } catch (const std::exception& e) {
      result.failed = true;
      result.failure_message = e.what();
      result.failure_time = t;
      record_diagnostics(t);
      return result;
    }
    t += dt;
    ++step;

    while (next_record < records.size() && records[next_record] <= t + t_tol &&
           records[next_record] < config.t_end) {
      result.trajectory.snapshots.push_back({records[next_record], field});
      ++next_record;
    }
    if (step % config.output_stride == 0 || t >= config.t_end - t_tol) {
      record_diagnostics(t);
    }
  }

  result.trajectory.snapshots.push_back({config.t_end, field});
  return result;
}

}  // namespace wm
