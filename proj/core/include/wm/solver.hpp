#pragma once

#include <string>
#include <vector>

#include "wm/potential.hpp"
#include "wm/state.hpp"

namespace wm {

/// Uniform 1D mesh of cell-centered states.
struct Grid1D {
  enum class Boundary { kPeriodic, kZeroGradient };

  double x_min = -1.0;
  double x_max = 1.0;
  int cells = 8; // >= 8
  Boundary boundary = Boundary::kPeriodic;

  double dx() const { return (x_max - x_min) / cells; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
  bool valid() const { return x_max > x_min && cells >= 8; }
};

/// Run parameters for the 1D time integrator.
struct SolverConfig {
  int order = 3;           // truncation order M >= 3
  double cfl = 0.45;       // in (0, 1)
  double t_end = 1.0;      // > 0
  double hbar = 0.0;       // >= 0
  double tau = 1.0;        // > 0 (use a large value for near-collisionless runs)
  Potential1D potential = Potential1D::zero();
  int output_stride = 1;   // diagnostics every this many steps
  std::vector<double> record_times; // exact landing times for field snapshots
  bool zero_wigner = false; // diagnostic switch: drop the quantum source path

  bool valid() const {
    return order >= 3 && cfl > 0.0 && cfl < 1.0 && t_end > 0.0 && hbar >= 0.0 && tau > 0.0 &&
           output_stride >= 1;
  }
};

using Field1D = std::vector<MomentState1D>;

/// Conserved-quantity totals and balance residuals at one diagnostic time.
/// The residuals compare the change of a total since t = 0 against the
/// accumulated amount the source terms actually injected, normalized by the
/// larger of the injected amount and the initial total magnitude; transport
/// is the only remaining contributor, so the residuals measure scheme error.
struct StepDiagnostics {
  double time = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0; // sum of rho u^2/2 + P/2 times dx
  double applied_momentum = 0.0; // cumulative momentum injected by the sources
  double applied_energy = 0.0;   // cumulative energy injected by the sources
  double momentum_residual = 0.0;
  double energy_residual = 0.0;
};

struct FieldSnapshot {
  double time = 0.0;
  Field1D field;
};

struct Trajectory {
  std::vector<double> times;                // diagnostic times, strictly increasing
  std::vector<StepDiagnostics> diagnostics; // aligned with times
  std::vector<FieldSnapshot> snapshots;     // at requested record times plus t_end
};

struct RunResult {
  Trajectory trajectory;
  bool failed = false;
  std::string failure_message;
  double failure_time = 0.0;
};

/// Largest stable time step: cfl * dx / max over cells of (|u| + c_max sqrt(T)),
/// with c_max the largest characteristic-speed coefficient of the order-M
/// system. Throws std::domain_error naming the first inadmissible cell.
double stable_dt(const Field1D& field, const Grid1D& grid, double cfl);

/// One first-order characteristic-upwind transport step of size dt: at each
/// interface the convective matrix is frozen at the average of the adjacent
/// states, its characteristic fields are upwinded, and both neighbors receive
/// their share of the jump. Throws std::runtime_error on positivity loss,
/// naming the cell.
void transport_step(Field1D& field, const Grid1D& grid, double dt);

/// Integrates the local source terms over dt in every cell: the relaxation
/// diagonal exactly (factor e^{-dt/tau} applied in two half steps) and the
/// force plus quantum entries with one explicit midpoint substep.
/// When applied_momentum / applied_energy are non-null, the momentum and
/// energy the sources injected (times dx) are accumulated into them.
void source_step(Field1D& field, const Grid1D& grid, double dt, const SolverConfig& config,
                 double* applied_momentum = nullptr, double* applied_energy = nullptr);

/// Strang-split time loop source(dt/2) -> transport(dt) -> source(dt/2) from
/// the given initial field until t_end. Diagnostics are recorded at t = 0,
/// every output_stride steps, and at t_end; snapshots are recorded exactly at
/// each requested record time and at t_end. On solver failure the trajectory
/// up to the failure time is returned with the failure recorded.
RunResult run(const SolverConfig& config, const Grid1D& grid, const Field1D& initial);

}  // namespace wm
