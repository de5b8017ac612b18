#include <wm/assembly.hpp>
#include <wm/hermite.hpp>
#include <wm/solver.hpp>
#include <wm/spectral.hpp>
#include <wm/state.hpp>

#include <benchmark/benchmark.h>

namespace {

wm::MomentState1D sample_state_1d(int order) {
  wm::MomentState1D state;
  state.order = order;
  state.rho = 1.2;
  state.u = 0.3;
  state.half_pressure = 0.8;
  state.coeffs.assign(static_cast<std::size_t>(order) - 2, 0.01);
  return state;
}

wm::MomentState3D sample_state_3d(int order) {
  wm::MomentState3D state;
  state.order = order;
  state.rho = 1.2;
  state.u = {0.3, -0.1, 0.2};
  state.pressure = Eigen::Matrix3d::Identity();
  state.pressure(0, 1) = state.pressure(1, 0) = 0.05;
  state.coeffs.assign(static_cast<std::size_t>(wm::index_set_size(order)) - 10, 0.01);
  return state;
}

void BM_HermiteRoots(benchmark::State& bench) {
  const int degree = static_cast<int>(bench.range(0));
  for (auto _ : bench) {
    benchmark::DoNotOptimize(wm::hermite_roots(degree));
  }
}
BENCHMARK(BM_HermiteRoots)->Arg(4)->Arg(11)->Arg(21);

void BM_Assemble1D(benchmark::State& bench) {
  const int order = static_cast<int>(bench.range(0));
  const auto state = sample_state_1d(order);
  std::vector<double> derivs(static_cast<std::size_t>(order) + 1, 0.1);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(wm::assemble_1d(state, derivs, 1.0, 0.5, true));
  }
}
BENCHMARK(BM_Assemble1D)->Arg(3)->Arg(6)->Arg(10);

void BM_Assemble3D(benchmark::State& bench) {
  const int order = static_cast<int>(bench.range(0));
  const auto state = sample_state_3d(order);
  const auto pot = wm::Potential3D::harmonic({1.0, 1.0, 1.0});
  for (auto _ : bench) {
    benchmark::DoNotOptimize(wm::assemble_3d(state, pot, {0.1, 0.2, 0.3}, 1.0, 0.5, true));
  }
}
BENCHMARK(BM_Assemble3D)->Arg(3)->Arg(4)->Arg(5);

void BM_Certify1D(benchmark::State& bench) {
  const int order = static_cast<int>(bench.range(0));
  const auto state = sample_state_1d(order);
  const auto system = wm::assemble_1d(state, {0.0, 0.0}, 1.0, 0.0, true);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(wm::certify_1d(system, state));
  }
}
BENCHMARK(BM_Certify1D)->Arg(3)->Arg(6)->Arg(10);

void BM_Certify3D(benchmark::State& bench) {
  const int order = static_cast<int>(bench.range(0));
  const auto state = sample_state_3d(order);
  const auto system = wm::assemble_3d(state, wm::Potential3D::zero(), {0, 0, 0}, 1.0, 0.0, true);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(wm::certify_3d(system, state, {0.0, 0.0, 1.0}));
  }
}
BENCHMARK(BM_Certify3D)->Arg(3)->Arg(4)->Arg(5);

void BM_TransportStep(benchmark::State& bench) {
  const int cells = static_cast<int>(bench.range(0));
  wm::Grid1D grid{-1.0, 1.0, cells, wm::Grid1D::Boundary::kPeriodic};
  wm::Field1D field(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) {
    field[static_cast<std::size_t>(i)] =
        wm::maxwellian_state_1d(3, 1.0 + 0.1 * std::sin(grid.center(i)), 0.2, 1.0);
  }
  const double dt = wm::stable_dt(field, grid, 0.45);
  for (auto _ : bench) {
    wm::Field1D copy = field;
    wm::transport_step(copy, grid, dt);
    benchmark::DoNotOptimize(copy);
  }
}
BENCHMARK(BM_TransportStep)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
