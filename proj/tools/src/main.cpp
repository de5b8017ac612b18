#include "options.hpp"
#include "verbs.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <string>

namespace {

struct FlagValues {
  std::string config_path;
  std::string scenario;
  int order = 0;
  int cells = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double cfl = 0.0;
  double t_end = 0.0;
  double hbar = 0.0;
  double tau = 0.0;
  std::string potential;
  std::string output_dir;
  unsigned long long seed = 0;
  std::string boundary;
  std::string record_times;
  int stride = 0;
  double state_x = 0.0;
  double state_rho = 0.0;
  double state_u = 0.0;
  double state_temperature = 0.0;
  std::string state_coeffs;
  std::string closure;
  int samples = 0;
  int dimension = 0;
};

/// Registers the shared flag set on one subcommand and returns a callback
/// that collects only the flags the user actually passed, so they override
/// config file entries without clobbering preset defaults.
std::function<wmtool::KeyValueMap()> register_flags(CLI::App* cmd, FlagValues& v) {
  cmd->add_option("config", v.config_path, "key=value config file (flags override it)");
  auto* scenario = cmd->add_option("--scenario", v.scenario,
                                   "preset: equilibrium, harmonic-classical, bump-tunneling, "
                                   "classical-steady");
  auto* order = cmd->add_option("--order", v.order, "moment truncation order M >= 3");
  auto* cells = cmd->add_option("--cells", v.cells, "number of mesh cells");
  auto* x_min = cmd->add_option("--x-min", v.x_min, "left domain edge");
  auto* x_max = cmd->add_option("--x-max", v.x_max, "right domain edge");
  auto* cfl = cmd->add_option("--cfl", v.cfl, "CFL number in (0, 1)");
  auto* t_end = cmd->add_option("--t-end", v.t_end, "final time (also the asymptotics time)");
  auto* hbar = cmd->add_option("--hbar", v.hbar, "scaled Planck constant (0 = classical)");
  auto* tau = cmd->add_option("--tau", v.tau, "relaxation time");
  auto* potential = cmd->add_option("--potential", v.potential,
                                    "kind[:param], e.g. bump, bump:2, harmonic:0.5, linear:1, "
                                    "polynomial:0,0,0.5");
  auto* output_dir = cmd->add_option("--output-dir", v.output_dir, "directory for output files");
  auto* seed = cmd->add_option("--seed", v.seed, "seed for randomized reports");
  auto* boundary = cmd->add_option("--boundary", v.boundary, "periodic or zero-gradient");
  auto* record = cmd->add_option("--record-times", v.record_times,
                                 "comma-separated snapshot times");
  auto* stride = cmd->add_option("--stride", v.stride, "diagnostics every this many steps");
  auto* state_x = cmd->add_option("--at", v.state_x, "evaluation position x");
  auto* state_rho = cmd->add_option("--rho", v.state_rho, "inline state density");
  auto* state_u = cmd->add_option("--u", v.state_u, "inline state velocity");
  auto* state_temp = cmd->add_option("--temperature", v.state_temperature,
                                     "inline state scaled temperature");
  auto* state_coeffs = cmd->add_option("--coeffs", v.state_coeffs,
                                       "comma-separated inline f3..fM");
  auto* closure = cmd->add_option("--closure", v.closure, "regularized (default) or grad");
  auto* samples = cmd->add_option("--samples", v.samples, "random states per report");
  auto* dimension = cmd->add_option("--dimension", v.dimension, "1 or 3");

  return [=, &v]() {
    wmtool::KeyValueMap kv;
    if (scenario->count()) kv["scenario"] = v.scenario;
    if (order->count()) kv["order"] = std::to_string(v.order);
    if (cells->count()) kv["grid.cells"] = std::to_string(v.cells);
    if (x_min->count()) kv["grid.x-min"] = std::to_string(v.x_min);
    if (x_max->count()) kv["grid.x-max"] = std::to_string(v.x_max);
    if (cfl->count()) kv["solver.cfl"] = std::to_string(v.cfl);
    if (t_end->count()) kv["solver.t-end"] = std::to_string(v.t_end);
    if (hbar->count()) kv["physics.hbar"] = std::to_string(v.hbar);
    if (tau->count()) kv["physics.tau"] = std::to_string(v.tau);
    if (potential->count()) wmtool::expand_potential_flag(v.potential, kv);
    if (output_dir->count()) kv["output.dir"] = v.output_dir;
    if (seed->count()) kv["seed"] = std::to_string(v.seed);
    if (boundary->count()) kv["grid.boundary"] = v.boundary;
    if (record->count()) kv["solver.record-times"] = v.record_times;
    if (stride->count()) kv["solver.stride"] = std::to_string(v.stride);
    if (state_x->count()) kv["state.x"] = std::to_string(v.state_x);
    if (state_rho->count()) kv["state.rho"] = std::to_string(v.state_rho);
    if (state_u->count()) kv["state.u"] = std::to_string(v.state_u);
    if (state_temp->count()) kv["state.temperature"] = std::to_string(v.state_temperature);
    if (state_coeffs->count()) kv["state.coeffs"] = v.state_coeffs;
    if (closure->count()) kv["state.closure"] = v.closure;
    if (samples->count()) kv["report.samples"] = std::to_string(v.samples);
    if (dimension->count()) kv["report.dimension"] = std::to_string(v.dimension);
    return kv;
  };
}

int dispatch(const FlagValues& values, const std::function<wmtool::KeyValueMap()>& collect,
             int (*verb)(const wmtool::ResolvedOptions&)) {
  try {
    wmtool::KeyValueMap file_entries;
    if (!values.config_path.empty()) {
      file_entries = wmtool::load_config_file(values.config_path);
    }
    const wmtool::ResolvedOptions opt = wmtool::resolve_options(file_entries, collect());
    return verb(opt);
  } catch (const wmtool::ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return wmtool::kExitConfigError;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return wmtool::kExitSolverFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-closure toolkit for quantum kinetic transport"};
  app.require_subcommand(1);

  FlagValues run_values, dump_values, eigen_values, asym_values;

  CLI::App* run_cmd = app.add_subcommand("run", "integrate a 1D scenario and export CSV");
  auto run_collect = register_flags(run_cmd, run_values);

  CLI::App* dump_cmd =
      app.add_subcommand("dump-system", "assemble the quasi-linear system at one state");
  auto dump_collect = register_flags(dump_cmd, dump_values);

  CLI::App* eigen_cmd =
      app.add_subcommand("eigen-report", "certify spectra at random admissible states");
  auto eigen_collect = register_flags(eigen_cmd, eigen_values);

  CLI::App* asym_cmd =
      app.add_subcommand("asymptotics", "evaluate the short-time quantum predictions");
  auto asym_collect = register_flags(asym_cmd, asym_values);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err); // --help
    app.exit(err);
    return wmtool::kExitConfigError;
  }

  if (run_cmd->parsed()) return dispatch(run_values, run_collect, wmtool::run_verb);
  if (dump_cmd->parsed()) return dispatch(dump_values, dump_collect, wmtool::dump_system_verb);
  if (eigen_cmd->parsed()) return dispatch(eigen_values, eigen_collect, wmtool::eigen_report_verb);
  if (asym_cmd->parsed()) return dispatch(asym_values, asym_collect, wmtool::asymptotics_verb);
  return wmtool::kExitConfigError;
}
