#include "verbs.hpp"

#include <wm/assembly.hpp>
#include <wm/asymptotics.hpp>
#include <wm/spectral.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace wmtool {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string wall_time_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

/// Accumulates manifest content and writes it atomically (tmp file + rename)
/// so a crash never leaves a truncated manifest behind.
class ManifestWriter {
 public:
  ManifestWriter(std::string verb, const ResolvedOptions& opt)
      : dir_(opt.output_dir), verb_(std::move(verb)), started_(wall_time_utc()) {
    for (const auto& [key, value] : opt.echo) config_[key] = value;
  }

  std::ofstream open_file(const std::string& name) {
    std::filesystem::create_directories(dir_);
    files_.push_back(name);
    std::ofstream out(std::filesystem::path(dir_) / name);
    if (!out) throw std::runtime_error("cannot open output file '" + name + "'");
    return out;
  }

  void record_failure(const std::string& message, double time) {
    failure_ = nlohmann::json{{"message", message}, {"time", time}};
  }

  void write(int exit_code) {
    nlohmann::json doc;
    doc["verb"] = verb_;
    doc["version"] = kVersion;
    doc["started"] = started_;
    doc["finished"] = wall_time_utc();
    doc["config"] = config_;
    doc["files"] = files_;
    doc["failure"] = failure_;
    doc["exit_code"] = exit_code;
    std::filesystem::create_directories(dir_);
    const auto path = std::filesystem::path(dir_) / "manifest.json";
    const auto tmp = std::filesystem::path(dir_) / "manifest.json.tmp";
    {
      std::ofstream out(tmp);
      out << doc.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::string dir_;
  std::string verb_;
  std::string started_;
  nlohmann::json config_ = nlohmann::json::object();
  std::vector<std::string> files_;
  nlohmann::json failure_;
};

void write_matrix_csv(std::ofstream& out, const Eigen::MatrixXd& mat,
                      const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << "\n";
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    for (Eigen::Index c = 0; c < mat.cols(); ++c) {
      out << (c ? "," : "") << fmt17(mat(r, c));
    }
    out << "\n";
  }
}

std::vector<std::string> unknown_names_1d(int order) {
  std::vector<std::string> names{"rho", "u", "P/2"};
  for (int n = 3; n <= order; ++n) names.push_back("f" + std::to_string(n));
  return names;
}

std::vector<std::string> unknown_names_3d(int order) {
  std::vector<std::string> names;
  for (const wm::MultiIndex& alpha : wm::enumerate_index_set(order)) {
    const int total = alpha.total();
    if (total == 0) {
      names.push_back("rho");
    } else if (total == 1) {
      for (int d = 0; d < 3; ++d) {
        if (alpha[d] == 1) names.push_back("u" + std::to_string(d + 1));
      }
    } else if (total == 2) {
      int dims[2] = {0, 0};
      int pos = 0;
      for (int d = 0; d < 3; ++d) {
        for (int k = 0; k < alpha[d]; ++k) dims[pos++] = d;
      }
      const std::string ij = std::to_string(dims[0] + 1) + std::to_string(dims[1] + 1);
      names.push_back(dims[0] == dims[1] ? "p" + ij + "/2" : "p" + ij);
    } else {
      names.push_back("f" + std::to_string(alpha[0]) + std::to_string(alpha[1]) +
                      std::to_string(alpha[2]));
    }
  }
  return names;
}

wm::MomentState1D inline_state_1d(const ResolvedOptions& opt) {
  wm::MomentState1D state;
  state.order = opt.order;
  state.rho = opt.state_rho;
  state.u = opt.state_u;
  state.half_pressure = 0.5 * opt.state_rho * opt.state_temperature;
  state.coeffs = opt.state_coeffs;
  state.coeffs.resize(static_cast<std::size_t>(opt.order) - 2, 0.0);
  return state;
}

wm::MomentState3D inline_state_3d(const ResolvedOptions& opt) {
  wm::MomentState3D state;
  state.order = opt.order;
  state.rho = opt.state_rho;
  state.u = {opt.state_u, 0.0, 0.0};
  state.pressure = opt.state_rho * opt.state_temperature * Eigen::Matrix3d::Identity();
  state.coeffs.assign(static_cast<std::size_t>(wm::index_set_size(opt.order)) - 10, 0.0);
  return state;
}

}  // namespace

int run_verb(const ResolvedOptions& opt) {
  ManifestWriter manifest("run", opt);

  wm::SolverConfig config;
  config.order = opt.order;
  config.cfl = opt.cfl;
  config.t_end = opt.t_end;
  config.hbar = opt.hbar;
  config.tau = opt.tau;
  config.potential = opt.potential;
  config.output_stride = opt.stride;
  config.record_times = opt.record_times;
  config.record_times.push_back(0.0);

  const wm::Field1D initial = build_initial_field(opt);

  for (int i = 0; i < opt.grid.cells; ++i) {
    const auto system = wm::assemble_1d(initial[static_cast<std::size_t>(i)], opt.potential,
                                        opt.grid.center(i), opt.tau, opt.hbar,
                                        /*regularized=*/true);
    const auto report = wm::certify_1d(system, initial[static_cast<std::size_t>(i)]);
    if (!report.hyperbolic) {
      manifest.record_failure("initial state in cell " + std::to_string(i) +
                                  " failed the hyperbolicity certificate",
                              0.0);
      manifest.write(kExitCertificationFailure);
      return kExitCertificationFailure;
    }
  }

  const wm::RunResult result = wm::run(config, opt.grid, initial);

  {
    std::ofstream out = manifest.open_file("trajectory.csv");
    out << "t,x,rho,u,P";
    for (int n = 3; n <= opt.order; ++n) out << ",f" << n;
    out << "\n";
    for (const wm::FieldSnapshot& snap : result.trajectory.snapshots) {
      for (int i = 0; i < opt.grid.cells; ++i) {
        const wm::MomentState1D& cell = snap.field[static_cast<std::size_t>(i)];
        out << fmt17(snap.time) << "," << fmt17(opt.grid.center(i)) << "," << fmt17(cell.rho)
            << "," << fmt17(cell.u) << "," << fmt17(2.0 * cell.half_pressure);
        for (double f : cell.coeffs) out << "," << fmt17(f);
        out << "\n";
      }
    }
  }
  {
    std::ofstream out = manifest.open_file("diagnostics.csv");
    out << "t,mass,momentum,energy,momentum_residual,energy_residual\n";
    for (const wm::StepDiagnostics& d : result.trajectory.diagnostics) {
      out << fmt17(d.time) << "," << fmt17(d.mass) << "," << fmt17(d.momentum) << ","
          << fmt17(d.energy) << "," << fmt17(d.momentum_residual) << ","
          << fmt17(d.energy_residual) << "\n";
    }
  }

  if (result.failed) {
    manifest.record_failure(result.failure_message, result.failure_time);
    manifest.write(kExitSolverFailure);
    return kExitSolverFailure;
  }
  manifest.write(kExitOk);
  return kExitOk;
}

int dump_system_verb(const ResolvedOptions& opt) {
  ManifestWriter manifest("dump-system", opt);
  if (opt.dimension == 1) {
    const wm::MomentState1D state = inline_state_1d(opt);
    const auto system = wm::assemble_1d(state, opt.potential, opt.state_x, opt.tau, opt.hbar,
                                        !opt.grad_closure);
    const auto names = unknown_names_1d(opt.order);
    {
      std::ofstream out = manifest.open_file("system_a.csv");
      write_matrix_csv(out, system.a, names);
    }
    {
      std::ofstream out = manifest.open_file("system_g.csv");
      write_matrix_csv(out, system.g, names);
    }
  } else {
    const wm::MomentState3D state = inline_state_3d(opt);
    const auto system = wm::assemble_3d(state, wm::Potential3D::zero(),
                                        {opt.state_x, 0.0, 0.0}, opt.tau, opt.hbar,
                                        !opt.grad_closure);
    const auto names = unknown_names_3d(opt.order);
    for (int d = 0; d < 3; ++d) {
      std::ofstream out = manifest.open_file("system_m" + std::to_string(d + 1) + ".csv");
      write_matrix_csv(out, system.m[static_cast<std::size_t>(d)], names);
    }
    std::ofstream out = manifest.open_file("system_g.csv");
    write_matrix_csv(out, system.g, names);
  }
  manifest.write(kExitOk);
  return kExitOk;
}

int eigen_report_verb(const ResolvedOptions& opt) {
  ManifestWriter manifest("eigen-report", opt);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> rho_dist(0.3, 3.0);
  std::uniform_real_distribution<double> u_dist(-1.5, 1.5);
  std::uniform_real_distribution<double> temp_dist(0.3, 2.5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  bool all_hyperbolic = true;
  std::ofstream out = manifest.open_file("eigen_report.jsonl");
  for (int sample = 0; sample < opt.samples; ++sample) {
    wm::SpectralReport report;
    nlohmann::json record;
    if (opt.dimension == 1) {
      wm::MomentState1D state;
      state.order = opt.order;
      state.rho = rho_dist(rng);
      state.u = u_dist(rng);
      const double temp = temp_dist(rng);
      state.half_pressure = 0.5 * state.rho * temp;
      state.coeffs.resize(static_cast<std::size_t>(opt.order) - 2);
      for (std::size_t k = 0; k < state.coeffs.size(); ++k) {
        const double scale = state.rho * std::pow(temp, 0.5 * static_cast<double>(k + 3));
        state.coeffs[k] = 0.3 * scale * unit(rng);
      }
      const auto system = wm::assemble_1d(state, std::vector<double>{0.0, 0.0}, opt.tau, 0.0,
                                          !opt.grad_closure);
      report = wm::certify_1d(system, state);
      record["u"] = state.u;
      record["temperature"] = temp;
    } else {
      wm::MomentState3D state;
      state.order = opt.order;
      state.rho = rho_dist(rng);
      for (auto& component : state.u) component = u_dist(rng);
      const double temp = temp_dist(rng);
      Eigen::Matrix3d perturbation;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c <= r; ++c) {
          perturbation(r, c) = perturbation(c, r) = 0.15 * unit(rng);
        }
      }
      state.pressure =
          state.rho * temp * (Eigen::Matrix3d::Identity() + perturbation);
      state.coeffs.assign(static_cast<std::size_t>(wm::index_set_size(opt.order)) - 10, 0.0);
      for (auto& coeff : state.coeffs) coeff = 0.05 * state.rho * unit(rng);

      std::array<double, 3> direction{unit(rng), unit(rng), unit(rng)};
      const double norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                    direction[2] * direction[2]);
      for (auto& component : direction) component /= norm > 0.0 ? norm : 1.0;

      const auto system = wm::assemble_3d(state, wm::Potential3D::zero(), {0.0, 0.0, 0.0},
                                          opt.tau, 0.0, !opt.grad_closure);
      report = wm::certify_3d(system, state, direction);
      record["u"] = state.u;
      record["temperature"] = temp;
      record["direction"] = direction;
    }
    record["order"] = opt.order;
    record["sample"] = sample;
    record["dimension"] = opt.dimension;
    record["hyperbolic"] = report.hyperbolic;
    record["max_imag"] = report.max_imag;
    record["max_abs_deviation"] = report.max_abs_deviation;
    record["eigenvector_condition"] = report.eigenvector_condition;
    out << record.dump() << "\n";
    all_hyperbolic = all_hyperbolic && report.hyperbolic;
  }
  out.close();

  const int code = all_hyperbolic ? kExitOk : kExitCertificationFailure;
  if (!all_hyperbolic) manifest.record_failure("at least one sampled state is not hyperbolic", 0.0);
  manifest.write(code);
  return code;
}

int asymptotics_verb(const ResolvedOptions& opt) {
  ManifestWriter manifest("asymptotics", opt);
  std::ofstream out = manifest.open_file("asymptotics.csv");
  out << "x,rho0,g,rho,u,P,f3\n";
  for (int i = 0; i < opt.grid.cells; ++i) {
    const double x = opt.grid.center(i);
    const auto steady = wm::steady_classical_state(opt.potential, opt.order, x);
    const auto prediction = wm::predict(opt.potential, x, opt.t_end, opt.hbar);
    out << fmt17(x) << "," << fmt17(steady.rho) << "," << fmt17(wm::g_of_x(opt.potential, x))
        << "," << fmt17(prediction.rho) << "," << fmt17(prediction.u) << ","
        << fmt17(prediction.pressure) << "," << fmt17(prediction.f3) << "\n";
  }
  out.close();
  manifest.write(kExitOk);
  return kExitOk;
}

}  // namespace wmtool
