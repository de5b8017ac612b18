#include "options.hpp"

#include <wm/asymptotics.hpp>
#include <wm/state.hpp>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>

namespace wmtool {

namespace {

const std::set<std::string>& key_registry() {
  static const std::set<std::string> keys{
      "scenario",
      "order",
      "seed",
      "grid.cells",
      "grid.x-min",
      "grid.x-max",
      "grid.boundary",
      "solver.cfl",
      "solver.t-end",
      "solver.stride",
      "solver.record-times",
      "physics.hbar",
      "physics.tau",
      "potential.kind",
      "potential.amplitude",
      "potential.slope",
      "potential.stiffness",
      "potential.coeffs",
      "state.x",
      "state.rho",
      "state.u",
      "state.temperature",
      "state.coeffs",
      "state.closure",
      "report.samples",
      "report.dimension",
      "output.dir",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int out = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

unsigned long long parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long out = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

KeyValueMap scenario_preset(const std::string& name) {
  KeyValueMap kv;
  const auto set_grid = [&](const char* lo, const char* hi, const char* cells,
                            const char* boundary) {
    kv["grid.x-min"] = lo;
    kv["grid.x-max"] = hi;
    kv["grid.cells"] = cells;
    kv["grid.boundary"] = boundary;
  };
  if (name == "equilibrium") {
    set_grid("-1", "1", "64", "periodic");
    kv["potential.kind"] = "zero";
    kv["solver.t-end"] = "0.1";
    kv["physics.hbar"] = "0.1";
    kv["physics.tau"] = "1";
  } else if (name == "harmonic-classical") {
    set_grid("-2", "2", "200", "zero-gradient");
    kv["potential.kind"] = "harmonic";
    kv["potential.stiffness"] = "1";
    kv["solver.t-end"] = "0.5";
    kv["physics.hbar"] = "1";
    kv["physics.tau"] = "1";
  } else if (name == "bump-tunneling") {
    set_grid("-2", "2", "200", "zero-gradient");
    kv["potential.kind"] = "bump";
    kv["potential.amplitude"] = "1";
    kv["solver.t-end"] = "0.05";
    kv["physics.hbar"] = "1";
    kv["physics.tau"] = "1e6";
  } else if (name == "classical-steady") {
    set_grid("-2", "2", "200", "zero-gradient");
    kv["potential.kind"] = "bump";
    kv["potential.amplitude"] = "1";
    kv["solver.t-end"] = "1";
    kv["physics.hbar"] = "0";
    kv["physics.tau"] = "1";
  } else {
    throw ConfigError("scenario: unknown preset '" + name +
                      "' (expected equilibrium, harmonic-classical, bump-tunneling, or "
                      "classical-steady)");
  }
  return kv;
}

wm::Potential1D build_potential(const KeyValueMap& kv, std::string& kind_out) {
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  const std::string kind = get("potential.kind").value_or("zero");
  kind_out = kind;
  if (kind == "zero") return wm::Potential1D::zero();
  if (kind == "linear") {
    return wm::Potential1D::linear(parse_double("potential.slope", get("potential.slope").value_or("1")));
  }
  if (kind == "harmonic") {
    return wm::Potential1D::harmonic(
        parse_double("potential.stiffness", get("potential.stiffness").value_or("1")));
  }
  if (kind == "bump") {
    return wm::Potential1D::bump(
        parse_double("potential.amplitude", get("potential.amplitude").value_or("1")));
  }
  if (kind == "polynomial") {
    const auto coeffs = get("potential.coeffs");
    if (!coeffs) throw ConfigError("potential.coeffs: required for potential.kind=polynomial");
    return wm::Potential1D::polynomial(parse_double_list("potential.coeffs", *coeffs));
  }
  throw ConfigError("potential.kind: unknown kind '" + kind +
                    "' (expected zero, linear, harmonic, bump, or polynomial)");
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"equilibrium", "harmonic-classical",
                                              "bump-tunneling", "classical-steady"};
  return names;
}

void require_known_key(const std::string& key) {
  if (key_registry().count(key) == 0) {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

KeyValueMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  KeyValueMap out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value, got '" +
                        stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    try {
      require_known_key(key);
    } catch (const ConfigError& err) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + err.what());
    }
    out[key] = value;
  }
  return out;
}

void expand_potential_flag(const std::string& value, KeyValueMap& out) {
  const auto colon = value.find(':');
  const std::string kind = colon == std::string::npos ? value : value.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : value.substr(colon + 1);
  out["potential.kind"] = kind;
  if (param.empty()) return;
  if (kind == "linear") {
    out["potential.slope"] = param;
  } else if (kind == "harmonic") {
    out["potential.stiffness"] = param;
  } else if (kind == "bump") {
    out["potential.amplitude"] = param;
  } else if (kind == "polynomial") {
    out["potential.coeffs"] = param;
  } else {
    throw ConfigError("potential.kind: unknown kind '" + kind +
                      "' (expected zero, linear, harmonic, bump, or polynomial)");
  }
}

ResolvedOptions resolve_options(const KeyValueMap& file_entries, const KeyValueMap& flag_entries) {
  KeyValueMap merged;
  merged["scenario"] = "equilibrium";

  // The scenario choice itself obeys flag-over-file precedence, and its preset
  // sits below both layers so either can override preset values.
  std::string scenario = merged["scenario"];
  if (const auto it = file_entries.find("scenario"); it != file_entries.end()) {
    scenario = it->second;
  }
  if (const auto it = flag_entries.find("scenario"); it != flag_entries.end()) {
    scenario = it->second;
  }
  for (const auto& [key, value] : scenario_preset(scenario)) merged[key] = value;
  merged["scenario"] = scenario;
  for (const auto& [key, value] : file_entries) merged[key] = value;
  for (const auto& [key, value] : flag_entries) merged[key] = value;

  ResolvedOptions opt;
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = merged.find(key);
    if (it == merged.end()) return std::nullopt;
    return it->second;
  };

  opt.scenario = scenario;
  if (const auto v = get("order")) opt.order = parse_int("order", *v);
  if (const auto v = get("seed")) opt.seed = parse_seed("seed", *v);
  if (const auto v = get("grid.cells")) opt.grid.cells = parse_int("grid.cells", *v);
  if (const auto v = get("grid.x-min")) opt.grid.x_min = parse_double("grid.x-min", *v);
  if (const auto v = get("grid.x-max")) opt.grid.x_max = parse_double("grid.x-max", *v);
  if (const auto v = get("grid.boundary")) {
    if (*v == "periodic") {
      opt.grid.boundary = wm::Grid1D::Boundary::kPeriodic;
    } else if (*v == "zero-gradient") {
      opt.grid.boundary = wm::Grid1D::Boundary::kZeroGradient;
    } else {
      throw ConfigError("grid.boundary: expected periodic or zero-gradient, got '" + *v + "'");
    }
  }
  if (const auto v = get("solver.cfl")) opt.cfl = parse_double("solver.cfl", *v);
  if (const auto v = get("solver.t-end")) opt.t_end = parse_double("solver.t-end", *v);
  if (const auto v = get("solver.stride")) opt.stride = parse_int("solver.stride", *v);
  if (const auto v = get("solver.record-times")) {
    opt.record_times = parse_double_list("solver.record-times", *v);
  }
  if (const auto v = get("physics.hbar")) opt.hbar = parse_double("physics.hbar", *v);
  if (const auto v = get("physics.tau")) opt.tau = parse_double("physics.tau", *v);
  opt.potential = build_potential(merged, opt.potential_kind);
  if (const auto v = get("output.dir")) opt.output_dir = *v;
  if (const auto v = get("state.x")) opt.state_x = parse_double("state.x", *v);
  if (const auto v = get("state.rho")) opt.state_rho = parse_double("state.rho", *v);
  if (const auto v = get("state.u")) opt.state_u = parse_double("state.u", *v);
  if (const auto v = get("state.temperature")) {
    opt.state_temperature = parse_double("state.temperature", *v);
  }
  if (const auto v = get("state.coeffs")) {
    opt.state_coeffs = parse_double_list("state.coeffs", *v);
  }
  if (const auto v = get("state.closure")) {
    if (*v == "grad") {
      opt.grad_closure = true;
    } else if (*v == "regularized") {
      opt.grad_closure = false;
    } else {
      throw ConfigError("state.closure: expected regularized or grad, got '" + *v + "'");
    }
  }
  if (const auto v = get("report.samples")) opt.samples = parse_int("report.samples", *v);
  if (const auto v = get("report.dimension")) opt.dimension = parse_int("report.dimension", *v);

  if (opt.order < 3) {
    throw ConfigError("order: must be >= 3, got " + std::to_string(opt.order));
  }
  if (!(opt.cfl > 0.0 && opt.cfl < 1.0)) throw ConfigError("solver.cfl: must be in (0, 1)");
  if (!(opt.t_end > 0.0)) throw ConfigError("solver.t-end: must be positive");
  if (opt.stride < 1) throw ConfigError("solver.stride: must be >= 1");
  if (!(opt.hbar >= 0.0)) throw ConfigError("physics.hbar: must be >= 0");
  if (!(opt.tau > 0.0)) throw ConfigError("physics.tau: must be positive");
  if (!opt.grid.valid()) {
    throw ConfigError("grid: needs x-max > x-min and at least 8 cells");
  }
  if (opt.samples < 1) throw ConfigError("report.samples: must be >= 1");
  if (opt.dimension != 1 && opt.dimension != 3) {
    throw ConfigError("report.dimension: must be 1 or 3");
  }
  if (!(opt.state_rho > 0.0)) throw ConfigError("state.rho: must be positive");
  if (!(opt.state_temperature > 0.0)) throw ConfigError("state.temperature: must be positive");
  if (!opt.state_coeffs.empty() &&
      opt.state_coeffs.size() != static_cast<std::size_t>(opt.order) - 2) {
    throw ConfigError("state.coeffs: expected " + std::to_string(opt.order - 2) +
                      " values (f3..fM), got " + std::to_string(opt.state_coeffs.size()));
  }
  for (double t : opt.record_times) {
    if (t < 0.0 || t > opt.t_end) {
      throw ConfigError("solver.record-times: times must lie in [0, t-end]");
    }
  }

  opt.echo = merged;
  return opt;
}

wm::Field1D build_initial_field(const ResolvedOptions& opt) {
  wm::Field1D field(static_cast<std::size_t>(opt.grid.cells));
  for (int i = 0; i < opt.grid.cells; ++i) {
    const double x = opt.grid.center(i);
    if (opt.scenario == "equilibrium") {
      field[static_cast<std::size_t>(i)] = wm::maxwellian_state_1d(opt.order, 1.0, 0.0, 1.0);
    } else {
      field[static_cast<std::size_t>(i)] = wm::steady_classical_state(opt.potential, opt.order, x);
    }
  }
  return field;
}

}  // namespace wmtool
