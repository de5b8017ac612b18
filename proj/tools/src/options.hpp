#pragma once

#include <wm/potential.hpp>
#include <wm/solver.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wmtool {

/// Raised for configuration problems; the message names the offending key or
/// the file location. Callers translate it into exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered key=value view of one run configuration. Later layers override
/// earlier ones: defaults, scenario preset, config file, explicit flags.
using KeyValueMap = std::map<std::string, std::string>;

/// All settings a verb can consume, after parsing and validation.
struct ResolvedOptions {
  std::string scenario;
  int order = 3;
  unsigned long long seed = 0;

  wm::Grid1D grid;
  double cfl = 0.45;
  double t_end = 0.1;
  int stride = 1;
  std::vector<double> record_times;

  double hbar = 0.0;
  double tau = 1.0;

  wm::Potential1D potential = wm::Potential1D::zero();
  std::string potential_kind = "zero";

  std::string output_dir = ".";

  // dump-system inline state
  double state_x = 0.0;
  double state_rho = 1.0;
  double state_u = 0.0;
  double state_temperature = 1.0;
  std::vector<double> state_coeffs;
  bool grad_closure = false;

  // eigen-report
  int samples = 10;
  int dimension = 1;

  KeyValueMap echo; // the resolved key=value map, for the manifest
};

/// Names of the scenario presets, in documentation order.
const std::vector<std::string>& scenario_names();

/// Parses a flat key=value config file with '#' comments. Throws ConfigError
/// with "path:line:" prefixes for malformed lines and unknown keys.
KeyValueMap load_config_file(const std::string& path);

/// Checks a single key against the registry. Throws ConfigError if unknown.
void require_known_key(const std::string& key);

/// Merges defaults, the scenario preset, config file entries, and explicit
/// flag entries (in that order), then parses and validates the result.
/// Throws ConfigError naming the first offending key.
ResolvedOptions resolve_options(const KeyValueMap& file_entries, const KeyValueMap& flag_entries);

/// Builds the initial field for the resolved scenario on the resolved grid.
wm::Field1D build_initial_field(const ResolvedOptions& opt);

/// Expands a --potential flag value like "bump", "harmonic:0.5" or
/// "polynomial:1,0,0.25" into potential.* config entries.
void expand_potential_flag(const std::string& value, KeyValueMap& out);

}  // namespace wmtool
