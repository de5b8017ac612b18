#pragma once

#include "options.hpp"

namespace wmtool {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitCertificationFailure = 4;

/// Integrates the configured scenario and writes trajectory.csv,
/// diagnostics.csv and manifest.json into the output directory.
int run_verb(const ResolvedOptions& opt);

/// Assembles the quasi-linear system at the inline state and writes the
/// matrices as headed CSV files plus manifest.json.
int dump_system_verb(const ResolvedOptions& opt);

/// Certifies the spectrum at seeded random admissible states and writes
/// eigen_report.jsonl plus manifest.json.
int eigen_report_verb(const ResolvedOptions& opt);

/// Evaluates the short-time predictions on the grid and writes
/// asymptotics.csv plus manifest.json.
int asymptotics_verb(const ResolvedOptions& opt);

}  // namespace wmtool
