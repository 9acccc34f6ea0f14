#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "symred/lie_algebra.hpp"

namespace symred {

inline constexpr int kSchemaVersion = 1;

/// One reduction problem, as read from a JSON config.
struct CaseConfig {
  std::string group_label;
  std::optional<LieAlgebra> algebra;
  Covector mu;
  std::string connection = "symplectized";  // or "baseline" (negative control)
  double fd_step = 1e-5;
  double fd_step2 = 1e-4;
  double chart_radius = 0.3;
  int samples = 5;
  std::uint64_t seed = 0;
  Matrix s_tilde;  // empty for the default complement
  int curvature_points = 1;
  bool convergence = true;
  double convergence_step = 2e-2;
  std::map<std::string, double> tol;
  nlohmann::json source;  // config as given, echoed into reports
};

/// Defaults for every named tolerance.
std::map<std::string, double> default_tolerances();

/// Throws Error(ConfigError) on malformed input, including unknown keys.
CaseConfig parse_config(const nlohmann::json& j);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> fd_step;
  std::optional<double> tol_scale;
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = 0;
};

/// Runs one of: validate, reduce, curvature, verify, export-connection.
/// Never throws for problem-level failures: those are recorded in the report
/// with the matching exit code (2 config, 3 assumption, 4 numerical; verify
/// returns 1 when a check fails).
CommandResult run_command(const std::string& verb, const nlohmann::json& config, const Overrides& overrides = {});

/// Pretty JSON with every floating-point number written to 17 significant digits.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace symred
