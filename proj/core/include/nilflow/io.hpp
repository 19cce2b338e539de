#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nilflow/geodesic.hpp"
#include "nilflow/heisenberg.hpp"
#include "nilflow/lattice.hpp"

namespace nilflow::io {

/// Algebra file: {"dim_v": int, "dim_z": int, "j_mats": [[row-major]...],
/// "metric": optional row-major matrix}. Each j_mats entry is either a flat
/// row-major list of dim_v^2 numbers or a list of rows.
Algebra2Step parse_algebra(const std::string& json_text);
Algebra2Step load_algebra(const std::string& path);

struct MetricConfig {
  bool canonical = true;
  Matrix p_tilde;
  double lambda = 1.0;
};

/// {"type": "canonical"} or {"type": "P", "P_tilde": matrix, "lambda": float}.
MetricConfig parse_metric(const std::string& json_text);
MetricConfig load_metric(const std::string& path);

/// {"r": [int, ...]}; divisibility validated.
LatticeSpec parse_lattice(const std::string& json_text);
LatticeSpec load_lattice(const std::string& path);

/// {"family": "G"|"F"|"Fprime"|"custom", "n": int, "custom": [descriptor...]}.
/// Descriptors: {"kind": "energy"}, {"kind": "linear", "z": [...]},
/// {"kind": "quadratic", "A": matrix}, {"kind": "translation", "k": int}
/// (1-based) or {"kind": "translation", "x": [...]}, {"kind": "rotation",
/// "T": matrix}, {"kind": "smoothed", "k": int, "damped": bool}. An optional
/// "name" overrides the display name.
struct FamilyConfig {
  std::string family;
  int n = 0;
  /// Raw descriptor array for "custom" families.
  std::string custom_json;
};

FamilyConfig parse_family_config(const std::string& json_text);
FamilyConfig load_family_config(const std::string& path);

/// Builds the family named by cfg on the given group.
Family build_family(const NilpotentGroup& g, const FamilyConfig& cfg);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_file(const std::string& path);

/// Header `t,p_1..p_d,Y_1..Y_d`, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace nilflow::io
