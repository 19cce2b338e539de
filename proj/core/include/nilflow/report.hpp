#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilflow/group.hpp"

namespace nilflow {

struct StateDump {
  std::uint64_t index = 0;
  std::string label;
  double residual = 0.0;
  TangentState state;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct NamedText {
  std::string name;
  std::string text;
};

/// Machine-readable outcome of a sampled check. Serialized with "schema": 1
/// and every float printed with 17 significant digits, so reports from the
/// same seed are byte-identical.
struct CheckReport {
  std::string check;
  int samples = 0;
  double tolerance = 0.0;
  double max_abs_residual = 0.0;
  bool passed = true;
  std::vector<NamedValue> details;
  std::vector<NamedText> info;
  std::vector<StateDump> failures;

  /// Failure dumps kept per report.
  static constexpr std::size_t kMaxFailures = 10;

  /// Folds |residual| into max_abs_residual; records a failure (and clears
  /// `passed`) when it exceeds the tolerance or is not finite.
  void record(std::uint64_t index, const TangentState& s, double residual,
              const std::string& label = {});
  void fail(const std::string& reason);
  void add_detail(std::string name, double value) { details.push_back({std::move(name), value}); }
  void add_info(std::string name, std::string text) { info.push_back({std::move(name), std::move(text)}); }
};

/// printf("%.17g"), with non-finite values mapped to JSON null.
std::string format_double(double x);

std::string to_json(const CheckReport& r);

/// Several reports wrapped as {"schema": 1, "reports": [...]}.
std::string to_json(const std::vector<CheckReport>& reports);

}  // namespace nilflow
