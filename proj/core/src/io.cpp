#include "nilflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "nilflow/errors.hpp"
#include "nilflow/report.hpp"

namespace nilflow::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  return j.get<int>();
}

Vector vector_of(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], what);
  return v;
}

/// Square matrix from a list of rows or a flat row-major list.
Matrix matrix_of(const json& j, const char* what, int expected = -1) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + " must be a non-empty array");
  if (j.front().is_array()) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Vector row = vector_of(j[static_cast<std::size_t>(r)], what);
      if (row.size() != rows) throw ConfigError(std::string(what) + " must be square");
      m.row(r) = row.transpose();
    }
    if (expected >= 0 && rows != expected) throw ConfigError(std::string(what) + " has wrong size");
    return m;
  }
  const Vector flat = vector_of(j, what);
  const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (side * side != flat.size()) throw ConfigError(std::string(what) + " must be square");
  if (expected >= 0 && side != expected) throw ConfigError(std::string(what) + " has wrong size");
  Matrix m(side, side);
  for (Eigen::Index r = 0; r < side; ++r)
    for (Eigen::Index c = 0; c < side; ++c) m(r, c) = flat(r * side + c);
  return m;
}

const json& field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(std::string(what) + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

FirstIntegral descriptor(const NilpotentGroup& g, const json& d) {
  const std::string kind = field(d, "kind", "family descriptor").get<std::string>();
  FirstIntegral f = [&] {
    if (kind == "energy") return FirstIntegral::energy(g);
    if (kind == "linear") return FirstIntegral::linear_central(g, vector_of(field(d, "z", "linear"), "z"));
    if (kind == "quadratic") return FirstIntegral::quadratic(g, matrix_of(field(d, "A", "quadratic"), "A"));
    if (kind == "rotation") return FirstIntegral::rotation(g, matrix_of(field(d, "T", "rotation"), "T"));
    if (kind == "translation") {
      if (d.contains("x")) return FirstIntegral::translation_along(g, vector_of(d.at("x"), "x"));
      return FirstIntegral::translation(g, integer(field(d, "k", "translation"), "k") - 1);
    }
    if (kind == "smoothed") {
      const bool damped = d.value("damped", true);
      return FirstIntegral::smoothed(g, integer(field(d, "k", "smoothed"), "k") - 1, damped);
    }
    throw ConfigError("unknown integral kind '" + kind + "'");
  }();
  if (d.contains("name")) f = f.renamed(d.at("name").get<std::string>());
  return f;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Algebra2Step parse_algebra(const std::string& json_text) {
  const json j = parse_json(json_text, "algebra");
  try {
    const int dv = integer(field(j, "dim_v", "algebra"), "dim_v");
    const int dz = integer(field(j, "dim_z", "algebra"), "dim_z");
    const json& mats = field(j, "j_mats", "algebra");
    if (!mats.is_array()) throw ConfigError("j_mats must be an array");
    std::vector<Matrix> jm;
    for (const auto& m : mats) jm.push_back(matrix_of(m, "j_mats entry", dv));
    std::optional<Matrix> metric;
    if (j.contains("metric") && !j.at("metric").is_null()) metric = matrix_of(j.at("metric"), "metric", dv + dz);
    return Algebra2Step(dv, dz, std::move(jm), std::move(metric));
  } catch (const InputError& e) {
    throw ConfigError(std::string("algebra: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("algebra: ") + e.what());
  }
}

Algebra2Step load_algebra(const std::string& path) { return parse_algebra(read_file(path)); }

MetricConfig parse_metric(const std::string& json_text) {
  const json j = parse_json(json_text, "metric");
  try {
    const std::string type = field(j, "type", "metric").get<std::string>();
    MetricConfig cfg;
    if (type == "canonical") return cfg;
    if (type != "P") throw ConfigError("metric type must be \"canonical\" or \"P\"");
    cfg.canonical = false;
    cfg.p_tilde = matrix_of(field(j, "P_tilde", "metric"), "P_tilde");
    cfg.lambda = number(field(j, "lambda", "metric"), "lambda");
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("metric: ") + e.what());
  }
}

MetricConfig load_metric(const std::string& path) { return parse_metric(read_file(path)); }

LatticeSpec parse_lattice(const std::string& json_text) {
  const json j = parse_json(json_text, "lattice");
  const json& r = field(j, "r", "lattice");
  if (!r.is_array()) throw ConfigError("lattice r must be an array");
  std::vector<long long> values;
  for (const auto& x : r) {
    if (!x.is_number_integer()) throw ConfigError("lattice r entries must be integers");
    values.push_back(x.get<long long>());
  }
  return LatticeSpec(std::move(values));
}

LatticeSpec load_lattice(const std::string& path) { return parse_lattice(read_file(path)); }

FamilyConfig parse_family_config(const std::string& json_text) {
  const json j = parse_json(json_text, "family");
  try {
    FamilyConfig cfg;
    cfg.family = field(j, "family", "family").get<std::string>();
    if (j.contains("n")) cfg.n = integer(j.at("n"), "n");
    if (cfg.family == "custom") {
      const json& c = field(j, "custom", "family");
      if (!c.is_array()) throw ConfigError("custom family must be an array");
      cfg.custom_json = c.dump();
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }
}

FamilyConfig load_family_config(const std::string& path) {
  return parse_family_config(read_file(path));
}

Family build_family(const NilpotentGroup& g, const FamilyConfig& cfg) {
  const auto& a = g.algebra();
  const bool heis = a.dim_z() == 1 && a.dim_v() % 2 == 0;
  const int n = a.dim_v() / 2;
  if (cfg.n != 0 && cfg.n != n) throw ConfigError("family n does not match the group");
  if (cfg.family == "G" || cfg.family == "F" || cfg.family == "Fprime") {
    if (!heis || !a.has_standard_metric()) {
      throw ConfigError("family " + cfg.family + " needs the canonical H_n");
    }
    if (cfg.family == "G") {
      std::vector<Matrix> torus;
      for (int i = 0; i < n; ++i) torus.push_back(plane_projection(n, i));
      return family_g(g, torus);
    }
    Family out{cfg.family, {}};
    out.members.push_back(FirstIntegral::linear_central(g, Vector::Ones(1)).renamed("f_Z1"));
    for (int i = 0; i < n; ++i) {
      out.members.push_back(
          FirstIntegral::quadratic(g, plane_projection(n, i)).renamed("g_A" + std::to_string(i + 1)));
    }
    for (int k = 0; k < n; ++k) {
      const int idx = 2 * k + (cfg.family == "F" ? 0 : 1);
      out.members.push_back(FirstIntegral::translation(g, idx).renamed("F_" + std::to_string(idx + 1)));
    }
    return out;
  }
  if (cfg.family == "custom") {
    const json arr = parse_json(cfg.custom_json, "custom family");
    Family out{"custom", {}};
    try {
      for (const auto& d : arr) out.members.push_back(descriptor(g, d));
    } catch (const InputError& e) {
      throw ConfigError(std::string("custom family: ") + e.what());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("custom family: ") + e.what());
    }
    if (out.members.empty()) throw ConfigError("custom family is empty");
    return out;
  }
  throw ConfigError("unknown family '" + cfg.family + "' (expected G, F, Fprime or custom)");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const auto d = traj.states.front().p.size();
  os << "t";
  for (Eigen::Index i = 1; i <= d; ++i) os << ",p_" << i;
  for (Eigen::Index i = 1; i <= d; ++i) os << ",Y_" << i;
  os << "\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    os << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(traj.states[k].p(i));
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(traj.states[k].Y(i));
    os << "\n";
  }
}

}  // namespace nilflow::io
