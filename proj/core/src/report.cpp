#include "nilflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nilflow {

void CheckReport::record(std::uint64_t index, const TangentState& s, double residual,
                         const std::string& label) {
  const double r = std::abs(residual);
  const bool bad = !std::isfinite(r) || r > tolerance;
  if (!std::isfinite(r)) {
    max_abs_residual = r;
  } else if (std::isfinite(max_abs_residual)) {
    max_abs_residual = std::max(max_abs_residual, r);
  }
  if (bad) {
    passed = false;
    if (failures.size() < kMaxFailures) failures.push_back({index, label, residual, s});
  }
}

void CheckReport::fail(const std::string& reason) {
  passed = false;
  add_info("failure", reason);
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string vec(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v(i));
  }
  return out + "]";
}

void write_report(std::ostringstream& os, const CheckReport& r, const std::string& pad) {
  os << pad << "{\n";
  os << pad << "  \"schema\": 1,\n";
  os << pad << "  \"check\": " << quote(r.check) << ",\n";
  os << pad << "  \"samples\": " << r.samples << ",\n";
  os << pad << "  \"tolerance\": " << format_double(r.tolerance) << ",\n";
  os << pad << "  \"max_abs_residual\": " << format_double(r.max_abs_residual) << ",\n";
  os << pad << "  \"passed\": " << (r.passed ? "true" : "false") << ",\n";
  os << pad << "  \"details\": {";
  for (std::size_t i = 0; i < r.details.size(); ++i) {
    os << (i ? ",\n" : "\n") << pad << "    " << quote(r.details[i].name) << ": "
       << format_double(r.details[i].value);
  }
  os << (r.details.empty() ? "" : "\n" + pad + "  ") << "},\n";
  os << pad << "  \"info\": {";
  for (std::size_t i = 0; i < r.info.size(); ++i) {
    os << (i ? ",\n" : "\n") << pad << "    " << quote(r.info[i].name) << ": "
       << quote(r.info[i].text);
  }
  os << (r.info.empty() ? "" : "\n" + pad + "  ") << "},\n";
  os << pad << "  \"failures\": [";
  for (std::size_t i = 0; i < r.failures.size(); ++i) {
    const auto& f = r.failures[i];
    os << (i ? ",\n" : "\n") << pad << "    {\"index\": " << f.index
       << ", \"label\": " << quote(f.label) << ", \"residual\": " << format_double(f.residual)
       << ", \"p\": " << vec(f.state.p) << ", \"Y\": " << vec(f.state.Y) << "}";
  }
  os << (r.failures.empty() ? "" : "\n" + pad + "  ") << "]\n";
  os << pad << "}";
}

}  // namespace

std::string to_json(const CheckReport& r) {
  std::ostringstream os;
  write_report(os, r, "");
  os << "\n";
  return os.str();
}

std::string to_json(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "{\n  \"schema\": 1,\n  \"reports\": [";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    os << (i ? ",\n" : "\n");
    write_report(os, reports[i], "    ");
  }
  os << (reports.empty() ? "" : "\n  ") << "]\n}\n";
  return os.str();
}

}  // namespace nilflow
