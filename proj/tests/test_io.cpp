#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "nilflow/errors.hpp"
#include "nilflow/io.hpp"
#include "nilflow/report.hpp"

using namespace nilflow;
using test::vec;

TEST_SUITE("io") {

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(NAN) == "null");
  CHECK(format_double(INFINITY) == "null");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("check reports serialize to schema 1") {
  CheckReport r;
  r.check = "involution";
  r.samples = 2;
  r.tolerance = 1e-10;
  r.record(0, {vec({1, 2, 3}), vec({0, 0, 1})}, 1e-12, "ok");
  r.record(1, {vec({1, 2, 3}), vec({0, 0, 1})}, -0.5, "{a,\"b\"}");
  r.add_detail("dim", 3);
  r.add_info("family", "F");
  CHECK_FALSE(r.passed);
  CHECK(r.max_abs_residual == 0.5);
  REQUIRE(r.failures.size() == 1);

  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["schema"] == 1);
  CHECK(j["check"] == "involution");
  CHECK(j["passed"] == false);
  CHECK(j["failures"][0]["label"] == "{a,\"b\"}");
  CHECK(j["failures"][0]["p"][2] == 3.0);
  CHECK(j["details"]["dim"] == 3.0);

  const auto all = nlohmann::json::parse(to_json(std::vector<CheckReport>{r, r}));
  CHECK(all["schema"] == 1);
  CHECK(all["reports"].size() == 2);
  CHECK(to_json(r) == to_json(r));

  CheckReport nan;
  nan.tolerance = 1.0;
  nan.record(0, {vec({0}), vec({0})}, NAN);
  CHECK_FALSE(nan.passed);
  CHECK(nlohmann::json::parse(to_json(nan))["max_abs_residual"].is_null());
}

TEST_CASE("failure dumps are capped") {
  CheckReport r;
  r.tolerance = 0.0;
  for (int i = 0; i < 50; ++i) r.record(static_cast<std::uint64_t>(i), {vec({0}), vec({0})}, 1.0);
  CHECK(r.failures.size() == CheckReport::kMaxFailures);
}

TEST_CASE("algebra files") {
  const auto a = io::parse_algebra(R"({"dim_v": 2, "dim_z": 1, "j_mats": [[0, -1, 1, 0]]})");
  CHECK(a.j_mats()[0] == linalg::complex_structure(1));
  const auto b = io::parse_algebra(
      R"({"dim_v": 2, "dim_z": 1, "j_mats": [[[0, -1], [1, 0]]], "metric": [[1,0,0],[0,1,0],[0,0,2]]})");
  CHECK(b.metric()(2, 2) == 2.0);
  CHECK_THROWS_AS(io::parse_algebra("{"), ConfigError);
  CHECK_THROWS_AS(io::parse_algebra(R"({"dim_v": 2, "dim_z": 1, "j_mats": [[1, 0, 0, 1]]})"), ConfigError);
  CHECK_THROWS_AS(io::parse_algebra(R"({"dim_v": 2, "dim_z": 1, "j_mats": [[0, 1, 2]]})"), ConfigError);
  CHECK_THROWS_AS(io::parse_algebra(R"({"dim_z": 1, "j_mats": []})"), ConfigError);
  CHECK_THROWS_AS(io::load_algebra("/nonexistent/algebra.json"), ConfigError);
}

TEST_CASE("metric and lattice files") {
  CHECK(io::parse_metric(R"({"type": "canonical"})").canonical);
  const auto p = io::parse_metric(R"({"type": "P", "P_tilde": [[2, 0], [0, 2]], "lambda": 0.5})");
  CHECK_FALSE(p.canonical);
  CHECK(p.lambda == 0.5);
  CHECK(p.p_tilde(1, 1) == 2.0);
  CHECK_THROWS_AS(io::parse_metric(R"({"type": "Q"})"), ConfigError);
  CHECK_THROWS_AS(io::parse_metric(R"({"type": "P", "lambda": 1})"), ConfigError);
  CHECK(io::parse_lattice(R"({"r": [1, 2]})").r() == std::vector<long long>{1, 2});
  CHECK_THROWS_AS(io::parse_lattice(R"({"r": [2, 3]})"), ConfigError);
  CHECK_THROWS_AS(io::parse_lattice(R"({"r": [1.5]})"), ConfigError);
}

TEST_CASE("family files") {
  const auto g = heisenberg_group(2);
  const auto named = io::parse_family_config(R"({"family": "Fprime", "n": 2})");
  const Family f = io::build_family(g, named);
  CHECK(f.size() == 5);
  CHECK(f.members.back().name() == "F_4");
  CHECK_THROWS_AS(io::build_family(heisenberg_group(1), named), ConfigError);

  const auto custom = io::parse_family_config(R"({"family": "custom", "custom": [
      {"kind": "energy"},
      {"kind": "linear", "z": [2]},
      {"kind": "quadratic", "A": [[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]], "name": "gA"},
      {"kind": "translation", "k": 3},
      {"kind": "translation", "x": [1, 0, 1, 0]},
      {"kind": "rotation", "T": [[0,-1,0,0],[1,0,0,0],[0,0,0,0],[0,0,0,0]]},
      {"kind": "smoothed", "k": 1, "damped": false}]})");
  const Family c = io::build_family(g, custom);
  CHECK(c.size() == 7);
  CHECK(c.members[2].name() == "gA");
  const TangentState s{g.identity(), vec({1, 2, 3, 4, 5})};
  CHECK(eval(c.members[1], s) == 10.0);
  CHECK(eval(c.members[3], s) == 3.0);
  CHECK(eval(c.members[4], s) == 4.0);

  CHECK_THROWS_AS(io::build_family(g, io::parse_family_config(
                                          R"({"family": "custom", "custom": [{"kind": "cubic"}]})")),
                  ConfigError);
  CHECK_THROWS_AS(io::build_family(g, io::parse_family_config(
                                          R"({"family": "custom", "custom": [{"kind": "quadratic", "A": [[1, 2], [0, 1]]}]})")),
                  ConfigError);
  CHECK_THROWS_AS(io::parse_family_config(R"({"n": 2})"), ConfigError);
}

TEST_CASE("trajectory CSV") {
  const auto g = heisenberg_group(1);
  const auto traj = integrate(g, {g.identity(), vec({1, 0, 1})}, 0.2, 0.1);
  std::ostringstream os;
  io::write_trajectory_csv(os, traj);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,p_1,p_2,p_3,Y_1,Y_2,Y_3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(os.str().find("0.10000000000000001,") != std::string::npos);
}

}  // TEST_SUITE
