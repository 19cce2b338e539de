#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = nilflow::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

nlohmann::json first_report(const std::string& text) { return nlohmann::json::parse(text)["reports"][0]; }

}  // namespace

TEST_SUITE("cli-harness") {

TEST_CASE("simulate closes the fiber circle after one period") {
  const auto r = run({"simulate", "--n", "1", "--y0", "1,0,1", "--T", "6.283185307179586", "--dt",
                      "1e-3", "--out", "cli_circle"});
  CHECK(r.code == 0);
  std::ifstream csv("cli_circle.csv");
  std::string header, line, last;
  std::getline(csv, header);
  CHECK(header == "t,p_1,p_2,p_3,Y_1,Y_2,Y_3");
  while (std::getline(csv, line)) last = line;
  std::vector<double> row;
  std::stringstream ss(last);
  for (std::string tok; std::getline(ss, tok, ',');) row.push_back(std::stod(tok));
  REQUIRE(row.size() == 7);
  // Steps stop at floor(T/dt) dt; compare with the closed form at that time.
  CHECK(std::abs(row[4] - std::cos(row[0])) < 1e-6);
  CHECK(std::abs(row[5] - std::sin(row[0])) < 1e-6);
  CHECK(std::abs(row[4] - 1.0) < 1e-6);
  const auto rep = first_report(slurp("cli_circle.json"));
  CHECK(rep["check"] == "simulate");
  CHECK(rep["passed"] == true);
  CHECK(rep["max_abs_residual"].get<double>() <= 1e-6);
}

TEST_CASE("simulate with a central velocity moves in a straight line") {
  const auto r = run({"simulate", "--n", "2", "--y0", "0,0,0,0,2", "--T", "1", "--dt", "0.01",
                      "--method", "exact-fiber", "--out", "cli_line"});
  CHECK(r.code == 0);
  std::ifstream csv("cli_line.csv");
  std::string line, last;
  while (std::getline(csv, line)) last = line;
  std::vector<double> row;
  std::stringstream ss(last);
  for (std::string tok; std::getline(ss, tok, ',');) row.push_back(std::stod(tok));
  REQUIRE(row.size() == 11);
  CHECK(row[0] == doctest::Approx(1.0));
  for (int i = 1; i <= 4; ++i) CHECK(row[static_cast<std::size_t>(i)] == 0.0);
  CHECK(std::abs(row[5] - 2.0) < 1e-12);
}

TEST_CASE("check suites on H_n") {
  auto r = run({"check", "involution", "--family", "F", "--n", "2", "--samples", "200"});
  CHECK(r.code == 0);
  auto rep = first_report(r.out);
  CHECK(rep["passed"] == true);
  CHECK(rep["schema"] == 1);

  r = run({"check", "butler", "--group", "hn", "--n", "2", "--samples", "100"});
  CHECK(r.code == 0);
  CHECK(first_report(r.out)["details"]["non_integrable"] == 0.0);

  r = run({"check", "rank", "--family", "F", "--n", "1", "--samples", "300"});
  CHECK(r.code == 0);
  CHECK(first_report(r.out)["details"]["min_rank"] == 3.0);

  for (const char* suite : {"integrals", "isomorphism"}) {
    r = run({"check", suite, "--n", "2", "--samples", "100"});
    CHECK(r.code == 0);
  }
  r = run({"check", "quotient", "--n", "2", "--lattice", "1,2", "--samples", "50"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["reports"].size() == 2);
  r = run({"check", "involution", "--family", "quotient", "--n", "1", "--lattice", "1", "--samples", "50"});
  CHECK(r.code == 0);
}

TEST_CASE("failing checks exit with 1 and dump witnesses") {
  write("cli_probe.json", R"({"family": "custom", "custom": [{"kind": "energy"},
      {"kind": "quadratic", "A": [[1, 0], [0, -1]], "name": "bad"}]})");
  const auto r = run({"check", "integrals", "--family", "cli_probe.json", "--n", "1", "--samples", "20"});
  CHECK(r.code == 1);
  const auto rep = first_report(r.out);
  CHECK(rep["passed"] == false);
  CHECK(rep["failures"].size() > 0);
  CHECK(rep["failures"][0]["label"] == "bad");

  write("cli_free.json", R"({"dim_v": 3, "dim_z": 3, "j_mats": [
      [[0,0,0],[0,0,-1],[0,1,0]], [[0,0,1],[0,0,0],[-1,0,0]], [[0,-1,0],[1,0,0],[0,0,0]]]})");
  const auto b = run({"check", "butler", "--group", "cli_free.json", "--samples", "100"});
  CHECK(b.code == 1);
}

TEST_CASE("P metric runs") {
  write("cli_p.json", R"({"type": "P", "P_tilde": [[2,0,0,0],[0,2,0,0],[0,0,5,0],[0,0,0,5]], "lambda": 0.5})");
  for (const char* fam : {"F", "Fprime"}) {
    const auto r = run({"check", "involution", "--metric", "cli_p.json", "--family", fam, "--samples", "100"});
    CHECK(r.code == 0);
  }
  CHECK(run({"check", "involution", "--metric", "cli_p.json", "--family", "G"}).code == 2);
  CHECK(run({"check", "involution", "--metric", "cli_p.json", "--n", "3"}).code == 2);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run({"check", "involution", "--group", "missing.json"}).code == 2);
  CHECK(run({"check", "nonsense"}).code == 2);
  CHECK(run({"check", "rank", "--n", "0"}).code == 2);
  CHECK(run({"check", "quotient", "--n", "1"}).code == 2);
  CHECK(run({"check", "quotient", "--n", "2", "--lattice", "2,3"}).code == 2);
  CHECK(run({"simulate", "--n", "1", "--y0", "1,2"}).code == 2);
  CHECK(run({"simulate", "--n", "1", "--method", "euler"}).code == 2);
  CHECK(run({"simulate", "--n", "1", "--dt", "-1"}).code == 2);
  CHECK(run({"check", "involution", "--tol", "-1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numeric blow-up exits with 3") {
  const auto r = run({"simulate", "--n", "1", "--y0", "1e300,1e300,1e300", "--T", "1", "--dt", "0.1",
                      "--out", "cli_blowup"});
  CHECK(r.code == 3);
  CHECK(r.err.find("step") != std::string::npos);
}

TEST_CASE("reports are byte-identical for equal seeds") {
  const std::vector<std::string> args{"check", "involution", "--family", "G", "--n", "2",
                                      "--samples", "50", "--seed", "99"};
  CHECK(run(args).out == run(args).out);
  auto other = args;
  other.back() = "100";
  CHECK(run(args).out != run(other).out);
  run({"check", "rank", "--n", "2", "--samples", "50", "--out", "cli_rank.json"});
  const std::string a = slurp("cli_rank.json");
  run({"check", "rank", "--n", "2", "--samples", "50", "--out", "cli_rank.json"});
  CHECK(a == slurp("cli_rank.json"));
}

TEST_CASE("algebra-info") {
  const auto r = run({"algebra-info", "--n", "2", "--samples", "50"});
  CHECK(r.code == 0);
  const auto rep = first_report(r.out);
  CHECK(rep["details"]["dim_v"] == 4.0);
  CHECK(rep["details"]["center_dim"] == 1.0);
  CHECK(rep["details"]["nonsingular"] == 1.0);
}

}  // TEST_SUITE
