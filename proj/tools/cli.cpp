#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nilflow/errors.hpp"
#include "nilflow/geodesic.hpp"
#include "nilflow/heisenberg.hpp"
#include "nilflow/involution.hpp"
#include "nilflow/io.hpp"
#include "nilflow/lattice.hpp"
#include "nilflow/report.hpp"

namespace nilflow::cli {

namespace {

/// Lattice elements are drawn from a stream disjoint from the states.
constexpr std::uint64_t kLatticeStream = 0x6c61747469636521ULL;
/// Killing generators for the isomorphism suite.
constexpr std::uint64_t kKillingStream = 0x6b696c6c696e6721ULL;

struct Options {
  std::string group = "hn";
  int n = 1;
  bool n_given = false;
  std::string metric = "canonical";
  std::string family;
  std::string lattice;
  int samples = 1000;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string out;
};

struct SimulateOptions {
  std::vector<double> y0;
  std::vector<double> p0;
  double horizon = 1.0;
  double dt = 1e-3;
  std::string method = "rk4";
};

struct Model {
  std::shared_ptr<NilpotentGroup> group;
  std::optional<PMetricSpec> pspec;
  bool canonical_hn = false;
  int n = 0;
};

Model build_model(const Options& o) {
  Model m;
  if (o.group == "hn") {
    if (o.metric == "canonical") {
      if (o.n < 1) throw ConfigError("--n must be >= 1");
      m.group = std::make_shared<NilpotentGroup>(heisenberg_group(o.n));
      m.canonical_hn = true;
      m.n = o.n;
      return m;
    }
    const auto cfg = io::load_metric(o.metric);
    if (cfg.canonical) {
      Options canonical = o;
      canonical.metric = "canonical";
      return build_model(canonical);
    }
    m.pspec = build_p_metric(cfg.p_tilde, cfg.lambda);
    m.n = static_cast<int>(cfg.p_tilde.rows() / 2);
    if (o.n_given && o.n != m.n) throw ConfigError("--n does not match the size of P_tilde");
    m.group = std::make_shared<NilpotentGroup>(m.pspec->group);
    return m;
  }
  if (o.metric != "canonical") {
    throw ConfigError("--metric applies to --group hn; put the metric in the algebra file");
  }
  m.group = std::make_shared<NilpotentGroup>(io::load_algebra(o.group));
  return m;
}

std::optional<LatticeSpec> build_lattice(const Options& o, const Model& m) {
  if (o.lattice.empty()) return std::nullopt;
  std::optional<LatticeSpec> l;
  if (std::filesystem::exists(o.lattice)) {
    l = io::load_lattice(o.lattice);
  } else {
    std::vector<long long> r;
    std::stringstream ss(o.lattice);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("--lattice must be a JSON file or a list like 1,2");
      }
    }
    l = LatticeSpec(std::move(r));
  }
  if (!m.canonical_hn || l->n() != m.n) throw ConfigError("lattice needs the canonical H_n with matching n");
  return l;
}

Family named_family(const std::string& name, const Model& m) {
  if (m.pspec) {
    if (name == "F") return m.pspec->f;
    if (name == "Fprime") return m.pspec->f_prime;
    throw ConfigError("family " + name + " is not available for a P metric (use F or Fprime)");
  }
  return io::build_family(*m.group, io::FamilyConfig{name, 0, {}});
}

Family build_family(const Options& o, const Model& m, const std::optional<LatticeSpec>& lattice) {
  std::string name = o.family;
  if (name.empty()) {
    if (m.pspec) return m.pspec->f;
    if (!m.canonical_hn) return Family{"energy", {FirstIntegral::energy(*m.group).renamed("E")}};
    name = "G";
  }
  if (name == "quotient" || name == "quotient-prime") {
    if (!lattice) throw ConfigError("family quotient needs --lattice");
    return quotient_family(*m.group, *lattice, name == "quotient-prime");
  }
  if (name == "G" || name == "F" || name == "Fprime") return named_family(name, m);
  const auto cfg = io::load_family_config(name);
  if (cfg.family == "custom") return io::build_family(*m.group, cfg);
  if (cfg.n != 0 && cfg.n != m.n) throw ConfigError("family n does not match the group");
  return named_family(cfg.family, m);
}

bool is_quotient(const Family& f) { return f.name.rfind("quotient", 0) == 0; }

SamplingOptions sampling_for(const Family& f) {
  SamplingOptions s;
  if (is_quotient(f)) s.min_abs_yz = 0.1;
  return s;
}

double tol_or(const Options& o, double fallback) {
  if (!o.tol) return fallback;
  if (!(*o.tol > 0.0)) throw ConfigError("--tol must be positive");
  return *o.tol;
}

double family_tolerance(const Options& o, const Model& m, const Family& f, double canonical) {
  if (is_quotient(f)) return tol_or(o, 1e-8);
  return tol_or(o, m.pspec ? 1e-9 : canonical);
}

void add_model_info(CheckReport& r, const Options& o, const Model& m) {
  r.add_info("group", o.group == "hn" ? "hn" : o.group);
  r.add_info("metric", m.pspec ? "P" : "canonical");
  r.add_detail("dim", m.group->dim());
  r.add_detail("seed", static_cast<double>(o.seed));
}

CheckReport check_involution(const Options& o, const Model& m, const Family& fam) {
  CheckReport r;
  r.check = "involution";
  r.samples = o.samples;
  r.tolerance = family_tolerance(o, m, fam, 1e-10);
  add_model_info(r, o, m);
  r.add_info("family", fam.name);
  const auto opts = sampling_for(fam);
  for (int i = 0; i < o.samples; ++i) {
    const auto s = sample_state(*m.group, o.seed, static_cast<std::uint64_t>(i), opts);
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b)
        r.record(static_cast<std::uint64_t>(i), s, poisson(fam.members[a], fam.members[b], s),
                 "{" + fam.members[a].name() + "," + fam.members[b].name() + "}");
  }
  return r;
}

CheckReport check_integrals(const Options& o, const Model& m, const Family& fam) {
  CheckReport r;
  r.check = "integrals";
  r.samples = o.samples;
  r.tolerance = family_tolerance(o, m, fam, 1e-10);
  add_model_info(r, o, m);
  r.add_info("family", fam.name);
  const auto opts = sampling_for(fam);
  for (int i = 0; i < o.samples; ++i) {
    const auto s = sample_state(*m.group, o.seed, static_cast<std::uint64_t>(i), opts);
    for (const auto& f : fam.members) r.record(static_cast<std::uint64_t>(i), s, residual(f, s), f.name());
  }
  return r;
}

CheckReport check_rank(const Options& o, const Model& m, const Family& fam) {
  CheckReport r;
  r.check = "rank";
  r.samples = o.samples;
  r.tolerance = tol_or(o, kGradientRankTolerance);
  add_model_info(r, o, m);
  r.add_info("family", fam.name);
  const auto rep = rank_check(fam, o.samples, o.seed, sampling_for(fam));
  r.add_detail("family_size", static_cast<double>(fam.size()));
  r.add_detail("min_rank", rep.min_rank);
  r.add_detail("fraction_full_rank", rep.fraction_full_rank);
  r.max_abs_residual = 1.0 - rep.fraction_full_rank;
  if (rep.fraction_full_rank < 0.99) r.fail("full rank at fewer than 99% of samples");
  return r;
}

CheckReport check_butler(const Options& o, const Model& m) {
  CheckReport r;
  r.check = "butler";
  r.samples = o.samples;
  add_model_info(r, o, m);
  const auto res = butler_predicate(m.group->algebra(), o.samples, o.seed);
  r.add_detail("non_integrable", res.non_integrable ? 1.0 : 0.0);
  r.add_detail("min_annihilator_dim", res.min_annihilator_dim);
  r.add_detail("positive_fraction", res.positive_fraction);
  r.max_abs_residual = res.positive_fraction;
  std::string w;
  for (int idx : res.witnesses) w += (w.empty() ? "" : ",") + std::to_string(idx);
  r.add_info("witness_samples", w);
  if (res.non_integrable) r.fail("algebra satisfies the non-integrability predicate");
  return r;
}

std::vector<CheckReport> check_quotient(const Options& o, const Model& m,
                                        const std::optional<LatticeSpec>& lattice) {
  if (!lattice) throw ConfigError("check quotient needs --lattice");
  const auto& g = *m.group;
  const int n = m.n;
  CheckReport inv;
  inv.check = "quotient-invariance";
  inv.samples = o.samples;
  inv.tolerance = tol_or(o, 1e-9);
  add_model_info(inv, o, m);
  SamplingOptions opts;
  opts.min_abs_yz = 0.1;
  const Family fam = quotient_family(g, *lattice);
  const Family famp = quotient_family(g, *lattice, true);
  for (int i = 0; i < o.samples; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const auto s = sample_state(g, o.seed, idx, opts);
    SampleRng rng(o.seed ^ kLatticeStream, idx);
    const auto q = lattice->random_element(rng, 3);
    const auto moved = act(g, *lattice, q, s);
    for (int k = 0; k < 2 * n; ++k) {
      inv.record(idx, s, smoothed_integral(g, k, moved) - smoothed_integral(g, k, s),
                 "Fbar_" + std::to_string(k + 1));
      const double mult = shift_multiple(g, k, q, s);
      inv.record(idx, s, mult - std::round(mult), "shift F_" + std::to_string(k + 1));
    }
    for (const auto* f : {&fam, &famp})
      for (const auto& member : f->members) inv.record(idx, s, eval(member, moved) - eval(member, s), member.name());
  }

  CheckReport drift;
  drift.check = "quotient-drift";
  drift.tolerance = tol_or(o, 1e-6);
  add_model_info(drift, o, m);
  const int runs = std::min(o.samples, 3);
  drift.samples = runs;
  for (int i = 0; i < runs; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const auto s = sample_state(g, o.seed, idx, opts);
    const auto traj = integrate(g, s, 10.0, 1e-3);
    for (const auto* f : {&fam, &famp}) {
      const auto rep = conservation_report(traj, *f);
      for (std::size_t k = 0; k < rep.names.size(); ++k) drift.record(idx, s, rep.drift[k], rep.names[k]);
    }
  }
  return {inv, drift};
}

CheckReport check_isomorphism(const Options& o, const Model& m) {
  if (!m.canonical_hn) throw ConfigError("check isomorphism needs the canonical H_n");
  const auto& g = *m.group;
  const int n = m.n;
  CheckReport r;
  r.check = "isomorphism";
  r.samples = o.samples;
  r.tolerance = tol_or(o, 1e-10);
  add_model_info(r, o, m);

  const auto k_basis = isotropy_basis(n);
  std::vector<FirstIntegral> fs;
  for (const auto& t : k_basis) fs.push_back(FirstIntegral::rotation(g, t));
  for (int k = 0; k < 2 * n; ++k) fs.push_back(FirstIntegral::translation(g, k));
  fs.push_back(FirstIntegral::linear_central(g, Vector::Ones(1)));
  const int expected = static_cast<int>(fs.size());
  const int probes = std::max(o.samples, 2 * expected);
  Matrix eval_m(probes, expected);
  for (int i = 0; i < probes; ++i) {
    const auto s = sample_state(g, o.seed, static_cast<std::uint64_t>(i));
    for (int c = 0; c < expected; ++c) eval_m(i, c) = eval(fs[static_cast<std::size_t>(c)], s);
  }
  const int rank = linalg::rank(eval_m);
  r.add_detail("isometry_algebra_dim", expected);
  r.add_detail("evaluation_rank", rank);
  if (rank != expected) r.fail("evaluation matrix is rank deficient");

  // f_{X*} against the momentum <pull_back(X*(p)), Y> built from the isometry action.
  for (int i = 0; i < o.samples; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    SampleRng rng(o.seed ^ kKillingStream, idx);
    IsometryAlgebraElement x{Matrix::Zero(2 * n, 2 * n), rng.normal_vector(2 * n + 1)};
    for (const auto& t : k_basis) x.t += rng.normal() * t;
    const auto s = sample_state(g, o.seed, idx);
    const double direct = g.algebra().inner(g.pull_back(s.p, killing_field(g, x, s.p)), s.Y);
    const double via = eval(killing_to_integral(g, x), s);
    r.record(idx, s, (via - direct) / (1.0 + std::abs(direct)), "f_X*");
  }
  return r;
}

CheckReport algebra_info(const Options& o, const Model& m) {
  const auto& a = m.group->algebra();
  CheckReport r;
  r.check = "algebra-info";
  r.samples = o.samples;
  add_model_info(r, o, m);
  r.add_detail("dim_v", a.dim_v());
  r.add_detail("dim_z", a.dim_z());
  r.add_detail("center_dim", static_cast<double>(a.center().cols()));
  const auto ns = a.is_nonsingular(o.samples, o.seed);
  r.add_detail("nonsingular", ns.nonsingular ? 1.0 : 0.0);
  const auto butler = butler_predicate(a, o.samples, o.seed);
  r.add_detail("butler_non_integrable", butler.non_integrable ? 1.0 : 0.0);
  r.add_detail("min_annihilator_dim", butler.min_annihilator_dim);
  r.add_info("standard_metric", a.has_standard_metric() ? "true" : "false");
  return r;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

int finish(const std::vector<CheckReport>& reports, const Options& o, std::ostream& out) {
  emit(to_json(reports), o.out, out);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  if (!o.out.empty()) {
    for (const auto& r : reports) {
      out << r.check << ": " << (r.passed ? "pass" : "FAIL") << " (max residual "
          << format_double(r.max_abs_residual) << ")\n";
    }
  }
  return ok ? kPass : kCheckFailed;
}

AlgebraVector vector_flag(const std::vector<double>& v, int dim, const char* flag) {
  if (v.empty()) return AlgebraVector::Zero(dim);
  if (static_cast<int>(v.size()) != dim) {
    throw ConfigError(std::string(flag) + " needs " + std::to_string(dim) + " comma-separated values");
  }
  return Eigen::Map<const Vector>(v.data(), dim);
}

int simulate(const Options& o, const SimulateOptions& so, std::ostream& out) {
  const Model m = build_model(o);
  const auto lattice = build_lattice(o, m);
  const Family fam = build_family(o, m, lattice);
  const auto& g = *m.group;
  const int dim = g.dim();
  TangentState s0{vector_flag(so.p0, dim, "--p0"), vector_flag(so.y0, dim, "--y0")};
  if (so.y0.empty()) {
    s0.Y(0) = 1.0;
    s0.Y(dim - 1) = 1.0;
  }
  IntegrationMethod method;
  try {
    method = parse_method(so.method);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (!(so.dt > 0.0) || !(so.horizon > 0.0)) throw ConfigError("--T and --dt must be positive");
  const auto traj = integrate(g, s0, so.horizon, so.dt, method);
  const auto drift = conservation_report(traj, fam);

  CheckReport r;
  r.check = "simulate";
  r.samples = static_cast<int>(traj.states.size());
  r.tolerance = tol_or(o, 1e-6);
  add_model_info(r, o, m);
  r.add_info("family", fam.name);
  r.add_info("method", to_string(method));
  r.add_detail("T", so.horizon);
  r.add_detail("dt", so.dt);
  for (std::size_t i = 0; i < drift.names.size(); ++i) {
    r.add_detail("drift " + drift.names[i], drift.drift[i]);
    r.record(traj.states.size() - 1, traj.states.back(), drift.drift[i], drift.names[i]);
  }

  const std::string prefix = o.out.empty() ? "trajectory" : o.out;
  std::ofstream csv(prefix + ".csv", std::ios::binary);
  if (!csv) throw ConfigError("cannot write '" + prefix + ".csv'");
  io::write_trajectory_csv(csv, traj);
  emit(to_json(std::vector<CheckReport>{r}), prefix + ".json", out);
  out << "simulate: " << traj.states.size() << " states, max drift "
      << format_double(drift.max_drift) << (r.passed ? " (pass)" : " (FAIL)") << "\n";
  return r.passed ? kPass : kCheckFailed;
}

int check(const Options& o, const std::string& suite, std::ostream& out) {
  const Model m = build_model(o);
  const auto lattice = build_lattice(o, m);
  if (suite == "butler") return finish({check_butler(o, m)}, o, out);
  if (suite == "isomorphism") return finish({check_isomorphism(o, m)}, o, out);
  if (suite == "quotient") return finish(check_quotient(o, m, lattice), o, out);
  const Family fam = build_family(o, m, lattice);
  if (suite == "involution") return finish({check_involution(o, m, fam)}, o, out);
  if (suite == "integrals") return finish({check_integrals(o, m, fam)}, o, out);
  if (suite == "rank") return finish({check_rank(o, m, fam)}, o, out);
  throw ConfigError("unknown check '" + suite + "'");
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--group", o.group, "hn or a path to an algebra JSON file");
  app->add_option("--n", o.n, "Heisenberg dimension n of H_n");
  app->add_option("--metric", o.metric, "canonical or a path to a metric JSON file");
  app->add_option("--family", o.family, "G, F, Fprime, quotient, quotient-prime or a family JSON file");
  app->add_option("--lattice", o.lattice, "lattice JSON file or r as a list like 1,2");
  app->add_option("--samples", o.samples, "number of sampled states")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "64-bit seed");
  app->add_option("--tol", o.tol, "tolerance override");
  app->add_option("--out", o.out, "output file (check) or prefix (simulate)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic flows on 2-step nilpotent Lie groups"};
  app.require_subcommand(1);
  Options o;
  SimulateOptions so;
  std::string suite;

  auto* sim = app.add_subcommand("simulate", "integrate a geodesic and report conservation");
  add_common(sim, o);
  sim->add_option("--y0", so.y0, "initial velocity Y(0), comma separated")->delimiter(',');
  sim->add_option("--p0", so.p0, "initial point p(0), comma separated")->delimiter(',');
  sim->add_option("--T", so.horizon, "time horizon");
  sim->add_option("--dt", so.dt, "step size");
  sim->add_option("--method", so.method, "rk4 or exact-fiber");

  auto* chk = app.add_subcommand("check", "run a certification suite");
  add_common(chk, o);
  chk->add_option("suite", suite, "involution, integrals, rank, butler, quotient or isomorphism")
      ->required()
      ->check(CLI::IsMember({"involution", "integrals", "rank", "butler", "quotient", "isomorphism"}));

  auto* info = app.add_subcommand("algebra-info", "describe the algebra");
  add_common(info, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }
  for (auto* sub : {sim, chk, info}) {
    if (sub->parsed()) o.n_given = sub->count("--n") > 0;
  }

  try {
    if (sim->parsed()) return simulate(o, so, out);
    if (chk->parsed()) return check(o, suite, out);
    const Model m = build_model(o);
    return finish({algebra_info(o, m)}, o, out) == kPass ? kPass : kCheckFailed;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InputError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace nilflow::cli
