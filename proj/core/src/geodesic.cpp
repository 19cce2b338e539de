#include "nilflow/geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "nilflow/errors.hpp"

namespace nilflow {

std::string to_string(IntegrationMethod m) {
  return m == IntegrationMethod::Rk4 ? "rk4" : "exact-fiber";
}

IntegrationMethod parse_method(const std::string& name) {
  if (name == "rk4") return IntegrationMethod::Rk4;
  if (name == "exact-fiber") return IntegrationMethod::ExactFiber;
  throw InputError("unknown integration method '" + name + "' (expected rk4 or exact-fiber)");
}

GeodesicVelocity geodesic_field(const NilpotentGroup& g, const TangentState& s) {
  return {g.push_forward(s.p, s.Y), g.algebra().ad_transpose(s.Y, s.Y)};
}

namespace {

TangentState rk4_step(const NilpotentGroup& g, const TangentState& s, double dt) {
  const auto k1 = geodesic_field(g, s);
  const auto k2 = geodesic_field(g, {s.p + 0.5 * dt * k1.dp, s.Y + 0.5 * dt * k1.dy});
  const auto k3 = geodesic_field(g, {s.p + 0.5 * dt * k2.dp, s.Y + 0.5 * dt * k2.dy});
  const auto k4 = geodesic_field(g, {s.p + dt * k3.dp, s.Y + dt * k3.dy});
  return {s.p + dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp),
          s.Y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
}

/// Y_z is constant along geodesics, so the fiber propagators are fixed.
struct FiberPropagator {
  Matrix full;
  Matrix half;
};

TangentState exact_fiber_step(const NilpotentGroup& g, const TangentState& s, double dt,
                              const FiberPropagator& prop) {
  const auto& a = g.algebra();
  const int dv = a.dim_v();
  AlgebraVector y_half = s.Y;
  y_half.head(dv) = prop.half * s.Y.head(dv);
  AlgebraVector y_full = s.Y;
  y_full.head(dv) = prop.full * s.Y.head(dv);
  const Vector k1 = g.push_forward(s.p, s.Y);
  const Vector k2 = g.push_forward(s.p + 0.5 * dt * k1, y_half);
  const Vector k3 = g.push_forward(s.p + 0.5 * dt * k2, y_half);
  const Vector k4 = g.push_forward(s.p + dt * k3, y_full);
  return {s.p + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), y_full};
}

}  // namespace

Trajectory integrate(const NilpotentGroup& g, const TangentState& s0, double horizon, double dt,
                     IntegrationMethod method) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InputError("T must be positive");
  check_state(g, s0);
  const auto steps = static_cast<long long>(std::floor(horizon / dt + 1e-9));

  FiberPropagator prop;
  if (method == IntegrationMethod::ExactFiber) {
    const Matrix k = g.algebra().j_of(g.algebra().z_part(s0.Y));
    prop = {linalg::expm(dt * k), linalg::expm(0.5 * dt * k)};
  }

  Trajectory traj;
  traj.method = method;
  traj.dt = dt;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(s0);
  TangentState s = s0;
  for (long long i = 1; i <= steps; ++i) {
    s = method == IntegrationMethod::Rk4 ? rk4_step(g, s, dt) : exact_fiber_step(g, s, dt, prop);
    if (!s.p.allFinite() || !s.Y.allFinite()) {
      throw NumericError("non-finite state at step " + std::to_string(i));
    }
    traj.times.push_back(static_cast<double>(i) * dt);
    traj.states.push_back(s);
  }
  return traj;
}

AlgebraVector exact_fiber_solution(const Algebra2Step& a, const AlgebraVector& y0, double t) {
  a.check(y0);
  AlgebraVector y = y0;
  y.head(a.dim_v()) = linalg::expm(t * a.j_of(a.z_part(y0))) * y0.head(a.dim_v());
  return y;
}

DriftReport conservation_report(const Trajectory& traj, const Family& family) {
  DriftReport out;
  for (const auto& f : family.members) {
    double d = 0.0;
    if (!traj.states.empty()) {
      const double f0 = eval(f, traj.states.front());
      for (const auto& s : traj.states) d = std::max(d, std::abs(eval(f, s) - f0) / (1.0 + std::abs(f0)));
    }
    out.names.push_back(f.name());
    out.drift.push_back(d);
    out.max_drift = std::max(out.max_drift, d);
  }
  return out;
}

int gradient_rank(const Family& family, const TangentState& s, double rel_tol) {
  if (family.members.empty()) return 0;
  const int dim = family.members.front().group().dim();
  Matrix m(static_cast<Eigen::Index>(family.size()), 2 * dim);
  for (std::size_t i = 0; i < family.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = grad(family.members[i], s).flat().transpose();
  }
  if (!m.allFinite()) throw NumericError("non-finite gradient in rank check");
  return linalg::rank(m, rel_tol);
}

RankReport rank_check(const Family& family, int sample_count, std::uint64_t seed,
                      const SamplingOptions& opts) {
  if (sample_count < 1) throw InputError("rank check needs at least one sample");
  if (family.members.empty()) throw InputError("rank check needs a non-empty family");
  const auto& g = family.members.front().group();
  const int full = static_cast<int>(family.size());
  RankReport out;
  out.samples = sample_count;
  out.min_rank = full;
  for (int i = 0; i < sample_count; ++i) {
    const int r = gradient_rank(family, sample_state(g, seed, static_cast<std::uint64_t>(i), opts));
    out.min_rank = std::min(out.min_rank, r);
    if (r == full) ++out.full_rank;
  }
  out.fraction_full_rank = static_cast<double>(out.full_rank) / sample_count;
  return out;
}

}  // namespace nilflow
