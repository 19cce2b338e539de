#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilflow/integrals.hpp"
#include "nilflow/sampling.hpp"

namespace nilflow {

enum class IntegrationMethod { Rk4, ExactFiber };

std::string to_string(IntegrationMethod m);
/// Parses "rk4" or "exact-fiber"; throws InputError otherwise.
IntegrationMethod parse_method(const std::string& name);

struct GeodesicVelocity {
  /// Coordinate velocity of p, frame(p) * Y.
  Vector dp;
  /// dY = j(Y_z) Y_v.
  AlgebraVector dy;
};

/// Geodesic field X_E(p,Y) = (Y, j(Y_z) Y_v) in coordinates.
GeodesicVelocity geodesic_field(const NilpotentGroup& g, const TangentState& s);

struct Trajectory {
  std::vector<double> times;
  std::vector<TangentState> states;
  IntegrationMethod method = IntegrationMethod::Rk4;
  double dt = 0.0;
};

/// Fixed-step integration over [0, T]; floor(T/dt) + 1 recorded states.
/// ExactFiber advances Y by the exact rotation exp(t j(Y_z)) and transports
/// p with RK4 against that exact velocity. Throws InputError for dt <= 0 or
/// T <= 0 and NumericError (with the step index) on non-finite states.
Trajectory integrate(const NilpotentGroup& g, const TangentState& s0, double horizon, double dt,
                     IntegrationMethod method = IntegrationMethod::Rk4);

/// Y(t) = (exp(t j(Y_z)) Y_v(0), Y_z).
AlgebraVector exact_fiber_solution(const Algebra2Step& a, const AlgebraVector& y0, double t);

struct DriftReport {
  std::vector<std::string> names;
  std::vector<double> drift;
  double max_drift = 0.0;
};

/// drift_i = max_t |F_i(t) - F_i(0)| / (1 + |F_i(0)|).
DriftReport conservation_report(const Trajectory& traj, const Family& family);

inline constexpr double kGradientRankTolerance = 1e-8;

struct RankReport {
  int min_rank = 0;
  int full_rank = 0;
  double fraction_full_rank = 0.0;
  int samples = 0;
};

/// Rank of the gradient matrix (members x 2 dim) at one state.
int gradient_rank(const Family& family, const TangentState& s,
                  double rel_tol = kGradientRankTolerance);

/// Numerical rank of the gradients at seeded random states.
RankReport rank_check(const Family& family, int sample_count, std::uint64_t seed,
                      const SamplingOptions& opts = {});

}  // namespace nilflow
