#pragma once

#include <functional>

#include "nilflow/group.hpp"

namespace nilflow {

/// Smooth function on TN.
using ScalarField = std::function<double(const TangentState&)>;

/// Left-trivialized symplectic form
///   Omega_(p,Y)((U,V),(U',V')) = <U,V'> - <V,U'> + <Y,[U,U']>.
/// Independent of p.
double omega(const Algebra2Step& a, const TangentState& s, const TangentVectorPair& x,
             const TangentVectorPair& y);

/// Matrix of Omega at s in the product basis (e_i, 0), (0, e_i).
Matrix omega_matrix(const Algebra2Step& a, const TangentState& s);

/// Hamiltonian field of a function with gradient (U, V): (V, ad^t(V)Y - U).
TangentVectorPair grad_to_hamiltonian(const Algebra2Step& a, const AlgebraVector& y,
                                      const TangentVectorPair& grad);

/// Poisson bracket from gradients: <V',U> - <V,U'> - <Y,[V,V']>.
double poisson(const Algebra2Step& a, const TangentState& s, const TangentVectorPair& grad_f,
               const TangentVectorPair& grad_g);

/// Same bracket written with the j-map: <V',U> - <V,U'> + <j(Y_z)V'_v, V_v>.
/// Kept as an independent evaluation path for cross-checks.
double poisson_jmap(const Algebra2Step& a, const TangentState& s,
                    const TangentVectorPair& grad_f, const TangentVectorPair& grad_g);

/// Residual <Y,U> - <Y,[V,Y]> of the first-integral criterion; vanishes at
/// every state iff the function with gradient (U,V) Poisson-commutes with
/// the energy.
double first_integral_residual(const Algebra2Step& a, const TangentState& s,
                               const TangentVectorPair& grad);

/// Default base step for numeric differentiation.
inline constexpr double kNumericStep = 1e-5;

/// Metric gradient of f by central differences along c(t) = (p exp(tU), Y + tV)
/// for each basis direction. The step for coordinate i is
/// step * (1 + |coordinate_i|). Throws NumericError on non-finite values.
TangentVectorPair numeric_gradient(const NilpotentGroup& g, const ScalarField& f,
                                   const TangentState& s, double step = kNumericStep);

}  // namespace nilflow
