#ifndef FRAC_SOLVER_HPP
#define FRAC_SOLVER_HPP

#include "frac/core.hpp"
#include "frac/operators.hpp"

// Solves the Cauchy-type problem through its equivalent Volterra integral
// equation
//   x(t) = b/Gamma(gamma) z^(gamma-1) + I^alpha f(., x(.)),
// iterating the fixed point in the weighted unknown v = z^(1-gamma) x,
// which stays continuous down to z = 0 while x itself blows up.
//
// picard_solve is single-threaded and deterministic for fixed inputs;
// distinct problems may run concurrently.

namespace frac {

struct Solution {
    /// Weighted representation of x with exponent 1-gamma; the limit slot
    /// equals b/Gamma(gamma).
    GridFunction x;
    int iterations = 0;
    double final_update_norm = 0.0;
    bool converged = false;
};

/// Picard iteration v_{k+1} = b/Gamma(gamma) + z^(1-gamma) I^alpha f(., x_k)
/// until the weighted sup norm of the update is <= tol or max_iter is hit.
/// Non-convergence is reported through Solution::converged, not thrown;
/// the iteration also stops early after three consecutive growing updates.
Solution picard_solve(const CauchyProblem& problem, GridPtr grid, double tol,
                      int max_iter, const QuadratureScheme& scheme = {});

/// Weighted residual z^(1-gamma) [x - b/Gamma(gamma) z^(gamma-1)
/// - I^alpha f(., x)] of a candidate solution.
GridFunction residual(const CauchyProblem& problem, const Solution& sol,
                      const QuadratureScheme& scheme = {});

}  // namespace frac

#endif
