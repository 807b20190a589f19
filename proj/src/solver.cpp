#include "frac/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace frac {

namespace {

// One application of the Picard map in weighted form. v holds the stored
// values of z^(1-gamma) x; the rhs is never evaluated at t = a (the grid
// function's limit slot is extrapolated instead).
GridFunction picard_map(const CauchyProblem& problem, const GridFunction& v,
                        const QuadratureScheme& scheme) {
    const ScaledGrid& grid = *v.grid();
    const double gamma = problem.params.gamma;
    const double w = 1.0 - gamma;
    const double head = problem.b / gamma_fn(gamma);

    std::vector<double> fw(v.size(), 0.0);
    for (std::size_t j = 1; j < v.size(); ++j) {
        const double z = grid.z(j);
        const double x = std::pow(z, gamma - 1.0) * v[j];
        const double f = problem.rhs(grid.t(j), x);
        if (!std::isfinite(f))
            throw std::runtime_error(
                "picard_solve: rhs returned a non-finite value at node " +
                std::to_string(j) + " (t = " + std::to_string(grid.t(j)) +
                ")");
        fw[j] = std::pow(z, w) * f;
    }
    // Limit slot by quadratic extrapolation through nodes 1..3.
    const double z1 = grid.z(1), z2 = grid.z(2), z3 = grid.z(3);
    fw[0] = fw[1] * z2 * z3 / ((z1 - z2) * (z1 - z3)) +
            fw[2] * z1 * z3 / ((z2 - z1) * (z2 - z3)) +
            fw[3] * z1 * z2 / ((z3 - z1) * (z3 - z2));
    GridFunction f_weighted(v.grid(), std::move(fw), Representation::weighted,
                            w);

    GridFunction integral =
        katugampola_integral(f_weighted, problem.params.alpha, scheme);
    std::vector<double> next(v.size());
    next[0] = head;  // z^(1-gamma) I^alpha f -> 0 as z -> 0
    for (std::size_t j = 1; j < v.size(); ++j)
        next[j] = head + std::pow(grid.z(j), w) * integral[j];
    return GridFunction(v.grid(), std::move(next), Representation::weighted,
                        w);
}

double update_sup(const GridFunction& a, const GridFunction& b) {
    double sup = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        sup = std::max(sup, std::abs(a[j] - b[j]));
    return sup;
}

}  // namespace

Solution picard_solve(const CauchyProblem& problem, GridPtr grid, double tol,
                      int max_iter, const QuadratureScheme& scheme) {
    if (!(tol > 0.0)) throw std::domain_error("picard_solve: requires tol > 0");
    if (max_iter < 1)
        throw std::domain_error("picard_solve: requires max_iter >= 1");
    if (!grid || grid->size() < 4)
        throw std::domain_error("picard_solve: need a grid with >= 4 nodes");
    if (grid->a() != problem.a || grid->rho() != problem.params.rho)
        throw std::invalid_argument(
            "picard_solve: grid endpoint/scale does not match the problem");

    const double gamma = problem.params.gamma;
    const double head = problem.b / gamma_fn(gamma);
    GridFunction v(grid, std::vector<double>(grid->size(), head),
                   Representation::weighted, 1.0 - gamma);

    Solution sol{v, 0, 0.0, false};
    double prev_update = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    for (int it = 1; it <= max_iter; ++it) {
        GridFunction next = picard_map(problem, v, scheme);
        const double upd = update_sup(next, v);
        v = std::move(next);
        sol.iterations = it;
        sol.final_update_norm = upd;
        if (upd <= tol) {
            sol.converged = true;
            break;
        }
        if (upd > prev_update) {
            if (++growth_streak >= 3) break;
        } else {
            growth_streak = 0;
        }
        prev_update = upd;
    }
    sol.x = std::move(v);
    return sol;
}

GridFunction residual(const CauchyProblem& problem, const Solution& sol,
                      const QuadratureScheme& scheme) {
    const GridFunction& v = sol.x;
    if (!v.grid())
        throw std::invalid_argument("residual: solution has no grid");
    if (v.grid()->a() != problem.a ||
        v.grid()->rho() != problem.params.rho ||
        v.is_plain() ||
        std::abs(v.weight() - (1.0 - problem.params.gamma)) > 1e-12)
        throw std::invalid_argument(
            "residual: solution grid/representation does not match the "
            "problem");
    GridFunction mapped = picard_map(problem, v, scheme);
    std::vector<double> r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) r[j] = v[j] - mapped[j];
    return GridFunction(v.grid(), std::move(r), Representation::weighted,
                        v.weight());
}

}  // namespace frac
