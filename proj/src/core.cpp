#include "frac/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace frac {

FracParams::FracParams(double alpha_, double beta_, double rho_)
    : alpha(alpha_), beta(beta_), rho(rho_),
      gamma(alpha_ + beta_ * (1.0 - alpha_)) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("FracParams: alpha must lie in (0,1), got " +
                                std::to_string(alpha_));
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::domain_error("FracParams: beta must lie in [0,1], got " +
                                std::to_string(beta_));
    if (!(rho > 0.0))
        throw std::domain_error("FracParams: rho must be positive, got " +
                                std::to_string(rho_));
}

double scaled_time(double t, double a, double rho) {
    if (!(a > 0.0)) throw std::domain_error("scaled_time: requires a > 0");
    if (!(rho > 0.0)) throw std::domain_error("scaled_time: requires rho > 0");
    if (!(t >= a)) throw std::domain_error("scaled_time: requires t >= a");
    if (rho == 1.0) return t - a;
    // a^rho * expm1(rho*log(t/a)) / rho is stable for t near a.
    return std::pow(a, rho) * std::expm1(rho * std::log(t / a)) / rho;
}

double inverse_scaled_time(double z, double a, double rho) {
    if (!(a > 0.0))
        throw std::domain_error("inverse_scaled_time: requires a > 0");
    if (!(rho > 0.0))
        throw std::domain_error("inverse_scaled_time: requires rho > 0");
    if (!(z >= 0.0))
        throw std::domain_error("inverse_scaled_time: requires z >= 0");
    if (rho == 1.0) return a + z;
    return a * std::exp(std::log1p(rho * z / std::pow(a, rho)) / rho);
}

double default_grading(double gamma) {
    return std::clamp(2.0 / gamma, 1.0, 6.0);
}

std::shared_ptr<const ScaledGrid> ScaledGrid::make_graded(double a, double T,
                                                          std::size_t n,
                                                          double rho,
                                                          double grading) {
    if (!(a > 0.0 && T > a))
        throw std::domain_error("ScaledGrid: requires 0 < a < T");
    if (n < 2) throw std::domain_error("ScaledGrid: requires N >= 2");
    if (!(rho > 0.0)) throw std::domain_error("ScaledGrid: requires rho > 0");
    if (!(grading >= 1.0))
        throw std::domain_error("ScaledGrid: requires grading r >= 1");

    auto grid = std::shared_ptr<ScaledGrid>(new ScaledGrid());
    grid->a_ = a;
    grid->T_ = T;
    grid->rho_ = rho;
    grid->grading_ = grading;
    grid->z_.resize(n);
    grid->t_.resize(n);

    const double big_z = scaled_time(T, a, rho);
    for (std::size_t j = 0; j < n; ++j) {
        const double frac_j =
            static_cast<double>(j) / static_cast<double>(n - 1);
        grid->z_[j] = big_z * std::pow(frac_j, grading);
        grid->t_[j] = inverse_scaled_time(grid->z_[j], a, rho);
    }
    // Pin the endpoints exactly.
    grid->z_[0] = 0.0;
    grid->t_[0] = a;
    grid->z_[n - 1] = big_z;
    grid->t_[n - 1] = T;

    for (std::size_t j = 1; j < n; ++j) {
        if (!(grid->z_[j] > grid->z_[j - 1]))
            throw std::domain_error("ScaledGrid: z nodes not increasing");
        if (grid->t_[j] < grid->t_[j - 1])
            throw std::domain_error("ScaledGrid: t nodes decreasing");
    }
    return grid;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values,
                           Representation rep, double weight)
    : grid_(std::move(grid)), values_(std::move(values)), rep_(rep),
      weight_(rep == Representation::plain ? 0.0 : weight) {
    if (!grid_) throw std::invalid_argument("GridFunction: null grid");
    if (values_.size() != grid_->size())
        throw std::invalid_argument(
            "GridFunction: value count does not match grid");
}

GridFunction GridFunction::sample(
    GridPtr grid, const std::function<double(double, double)>& f) {
    std::vector<double> v(grid->size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->t(j), grid->z(j));
    return GridFunction(std::move(grid), std::move(v));
}

GridFunction GridFunction::sample_weighted(
    GridPtr grid, double weight,
    const std::function<double(double, double)>& v) {
    std::vector<double> vals(grid->size());
    for (std::size_t j = 0; j < vals.size(); ++j)
        vals[j] = v(grid->t(j), grid->z(j));
    return GridFunction(std::move(grid), std::move(vals),
                        Representation::weighted, weight);
}

GridFunction GridFunction::zeros(GridPtr grid) {
    return GridFunction(std::move(grid),
                        std::vector<double>(grid ? grid->size() : 0, 0.0));
}

double GridFunction::plain_value(std::size_t j) const {
    if (rep_ == Representation::plain || weight_ == 0.0) return values_[j];
    const double z = grid_->z(j);
    if (z > 0.0) return values_[j] * std::pow(z, -weight_);
    if (values_[j] == 0.0 && weight_ > 0.0) return 0.0;
    // limit of z^-w * (z^w f): infinite for w > 0, zero for w < 0
    if (weight_ > 0.0)
        return std::copysign(std::numeric_limits<double>::infinity(),
                             values_[j]);
    return 0.0;
}

namespace {

// Quadratic extrapolation to z = 0 through the three smallest positive
// nodes (Lagrange form).
double extrapolate_limit(const ScaledGrid& grid,
                         const std::vector<double>& v) {
    if (grid.size() < 4)
        throw std::domain_error(
            "to_weighted: need >= 4 nodes to extrapolate the z = 0 limit");
    const double z1 = grid.z(1), z2 = grid.z(2), z3 = grid.z(3);
    const double l1 = z2 * z3 / ((z1 - z2) * (z1 - z3));
    const double l2 = z1 * z3 / ((z2 - z1) * (z2 - z3));
    const double l3 = z1 * z2 / ((z3 - z1) * (z3 - z2));
    return l1 * v[1] + l2 * v[2] + l3 * v[3];
}

}  // namespace

GridFunction to_weighted(const GridFunction& g, double w, double limit) {
    if (!g.is_plain())
        throw std::invalid_argument("to_weighted: input already weighted");
    const ScaledGrid& grid = *g.grid();
    std::vector<double> v(g.size());
    for (std::size_t j = 1; j < v.size(); ++j)
        v[j] = g[j] * std::pow(grid.z(j), w);
    v[0] = limit;
    return GridFunction(g.grid(), std::move(v), Representation::weighted, w);
}

GridFunction to_weighted(const GridFunction& g, double w) {
    if (!g.is_plain())
        throw std::invalid_argument("to_weighted: input already weighted");
    const ScaledGrid& grid = *g.grid();
    std::vector<double> v(g.size());
    for (std::size_t j = 1; j < v.size(); ++j)
        v[j] = g[j] * std::pow(grid.z(j), w);
    v[0] = extrapolate_limit(grid, v);
    return GridFunction(g.grid(), std::move(v), Representation::weighted, w);
}

GridFunction from_weighted(const GridFunction& g) {
    if (g.is_plain())
        throw std::invalid_argument("from_weighted: input not weighted");
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = g.plain_value(j);
    return GridFunction(g.grid(), std::move(v));
}

CauchyProblem::CauchyProblem(FracParams params_, double a_, double b_,
                             std::function<double(double, double)> rhs_)
    : params(params_), a(a_), b(b_), rhs(std::move(rhs_)) {
    if (!(a > 0.0)) throw std::domain_error("CauchyProblem: requires a > 0");
    if (b == 0.0)
        throw std::domain_error("CauchyProblem: requires b != 0");
    if (!rhs) throw std::invalid_argument("CauchyProblem: missing rhs");
}

}  // namespace frac
