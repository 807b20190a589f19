#include "frac/operators.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace frac {

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: requires x > 0, got " +
                                std::to_string(x));
    return std::tgamma(x);
}

double power_integral_coeff(double sigma, double alpha) {
    if (!(sigma > -1.0))
        throw std::domain_error("power_integral_coeff: requires sigma > -1");
    if (!(alpha > 0.0))
        throw std::domain_error("power_integral_coeff: requires alpha > 0");
    return std::exp(std::lgamma(sigma + 1.0) - std::lgamma(sigma + alpha + 1.0));
}

namespace {

double snap_tiny(double x) { return std::abs(x) < 1e-13 ? 0.0 : x; }

// Product rule for int_0^{z_j} (z_j - s)^(alpha-1) g(s) ds / Gamma(alpha)
// with g piecewise linear (or piecewise constant) between z nodes.
// Cell [z_k, z_{k+1}] against target z_j uses the exact kernel moments
//   M0 = (A^alpha - B^alpha)/alpha,
//   M1 = A*M0 - (A^(alpha+1) - B^(alpha+1))/(alpha+1),
// where A = z_j - z_k, B = z_j - z_{k+1}.
std::vector<double> product_convolution(const std::vector<double>& z,
                                        const std::vector<double>& g,
                                        double alpha, bool trapezoid) {
    const std::size_t n = z.size();
    std::vector<double> out(n, 0.0);
    const double inv_gamma_alpha = 1.0 / gamma_fn(alpha);
    std::vector<double> pow_a(n), pow_a1(n);
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            const double d = z[j] - z[k];
            pow_a[k] = std::pow(d, alpha);
            pow_a1[k] = pow_a[k] * d;
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < j; ++k) {
            const double a_len = z[j] - z[k];
            const double m0 = (pow_a[k] - pow_a[k + 1]) / alpha;
            if (trapezoid) {
                const double h = z[k + 1] - z[k];
                const double m1 = a_len * m0 -
                                  (pow_a1[k] - pow_a1[k + 1]) / (alpha + 1.0);
                acc += g[k] * m0 + (g[k + 1] - g[k]) * (m1 / h);
            } else {
                acc += g[k] * m0;
            }
        }
        out[j] = acc * inv_gamma_alpha;
    }
    return out;
}

}  // namespace

GridFunction katugampola_integral(const GridFunction& g, double alpha,
                                  const QuadratureScheme& scheme) {
    if (!(alpha > 0.0))
        throw std::domain_error("katugampola_integral: requires alpha > 0");
    if (g.size() < 2)
        throw std::domain_error("katugampola_integral: need >= 2 nodes");
    const ScaledGrid& grid = *g.grid();
    const bool trapezoid =
        scheme.kind == QuadratureScheme::Kind::product_trapezoid;

    if (g.is_plain()) {
        for (std::size_t j = 0; j < g.size(); ++j)
            if (!std::isfinite(g[j]))
                throw std::domain_error(
                    "katugampola_integral: non-finite plain value at node " +
                    std::to_string(j) +
                    "; supply the weighted representation instead");
        return GridFunction(g.grid(),
                            product_convolution(grid.z_nodes(), g.values(),
                                                alpha, trapezoid));
    }

    // Weighted input: f = z^sigma * stored with sigma = -w. Subtract the
    // leading power limit*z^sigma (integrated in closed form) and feed the
    // bounded remainder through the product rule. Exponents within 1e-13
    // of zero are snapped: z^eps jitter would otherwise be amplified by
    // later finite differencing on graded meshes.
    const double sigma = snap_tiny(-g.weight());
    const double limit = g[0];
    if (!(sigma > -1.0) && limit != 0.0)
        throw std::domain_error(
            "katugampola_integral: endpoint singularity z^" +
            std::to_string(sigma) + " is not integrable");
    std::vector<double> diff(g.size(), 0.0);
    for (std::size_t j = 1; j < g.size(); ++j)
        diff[j] = (sigma == 0.0 ? 1.0 : std::pow(grid.z(j), sigma)) *
                  (g[j] - limit);
    std::vector<double> out =
        product_convolution(grid.z_nodes(), diff, alpha, trapezoid);
    if (limit != 0.0) {
        const double coeff = limit * power_integral_coeff(sigma, alpha);
        const double expo = snap_tiny(sigma + alpha);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += coeff * (expo == 0.0 ? 1.0 : std::pow(grid.z(j), expo));
    }
    return GridFunction(g.grid(), std::move(out));
}

namespace {

// Quadratic-exact three-point stencils written in slope form, which
// vanishes identically on constant data even in floating point (the
// coefficient-sum form does not, and its 1/h residues blow up on
// strongly graded meshes).
std::vector<double> three_point_dz(const ScaledGrid& grid,
                                   const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    auto slopes = [&](std::size_t i, double& h1, double& h2, double& s01,
                      double& s12) {
        h1 = grid.z(i) - grid.z(i - 1);
        h2 = grid.z(i + 1) - grid.z(i);
        s01 = (v[i] - v[i - 1]) / h1;
        s12 = (v[i + 1] - v[i]) / h2;
    };
    double h1, h2, s01, s12;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        slopes(j, h1, h2, s01, s12);
        out[j] = (h2 * s01 + h1 * s12) / (h1 + h2);
    }
    slopes(1, h1, h2, s01, s12);
    out[0] = (s01 * (2.0 * h1 + h2) - s12 * h1) / (h1 + h2);
    slopes(n - 2, h1, h2, s01, s12);
    out[n - 1] = (s12 * (2.0 * h2 + h1) - s01 * h2) / (h1 + h2);
    return out;
}

}  // namespace

GridFunction delta_rho(const GridFunction& g) {
    if (g.size() < 3)
        throw std::domain_error("delta_rho: need >= 3 nodes");
    const ScaledGrid& grid = *g.grid();

    if (g.is_plain())
        return GridFunction(g.grid(), three_point_dz(grid, g.values()));

    // Weighted input z^w U: differentiate the continuous representative,
    //   d/dz (z^-w U) = z^-(w+1) (-w U + z U'),
    // so the derivative is returned weighted with exponent w+1 and its
    // limit slot is -w U(0). U' comes from the same stencils; the singular
    // power is handled exactly instead of being differenced.
    const double w = g.weight();
    std::vector<double> du = three_point_dz(grid, g.values());
    std::vector<double> stored(g.size());
    stored[0] = -w * g[0];
    for (std::size_t j = 1; j < g.size(); ++j)
        stored[j] = -w * g[j] + grid.z(j) * du[j];
    return GridFunction(g.grid(), std::move(stored),
                        Representation::weighted, w + 1.0);
}

GridFunction katugampola_integral_weighted(const GridFunction& g,
                                           double alpha,
                                           const QuadratureScheme& scheme) {
    const double sigma_g = g.is_plain() ? 0.0 : snap_tiny(-g.weight());
    const double lead_coeff = g[0] * power_integral_coeff(sigma_g, alpha);
    const double p1 = snap_tiny(sigma_g + alpha);
    GridFunction integral = katugampola_integral(g, alpha, scheme);
    return to_weighted(integral, p1 == 0.0 ? 0.0 : -p1, lead_coeff);
}

namespace {

GridFunction derivative_stage(const GridFunction& g, double inner_order,
                              const QuadratureScheme& scheme) {
    if (inner_order > 0.0)
        return delta_rho(katugampola_integral_weighted(g, inner_order, scheme));
    return delta_rho(g);
}

}  // namespace

GridFunction katugampola_derivative(const GridFunction& g, double alpha,
                                    const QuadratureScheme& scheme) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error(
            "katugampola_derivative: requires 0 < alpha < 1");
    GridFunction stage = derivative_stage(g, 1.0 - alpha, scheme);
    return stage.is_plain() ? stage : from_weighted(stage);
}

GridFunction generalized_derivative(const GridFunction& g,
                                    const FracParams& params,
                                    const QuadratureScheme& scheme) {
    const double inner_order =
        snap_tiny((1.0 - params.beta) * (1.0 - params.alpha));
    const double outer_order = snap_tiny(params.beta * (1.0 - params.alpha));
    GridFunction stage = derivative_stage(g, inner_order, scheme);
    if (outer_order > 0.0)
        return katugampola_integral(stage, outer_order, scheme);
    return stage.is_plain() ? stage : from_weighted(stage);
}

double weighted_sup_norm(const GridFunction& g, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::domain_error("weighted_sup_norm: requires 0 <= gamma < 1");
    const ScaledGrid& grid = *g.grid();
    double sup = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        double v;
        if (grid.z(j) > 0.0) {
            v = std::pow(grid.z(j), gamma - g.weight()) * g[j];
        } else if (gamma == g.weight()) {
            v = g[j];  // exact limit slot
        } else if (gamma > g.weight()) {
            v = 0.0;
        } else {
            v = g[j] == 0.0 ? 0.0
                            : std::numeric_limits<double>::infinity();
        }
        sup = std::max(sup, std::abs(v));
    }
    return sup;
}

double xcp_norm(const GridFunction& g, double c, double p) {
    const bool is_inf = std::isinf(p);
    if (!is_inf && !(p >= 1.0))
        throw std::domain_error("xcp_norm: requires p >= 1 or p = infinity");
    const ScaledGrid& grid = *g.grid();
    if (is_inf) {
        double sup = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            sup = std::max(sup,
                           std::abs(std::pow(grid.t(j), c) * g.plain_value(j)));
        return sup;
    }
    // trapezoid in t of |t^c g|^p / t
    auto integrand = [&](std::size_t j) {
        const double t = grid.t(j);
        return std::pow(std::abs(std::pow(t, c) * g.plain_value(j)), p) / t;
    };
    double acc = 0.0;
    double prev = integrand(0);
    for (std::size_t j = 1; j < g.size(); ++j) {
        const double cur = integrand(j);
        acc += 0.5 * (prev + cur) * (grid.t(j) - grid.t(j - 1));
        prev = cur;
    }
    return std::pow(acc, 1.0 / p);
}

double cdelta_norm(const GridFunction& g, int n, double gamma) {
    if (n != 0 && n != 1)
        throw std::domain_error("cdelta_norm: only n in {0,1} supported");
    if (n == 0) return weighted_sup_norm(g, gamma);
    double sup = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        sup = std::max(sup, std::abs(g.plain_value(j)));
    return sup + weighted_sup_norm(delta_rho(g), gamma);
}

}  // namespace frac
