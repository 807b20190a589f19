#ifndef FRAC_OPERATORS_HPP
#define FRAC_OPERATORS_HPP

#include "frac/core.hpp"

// Fractional operators on ScaledGrid functions. Under z = (t^rho-a^rho)/rho
// the generalized integral of order alpha is the classical weakly singular
// convolution (1/Gamma(alpha)) int_0^z (z-s)^(alpha-1) g(s) ds, and the
// operator delta_rho = t^(rho-1) d/dt is exactly d/dz, so all schemes below
// work on the z mesh. Pure functions over immutable inputs; thread-safe.

namespace frac {

struct QuadratureScheme {
    enum class Kind { product_trapezoid, product_rectangle };
    Kind kind = Kind::product_trapezoid;
    // Advisory accuracy hint for callers that iterate on top of the
    // (non-adaptive) product rule.
    double rel_tol = 1e-10;
};

/// Fractional integral of order alpha > 0 by product integration: the
/// integrand is piecewise linear between nodes (piecewise constant for the
/// rectangle scheme) and the kernel is integrated exactly over each cell.
///
/// Weighted input z^w * f with w != 0 is handled by subtracting the
/// leading singular part limit * z^(-w), whose integral is added back in
/// closed form. Requires -w > -1 whenever the limit slot is nonzero.
GridFunction katugampola_integral(const GridFunction& g, double alpha,
                                  const QuadratureScheme& scheme = {});

/// Same integral, returned as the weighted view z^-(sigma+alpha) I g with
/// the limit slot filled by the power rule (sigma is the input's leading
/// exponent, 0 for plain input). This is the representation to keep when
/// the result feeds further operators: it preserves the endpoint exponent
/// that product integration and finite differences otherwise lose.
GridFunction katugampola_integral_weighted(const GridFunction& g,
                                           double alpha,
                                           const QuadratureScheme& scheme = {});

/// delta_rho g = dg/dz by three-point finite differences on the nonuniform
/// z mesh (centered inside, one-sided at the ends); exact for quadratics.
GridFunction delta_rho(const GridFunction& g);

/// D^alpha g = delta_rho(I^(1-alpha) g) for 0 < alpha < 1.
GridFunction katugampola_derivative(const GridFunction& g, double alpha,
                                    const QuadratureScheme& scheme = {});

/// D^{alpha,beta} g = I^{beta(1-alpha)} delta_rho I^{(1-beta)(1-alpha)} g.
/// Coincides with katugampola_derivative for beta = 0.
GridFunction generalized_derivative(const GridFunction& g,
                                    const FracParams& params,
                                    const QuadratureScheme& scheme = {});

/// max_j |z_j^gamma * g(t_j)|, using the weighted limit slot at z = 0.
double weighted_sup_norm(const GridFunction& g, double gamma);

/// X^p_c norm (int_a^T |t^c g|^p dt/t)^(1/p) by the trapezoid rule on the
/// t mesh; pass p = infinity for the node max of |t^c g|.
double xcp_norm(const GridFunction& g, double c, double p);

/// C^n_{delta_rho,gamma} norm for n in {0, 1}:
/// sum_{k<n} sup|delta_rho^k g| + weighted_sup_norm(delta_rho^n g, gamma).
double cdelta_norm(const GridFunction& g, int n, double gamma);

/// Gamma(x) for x > 0 (wrapper with a domain check).
double gamma_fn(double x);

/// Gamma(sigma+1)/Gamma(sigma+alpha+1), the coefficient in
/// I^alpha z^sigma = coeff * z^(sigma+alpha).
double power_integral_coeff(double sigma, double alpha);

}  // namespace frac

#endif
