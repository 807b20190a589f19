#ifndef FRAC_ORACLES_HPP
#define FRAC_ORACLES_HPP

#include <functional>
#include <vector>

// Reference computations used by tests and cross-checks only. Nothing in
// here touches the main modules: quadrature, the gamma function and the
// special-function series are implemented independently so differential
// tests actually compare two routes.

namespace frac::oracle {

struct OracleConfig {
    double target_rel_error = 1e-10;
    int max_depth = 48;
    double series_epsilon = 1e-16;
};

/// Algebraic endpoint behavior of an integrand: f ~ (x-lo)^lo_exponent
/// near lo and f ~ (hi-x)^hi_exponent near hi. Exponents > -1; zero means
/// no singularity.
struct EndpointExponents {
    double lo = 0.0;
    double hi = 0.0;
};

/// Integrand receiving, besides x, the exactly computed distances to both
/// interval endpoints. Near a singular endpoint the distance carries full
/// precision where hi - x would have cancelled; integrands should build
/// their singular factors from the distances.
using Integrand = std::function<double(double x, double d_lo, double d_hi)>;

/// Adaptive quadrature of f on [lo, hi]. Declared endpoint singularities
/// are removed by power substitutions before the adaptive pass. Throws on
/// depth exhaustion with the best estimate in the message.
double adaptive_quadrature(const Integrand& f, double lo, double hi,
                           const OracleConfig& cfg = {},
                           const EndpointExponents& endpoints = {});

/// Convenience overload for integrands that do not need the distances.
double adaptive_quadrature(const std::function<double(double)>& f, double lo,
                           double hi, const OracleConfig& cfg = {},
                           const EndpointExponents& endpoints = {});

/// Gamma by an independent Lanczos evaluation (not the libm one).
double lanczos_gamma(double x);

/// Gamma(sigma+1)/Gamma(sigma+alpha+1).
double power_rule_coeff(double sigma, double alpha);

/// Two-parameter Mittag-Leffler sum_{k>=0} x^k / Gamma(alpha k + gamma),
/// series regime |x| <= 50.
double mittag_leffler(double alpha, double gamma, double x,
                      const OracleConfig& cfg = {});

/// Fixed-step classical RK4 trajectory of u' = rhs(t, u) with a built-in
/// step-halving consistency estimate.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> u;
    double richardson_error = 0.0;  // max |u_h - u_{h/2}| along the path

    /// Linear interpolation between stored steps.
    double operator()(double at) const;
};

Trajectory reference_ode(double u0,
                         const std::function<double(double, double)>& rhs,
                         double t0, double t1, int steps,
                         const OracleConfig& cfg = {});

}  // namespace frac::oracle

#endif
