#ifndef FRAC_STABILITY_HPP
#define FRAC_STABILITY_HPP

#include <functional>
#include <string>
#include <vector>

#include "frac/core.hpp"
#include "frac/solver.hpp"

// Quantitative stability machinery for the Cauchy-type problem: the
// kernel-integral bound I(t) <= C * varpi^(-zeta), the growth hypotheses
// on the right-hand side with their derived constants, the nonlinear
// Gronwall (Pachpatte) engine, and the final certificate
// |x(t)| <= C z^(gamma-1) for t >= t0 > a. All operations are pure;
// sweeps can fan out across threads on distinct inputs.

namespace frac {

struct Lemma31Params {
    double zeta;
    double vartheta;
    double varpi;

    Lemma31Params(double zeta_, double vartheta_, double varpi_);
};

/// I(t) = z^zeta int_0^1 (1-xi)^(vartheta-1) xi^(zeta-1) e^(-varpi xi z) dxi
/// to ~1e-8 relative accuracy (endpoint singularities are substituted away,
/// the exponential scale is normalized out for large varpi*z).
double evaluate_I(const Lemma31Params& p, double rho, double a, double t);

/// C = max{1, 2^(1-vartheta)} * Gamma(zeta) * (1 + zeta(zeta+1)/vartheta).
double lemma31_constant(double zeta, double vartheta);

struct Lemma31Report {
    double constant = 0.0;      // C(zeta, vartheta)
    double max_ratio = 0.0;     // max of I(t) * varpi^zeta / C
    std::vector<double> violating_t;
    bool holds = false;
};

/// Checks I(t) <= C * varpi^(-zeta) at every sample.
Lemma31Report check_lemma31(const Lemma31Params& p, double rho, double a,
                            const std::vector<double>& t_samples);

/// phi of the growth hypothesis together with an optional exponential
/// decay envelope phi(t) <= amplitude * e^(-rate * t) valid from t_trunc
/// on; without one, tails of the improper norms cannot be bounded.
struct PhiFunction {
    std::function<double(double)> value;
    bool has_envelope = false;
    double envelope_amplitude = 0.0;
    double envelope_rate = 0.0;
};

/// (H1)/(H2) data: |f(t,x)| <= z^mu e^(-sigma rho z) phi(t) |x|^m with
/// m >= 2, and integrability of phi with exponent q > 1/alpha.
struct Hypotheses {
    double mu;
    double sigma;
    int m;
    PhiFunction phi;
    double q;
};

struct DerivedConstants {
    double p;        // conjugate exponent, pq = p + q
    double lambda1;  // 1 + p[mu - (1-gamma)m]
    double lambda2;  // 1 + p(alpha - 1)
    double K;        // smallness threshold of (H2)
    double C1;       // Holder/kernel constant of the proof chain
    double C1hat;    // C1 / Gamma(alpha)
};

/// Validates every hypothesis inequality (throwing with the violated
/// constraint named) and evaluates the constants exactly as printed.
DerivedConstants derive_constants(const Hypotheses& h, const FracParams& params,
                                  double a, double b);

struct H1Report {
    double max_ratio = 0.0;  // |f| / bound, over all samples
    std::vector<std::size_t> violations;
    bool satisfied = false;
};

/// Checks |f(t,x)| <= z^mu e^(-sigma rho z) phi(t) |x|^m on given samples.
H1Report check_h1(const std::function<double(double, double)>& rhs,
                  const Hypotheses& h, const FracParams& params, double a,
                  const std::vector<std::pair<double, double>>& samples);

enum class Verdict { pass, fail, inconclusive };

struct H2Report {
    Verdict verdict = Verdict::inconclusive;
    double lhs_lower = 0.0;  // (||phi||_q)^(m-1) ||z^(-m beta(1-alpha)) phi||_q
    double lhs_upper = 0.0;  // including truncation-tail bounds
    double K = 0.0;
    double phi_norm_lower = 0.0, phi_norm_upper = 0.0;
    double weighted_norm_lower = 0.0, weighted_norm_upper = 0.0;
    bool below_K = false;       // lhs_upper < K
    bool below_half_K = false;  // lhs_upper < K/2 (the proof's variant)
    std::string reason;
};

/// Evaluates the (H2) smallness condition on [a, T_trunc] with an
/// explicit tail bound from the decay envelope. Verdicts are three-valued
/// so a loose tail never fabricates a pass. b enters through K.
H2Report check_h2(const Hypotheses& h, const FracParams& params, double a,
                  double b, double t_trunc);

/// Everything the Gronwall chain produces, sampled on an internal graded
/// time mesh. l and k are the cumulative forcing integrals; w/y are the
/// chained bounds, finite exactly while l^(m-1) k < 1/(m-1).
struct BoundReport {
    int m = 2;
    double q = 0.0;
    double a = 0.0;
    double T = 0.0;
    double t0 = 0.0;  // certificate start, first sample with z >= 0.01 Z
    std::vector<double> t_s, z_s;  // sample times and scaled times
    std::vector<double> l_s, k_s, condition_s;
    std::vector<double> w_s;   // [l^(1-m) - (m-1)k]^(-1/(m-1)), inf outside
    std::vector<double> zb_s;  // |b| z^(beta(1-alpha)) + w^(1/q)
    std::vector<double> y_s;   // |b| + w^(1/q) z^(-beta(1-alpha))
    double validity_horizon = 0.0;  // largest sampled t with the condition
    bool validity_empty = true;
    double final_C = 0.0;  // sup of y over [t0, min(horizon, T)]
    bool certified = false;  // condition holds through T

    double l_at(double t) const;
    double k_at(double t) const;
    double w_at(double t) const;
    double z_bound_at(double t) const;
    double y_at(double t) const;
};

/// Runs Eqs-after-the-Pachpatte-step of the proof: cumulative l and k,
/// the validity condition, the w bound, and the final constant.
BoundReport gronwall_chain(const Hypotheses& h, const DerivedConstants& c,
                           const FracParams& params, double a, double b,
                           double T);

/// Nondecreasing nonlinearity w for the Pachpatte bound. Closed forms are
/// used for w(x) = x and w(x) = x^m; anything else goes through numeric
/// quadrature for G and bisection for its inverse.
struct Nonlinearity {
    enum class Kind { linear, power, general };
    Kind kind = Kind::linear;
    double exponent = 1.0;
    std::function<double(double)> fn;

    static Nonlinearity linear() { return {}; }
    static Nonlinearity power(double m);
    static Nonlinearity general(std::function<double(double)> f);
};

/// u(t) <= G^-1[G(u0 + int_t0^t b) + int_t0^t a] for u' <= a(t)w(u) + b(t);
/// returns +infinity when the right-hand side leaves the range of G.
double pachpatte_bound(double u0, const std::function<double(double)>& a_fn,
                       const std::function<double(double)>& b_fn,
                       const Nonlinearity& w, double t0, double t);

struct PowerSumReport {
    double lhs = 0.0;  // (sum a_i)^p
    double rhs = 0.0;  // k^(p-1) sum a_i^p
    bool holds = false;
};

/// (sum a_i)^p <= k^(p-1) sum a_i^p for nonnegative a_i, p >= 1.
PowerSumReport power_sum_check(const std::vector<double>& values, double p);

struct StabilityCertificate {
    bool attempted = false;  // preconditions held, assertion was made
    bool passed = false;
    double t0 = 0.0;
    double final_C = 0.0;
    std::vector<std::size_t> violating_nodes;
    std::vector<double> margin;  // final_C - z^(1-gamma)|x|, NaN below t0
    std::string note;
};

/// Asserts z^(1-gamma) |x(t)| <= final_C at all solution nodes with
/// t >= t0. Refuses (attempted = false) when the solution did not
/// converge or the validity region does not cover [t0, T].
StabilityCertificate certify_stability(const CauchyProblem& problem,
                                       const Hypotheses& h, const Solution& sol,
                                       const BoundReport& report,
                                       double t0 = -1.0);

}  // namespace frac

#endif
