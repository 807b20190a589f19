#ifndef FRAC_CONFIG_HPP
#define FRAC_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

#include "frac/core.hpp"
#include "frac/expression.hpp"
#include "frac/stability.hpp"

// Line-oriented run configuration: one `section.key = value` per line,
// '#' comments, order-insensitive, unknown keys rejected. Hypothesis-level
// constraints (orders, hypothesis inequalities) are validated at parse
// time with the constraint named in the message.

namespace frac::cli {

struct RunConfig {
    // problem
    double alpha = 0.5;
    double beta = 0.5;
    double rho = 1.0;
    double a = 1.0;
    double b = 1.0;
    std::string rhs = "0";

    // grid
    std::size_t nodes = 256;
    double T = 2.0;
    std::optional<double> grading;  // default: clamp(2/gamma, 1, 6)

    // hypotheses (needed by the stability command)
    std::optional<double> mu;
    std::optional<double> sigma;
    std::optional<int> m;
    std::optional<double> q;
    std::string phi = "0";
    std::optional<double> t_trunc;
    std::optional<double> decay_amplitude;
    std::optional<double> decay_rate;

    // tolerances
    double tol = 1e-10;
    int max_iter = 50;

    // lemma31
    std::optional<double> zeta;
    std::optional<double> vartheta;
    std::optional<double> varpi;
    int sweep_samples = 0;

    // pachpatte
    std::optional<double> u0;
    std::optional<double> p_t0;
    std::optional<double> p_t1;
    std::string w_kind = "linear";  // linear | power
    double w_exponent = 2.0;
    std::string a_expr = "1";
    std::string b_expr = "0";

    // norms
    std::optional<double> norm_c;
    std::optional<double> norm_p;

    // output
    std::string csv_path;
    std::string report_path;

    FracParams params() const { return FracParams(alpha, beta, rho); }
    double grading_or_default() const;

    /// Every key in canonical order, ready to be reparsed.
    std::string serialize() const;
};

struct ConfigError : std::runtime_error {
    int line;  // 0 when the error is not tied to a line
    ConfigError(const std::string& what, int line_)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) +
                                             ": " + what
                                       : what),
          line(line_) {}
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Hypotheses assembled from the config (requires mu, sigma, m, q, phi).
Hypotheses hypotheses_from(const RunConfig& cfg);

}  // namespace frac::cli

#endif
