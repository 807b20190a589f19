#include "frac/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

namespace frac::cli {

double RunConfig::grading_or_default() const {
    if (grading) return *grading;
    return default_grading(params().gamma);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double r = std::stod(v, &used);
        if (used != v.size())
            throw ConfigError("malformed number '" + v + "'", line);
        return r;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("malformed number '" + v + "'", line);
    }
}

int parse_int(const std::string& v, int line) {
    const double r = parse_real(v, line);
    if (r != std::floor(r))
        throw ConfigError("expected an integer, got '" + v + "'", line);
    return static_cast<int>(r);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// The catalog of named right-hand sides; anything else is parsed as an
// expression.
std::string resolve_catalog(const std::string& rhs) {
    if (rhs == "zero") return "0";
    return rhs;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'section.key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("empty value", lineno);

        if (key == "problem.alpha") cfg.alpha = parse_real(value, lineno);
        else if (key == "problem.beta") cfg.beta = parse_real(value, lineno);
        else if (key == "problem.rho") cfg.rho = parse_real(value, lineno);
        else if (key == "problem.a") cfg.a = parse_real(value, lineno);
        else if (key == "problem.b") cfg.b = parse_real(value, lineno);
        else if (key == "problem.rhs") cfg.rhs = resolve_catalog(value);
        else if (key == "grid.N") {
            const int n = parse_int(value, lineno);
            if (n < 2) throw ConfigError("grid.N must be >= 2", lineno);
            cfg.nodes = static_cast<std::size_t>(n);
        }
        else if (key == "grid.T") cfg.T = parse_real(value, lineno);
        else if (key == "grid.r") cfg.grading = parse_real(value, lineno);
        else if (key == "hypotheses.mu") cfg.mu = parse_real(value, lineno);
        else if (key == "hypotheses.sigma")
            cfg.sigma = parse_real(value, lineno);
        else if (key == "hypotheses.m") cfg.m = parse_int(value, lineno);
        else if (key == "hypotheses.q") cfg.q = parse_real(value, lineno);
        else if (key == "hypotheses.phi") cfg.phi = value;
        else if (key == "hypotheses.T_trunc")
            cfg.t_trunc = parse_real(value, lineno);
        else if (key == "hypotheses.decay_amplitude")
            cfg.decay_amplitude = parse_real(value, lineno);
        else if (key == "hypotheses.decay_rate")
            cfg.decay_rate = parse_real(value, lineno);
        else if (key == "tolerances.tol") cfg.tol = parse_real(value, lineno);
        else if (key == "tolerances.max_iter")
            cfg.max_iter = parse_int(value, lineno);
        else if (key == "lemma31.zeta") cfg.zeta = parse_real(value, lineno);
        else if (key == "lemma31.vartheta")
            cfg.vartheta = parse_real(value, lineno);
        else if (key == "lemma31.varpi") cfg.varpi = parse_real(value, lineno);
        else if (key == "lemma31.samples")
            cfg.sweep_samples = parse_int(value, lineno);
        else if (key == "pachpatte.u0") cfg.u0 = parse_real(value, lineno);
        else if (key == "pachpatte.t0") cfg.p_t0 = parse_real(value, lineno);
        else if (key == "pachpatte.t1") cfg.p_t1 = parse_real(value, lineno);
        else if (key == "pachpatte.w") cfg.w_kind = value;
        else if (key == "pachpatte.m") cfg.w_exponent = parse_real(value, lineno);
        else if (key == "pachpatte.a_expr") cfg.a_expr = value;
        else if (key == "pachpatte.b_expr") cfg.b_expr = value;
        else if (key == "norms.c") cfg.norm_c = parse_real(value, lineno);
        else if (key == "norms.p") cfg.norm_p = parse_real(value, lineno);
        else if (key == "output.csv") cfg.csv_path = value;
        else if (key == "output.report") cfg.report_path = value;
        else throw ConfigError("unknown key '" + key + "'", lineno);
    }

    // Field-level validation of the hypothesis constraints that do not depend
    // on the chosen command.
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw ConfigError("problem.alpha must lie in (0,1), got " +
                              fmt(cfg.alpha), 0);
    if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
        throw ConfigError("problem.beta must lie in [0,1], got " +
                              fmt(cfg.beta), 0);
    if (!(cfg.rho > 0.0))
        throw ConfigError("problem.rho must be positive", 0);
    if (!(cfg.a > 0.0)) throw ConfigError("problem.a must be positive", 0);
    if (cfg.b == 0.0)
        throw ConfigError("problem.b must be nonzero (b in R\\{0})", 0);
    if (!(cfg.T > cfg.a))
        throw ConfigError("grid.T must exceed problem.a", 0);
    if (cfg.grading && !(*cfg.grading >= 1.0))
        throw ConfigError("grid.r must be >= 1", 0);
    if (!(cfg.tol > 0.0))
        throw ConfigError("tolerances.tol must be positive", 0);
    if (cfg.max_iter < 1)
        throw ConfigError("tolerances.max_iter must be >= 1", 0);
    if (cfg.m && *cfg.m < 2)
        throw ConfigError("H1 requires m in N\\{1}, got hypotheses.m = " +
                              std::to_string(*cfg.m), 0);
    if (cfg.q && !(*cfg.q > 1.0 / cfg.alpha))
        throw ConfigError("H2 requires q > 1/alpha = " + fmt(1.0 / cfg.alpha) +
                              ", got hypotheses.q = " + fmt(*cfg.q), 0);
    if (cfg.mu && cfg.m) {
        const double gamma = cfg.alpha + cfg.beta * (1.0 - cfg.alpha);
        const double slack = (*cfg.m - 1) * (1.0 - gamma);
        if (!(*cfg.mu > slack))
            throw ConfigError("H2 requires mu > (m-1)(1-gamma) = " +
                                  fmt(slack) + ", got hypotheses.mu = " +
                                  fmt(*cfg.mu), 0);
    }
    if (cfg.sigma && !(*cfg.sigma > 0.0))
        throw ConfigError("H1 requires sigma > 0", 0);

    // Expressions must at least parse.
    try {
        RhsExpression::parse(cfg.rhs);
    } catch (const ParseError& e) {
        throw ConfigError("problem.rhs: " + std::string(e.what()), 0);
    }
    try {
        RhsExpression::parse(cfg.phi);
    } catch (const ParseError& e) {
        throw ConfigError("hypotheses.phi: " + std::string(e.what()), 0);
    }
    if (RhsExpression::parse(cfg.phi).uses_variable('x'))
        throw ConfigError("hypotheses.phi may depend on t and z only", 0);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out << "problem.alpha = " << fmt(alpha) << '\n'
        << "problem.beta = " << fmt(beta) << '\n'
        << "problem.rho = " << fmt(rho) << '\n'
        << "problem.a = " << fmt(a) << '\n'
        << "problem.b = " << fmt(b) << '\n'
        << "problem.rhs = " << rhs << '\n'
        << "grid.N = " << nodes << '\n'
        << "grid.T = " << fmt(T) << '\n';
    if (grading) out << "grid.r = " << fmt(*grading) << '\n';
    if (mu) out << "hypotheses.mu = " << fmt(*mu) << '\n';
    if (sigma) out << "hypotheses.sigma = " << fmt(*sigma) << '\n';
    if (m) out << "hypotheses.m = " << *m << '\n';
    if (q) out << "hypotheses.q = " << fmt(*q) << '\n';
    out << "hypotheses.phi = " << phi << '\n';
    if (t_trunc) out << "hypotheses.T_trunc = " << fmt(*t_trunc) << '\n';
    if (decay_amplitude)
        out << "hypotheses.decay_amplitude = " << fmt(*decay_amplitude)
            << '\n';
    if (decay_rate) out << "hypotheses.decay_rate = " << fmt(*decay_rate)
                        << '\n';
    out << "tolerances.tol = " << fmt(tol) << '\n'
        << "tolerances.max_iter = " << max_iter << '\n';
    if (zeta) out << "lemma31.zeta = " << fmt(*zeta) << '\n';
    if (vartheta) out << "lemma31.vartheta = " << fmt(*vartheta) << '\n';
    if (varpi) out << "lemma31.varpi = " << fmt(*varpi) << '\n';
    if (sweep_samples > 0) out << "lemma31.samples = " << sweep_samples << '\n';
    if (u0) out << "pachpatte.u0 = " << fmt(*u0) << '\n';
    if (p_t0) out << "pachpatte.t0 = " << fmt(*p_t0) << '\n';
    if (p_t1) out << "pachpatte.t1 = " << fmt(*p_t1) << '\n';
    out << "pachpatte.w = " << w_kind << '\n'
        << "pachpatte.m = " << fmt(w_exponent) << '\n'
        << "pachpatte.a_expr = " << a_expr << '\n'
        << "pachpatte.b_expr = " << b_expr << '\n';
    if (norm_c) out << "norms.c = " << fmt(*norm_c) << '\n';
    if (norm_p) out << "norms.p = " << fmt(*norm_p) << '\n';
    if (!csv_path.empty()) out << "output.csv = " << csv_path << '\n';
    if (!report_path.empty()) out << "output.report = " << report_path << '\n';
    return out.str();
}

Hypotheses hypotheses_from(const RunConfig& cfg) {
    if (!cfg.mu || !cfg.sigma || !cfg.m || !cfg.q)
        throw ConfigError(
            "stability needs hypotheses.mu, hypotheses.sigma, hypotheses.m "
            "and hypotheses.q", 0);
    Hypotheses h;
    h.mu = *cfg.mu;
    h.sigma = *cfg.sigma;
    h.m = *cfg.m;
    h.q = *cfg.q;
    auto phi_expr = std::make_shared<RhsExpression>(
        RhsExpression::parse(cfg.phi));
    const double a = cfg.a, rho = cfg.rho;
    h.phi.value = [phi_expr, a, rho](double t) {
        EvalContext ctx;
        ctx.t = t;
        ctx.z = scaled_time(std::max(t, a), a, rho);
        return phi_expr->eval(ctx);
    };
    if (cfg.decay_amplitude && cfg.decay_rate) {
        h.phi.has_envelope = true;
        h.phi.envelope_amplitude = *cfg.decay_amplitude;
        h.phi.envelope_rate = *cfg.decay_rate;
    }
    return h;
}

}  // namespace frac::cli
