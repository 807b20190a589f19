// fracstab: batch front end for the fractional-calculus library.
//
// Subcommands: integrate | derive | solve | lemma31 | stability |
// pachpatte | norms. Configuration comes from a line-oriented
// `section.key = value` file; a few flags override it. Exit codes:
// 0 success/certified, 2 certificate failed, 3 inconclusive, 1 usage or
// runtime errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "frac/config.hpp"
#include "frac/operators.hpp"
#include "frac/report.hpp"
#include "frac/solver.hpp"
#include "frac/stability.hpp"

using namespace frac;
using cli::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitInconclusive = 3;

struct Options {
    RunConfig cfg;
    std::string out_path;
    std::string report_path;
    bool quiet = false;
    unsigned seed = 12345;
};

void write_report(const Options& opt, const std::string& text) {
    if (!opt.report_path.empty()) {
        std::ofstream out(opt.report_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open report path '" +
                                     opt.report_path + "'");
        out << text;
    } else if (!opt.quiet) {
        std::cout << text;
    }
}

void write_csv_if_requested(const Options& opt, const cli::CsvRows& rows) {
    if (!opt.out_path.empty()) cli::emit_csv(rows, opt.out_path);
}

GridPtr make_grid(const RunConfig& cfg) {
    return ScaledGrid::make_graded(cfg.a, cfg.T, cfg.nodes, cfg.rho,
                                   cfg.grading_or_default());
}

double stored_sup(const GridFunction& g) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s = std::max(s, std::abs(g[j]));
    return s;
}

std::function<double(double, double)> rhs_function(const RunConfig& cfg) {
    auto expr = std::make_shared<cli::RhsExpression>(
        cli::RhsExpression::parse(cfg.rhs));
    const double a = cfg.a, rho = cfg.rho;
    return [expr, a, rho](double t, double x) {
        cli::EvalContext ctx;
        ctx.t = t;
        ctx.x = x;
        ctx.z = scaled_time(std::max(t, a), a, rho);
        return expr->eval(ctx);
    };
}

GridFunction sample_operand(const RunConfig& cfg, const GridPtr& grid) {
    auto expr = cli::RhsExpression::parse(cfg.rhs);
    if (expr.uses_variable('x'))
        throw std::runtime_error(
            "this command takes a function of t and z; 'x' is only "
            "meaningful for solve/stability");
    return GridFunction::sample(grid, [&](double t, double z) {
        cli::EvalContext ctx;
        ctx.t = t;
        ctx.z = z;
        return expr.eval(ctx);
    });
}

int run_integrate(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    const FracParams params = cfg.params();
    GridPtr grid = make_grid(cfg);
    GridFunction g = sample_operand(cfg, grid);
    GridFunction result = katugampola_integral(g, params.alpha);
    write_csv_if_requested(opt, cli::operator_rows(params, g, result));
    std::ostringstream rep;
    rep << "integrate: order alpha = " << cli::fmt9(params.alpha)
        << ", gamma = " << cli::fmt9(params.gamma) << "\n"
        << "sup |I g| = "
        << cli::fmt9(weighted_sup_norm(result, 0.0)) << "\n";
    write_report(opt, rep.str());
    return kExitOk;
}

int run_derive(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    const FracParams params = cfg.params();
    GridPtr grid = make_grid(cfg);
    GridFunction g = sample_operand(cfg, grid);
    GridFunction result = generalized_derivative(g, params);
    write_csv_if_requested(opt, cli::operator_rows(params, g, result));
    std::ostringstream rep;
    rep << "derive: order alpha = " << cli::fmt9(params.alpha) << ", type beta = "
        << cli::fmt9(params.beta) << ", gamma = " << cli::fmt9(params.gamma)
        << "\n"
        << "weighted sup norm (exponent 1-gamma) = "
        << cli::fmt9(weighted_sup_norm(result, 1.0 - params.gamma)) << "\n";
    write_report(opt, rep.str());
    return kExitOk;
}

int run_norms(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    if (!cfg.norm_c || !cfg.norm_p)
        throw std::runtime_error("norms requires norms.c and norms.p");
    const FracParams params = cfg.params();
    GridPtr grid = make_grid(cfg);
    GridFunction g = sample_operand(cfg, grid);
    std::ostringstream rep;
    rep << "norms on [" << cli::fmt9(cfg.a) << ", " << cli::fmt9(cfg.T)
        << "], gamma = " << cli::fmt9(params.gamma) << "\n"
        << "weighted sup (C_{1-gamma,rho}) = "
        << cli::fmt9(weighted_sup_norm(g, 1.0 - params.gamma)) << "\n"
        << "delta-norm n=1 = "
        << cli::fmt9(cdelta_norm(g, 1, 1.0 - params.gamma)) << "\n"
        << "X^p_c norm (c = " << cli::fmt9(*cfg.norm_c)
        << ", p = " << cli::fmt9(*cfg.norm_p)
        << ") = " << cli::fmt9(xcp_norm(g, *cfg.norm_c, *cfg.norm_p)) << "\n";
    write_report(opt, rep.str());
    return kExitOk;
}

int run_solve(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    const FracParams params = cfg.params();
    CauchyProblem problem(params, cfg.a, cfg.b, rhs_function(cfg));
    GridPtr grid = make_grid(cfg);
    Solution sol = picard_solve(problem, grid, cfg.tol, cfg.max_iter);
    GridFunction res = residual(problem, sol);
    write_csv_if_requested(opt, cli::solution_rows(problem, sol));
    std::ostringstream rep;
    rep << "solve: alpha = " << cli::fmt9(params.alpha)
        << ", beta = " << cli::fmt9(params.beta)
        << ", rho = " << cli::fmt9(params.rho)
        << ", gamma = " << cli::fmt9(params.gamma) << "\n"
        << "weighted limit at z=0: " << cli::fmt9(sol.x[0]) << " (= b/Gamma(gamma))\n"
        << "iterations = " << sol.iterations
        << ", final update = " << cli::fmt9(sol.final_update_norm)
        << ", converged = " << (sol.converged ? "yes" : "no") << "\n"
        << "weighted residual sup = " << cli::fmt9(stored_sup(res)) << "\n";
    write_report(opt, rep.str());
    return sol.converged ? kExitOk : kExitInconclusive;
}

int run_lemma31(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    if (!cfg.zeta || !cfg.vartheta || !cfg.varpi)
        throw std::runtime_error(
            "lemma31 requires lemma31.zeta, lemma31.vartheta, lemma31.varpi");
    Lemma31Params p(*cfg.zeta, *cfg.vartheta, *cfg.varpi);
    const double big_z = scaled_time(cfg.T, cfg.a, cfg.rho);
    std::vector<double> t_samples;
    for (int i = 0; i < 64; ++i) {
        const double z = big_z * std::pow(10.0, -3.0 + 3.0 * i / 63.0);
        t_samples.push_back(inverse_scaled_time(z, cfg.a, cfg.rho));
    }
    Lemma31Report rep = check_lemma31(p, cfg.rho, cfg.a, t_samples);

    double sweep_max = 0.0;
    std::size_t sweep_viol = 0;
    if (cfg.sweep_samples > 0) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int i = 0; i < cfg.sweep_samples; ++i) {
            Lemma31Params draw(0.1 + 4.9 * u01(rng), 0.1 + 4.9 * u01(rng),
                               std::pow(10.0, -2.0 + 4.0 * u01(rng)));
            const double z = std::pow(10.0, -2.0 + u01(rng) * std::log10(50.0 / 0.01));
            const double t = inverse_scaled_time(z, cfg.a, cfg.rho);
            Lemma31Report one = check_lemma31(draw, cfg.rho, cfg.a, {t});
            sweep_max = std::max(sweep_max, one.max_ratio);
            if (!one.holds) ++sweep_viol;
        }
    }

    std::ostringstream out;
    out << "lemma31: zeta = " << cli::fmt9(p.zeta)
        << ", vartheta = " << cli::fmt9(p.vartheta)
        << ", varpi = " << cli::fmt9(p.varpi) << "\n"
        << "constant C = " << cli::fmt9(rep.constant) << "\n"
        << "max ratio I(t) varpi^zeta / C = " << cli::fmt9(rep.max_ratio)
        << " over " << t_samples.size() << " samples\n";
    if (cfg.sweep_samples > 0)
        out << "random sweep: " << cfg.sweep_samples
            << " draws, max ratio = " << cli::fmt9(sweep_max)
            << ", violations = " << sweep_viol << "\n";
    const bool ok = rep.holds && sweep_viol == 0;
    out << (ok ? "bound holds at every sample\n"
               : "BOUND VIOLATED: see samples above\n");
    write_report(opt, out.str());
    return ok ? kExitOk : kExitFailed;
}

int run_pachpatte(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    if (!cfg.u0 || !cfg.p_t0 || !cfg.p_t1)
        throw std::runtime_error(
            "pachpatte requires pachpatte.u0, pachpatte.t0, pachpatte.t1");
    auto a_expr = cli::RhsExpression::parse(cfg.a_expr);
    auto b_expr = cli::RhsExpression::parse(cfg.b_expr);
    auto eval_t = [](const cli::RhsExpression& e, double t) {
        cli::EvalContext ctx;
        ctx.t = t;
        return e.eval(ctx);
    };
    Nonlinearity w;
    if (cfg.w_kind == "linear")
        w = Nonlinearity::linear();
    else if (cfg.w_kind == "power")
        w = Nonlinearity::power(cfg.w_exponent);
    else
        throw std::runtime_error("pachpatte.w must be 'linear' or 'power'");

    std::ostringstream out;
    out << "pachpatte: u0 = " << cli::fmt9(*cfg.u0) << ", w = " << cfg.w_kind
        << (cfg.w_kind == "power"
                ? " (m = " + std::string(cli::fmt9(cfg.w_exponent)) + ")"
                : "")
        << "\n";
    const int samples = 16;
    for (int i = 1; i <= samples; ++i) {
        const double t =
            *cfg.p_t0 + (*cfg.p_t1 - *cfg.p_t0) * i / samples;
        const double bound = pachpatte_bound(
            *cfg.u0, [&](double s) { return eval_t(a_expr, s); },
            [&](double s) { return eval_t(b_expr, s); }, w, *cfg.p_t0, t);
        out << "t = " << cli::fmt9(t) << "  bound = "
            << (std::isinf(bound) ? "inf" : cli::fmt9(bound)) << "\n";
    }
    write_report(opt, out.str());
    return kExitOk;
}

int run_stability(const Options& opt) {
    const RunConfig& cfg = opt.cfg;
    const FracParams params = cfg.params();
    Hypotheses h = cli::hypotheses_from(cfg);
    CauchyProblem problem(params, cfg.a, cfg.b, rhs_function(cfg));

    std::ostringstream rep;
    rep << "stability: alpha = " << cli::fmt9(params.alpha)
        << ", beta = " << cli::fmt9(params.beta)
        << ", rho = " << cli::fmt9(params.rho)
        << ", gamma = " << cli::fmt9(params.gamma) << "\n";

    DerivedConstants dc = derive_constants(h, params, cfg.a, cfg.b);
    rep << "p = " << cli::fmt9(dc.p) << ", lambda1 = " << cli::fmt9(dc.lambda1)
        << ", lambda2 = " << cli::fmt9(dc.lambda2) << "\n"
        << "K = " << cli::fmt9(dc.K) << ", K/2 = " << cli::fmt9(0.5 * dc.K)
        << ", C1 = " << cli::fmt9(dc.C1)
        << ", C1hat = " << cli::fmt9(dc.C1hat) << "\n";

    // H2 is a property of phi alone; settle it before any solving so an
    // oversized forcing never reaches the nonlinear iteration.
    const double t_trunc =
        cfg.t_trunc ? *cfg.t_trunc : std::max(4.0 * cfg.T, cfg.a + 10.0);
    H2Report h2 = check_h2(h, params, cfg.a, cfg.b, t_trunc);
    rep << "H2: lhs in [" << cli::fmt9(h2.lhs_lower) << ", "
        << cli::fmt9(h2.lhs_upper) << "] vs K = " << cli::fmt9(h2.K)
        << "; verdict = "
        << (h2.verdict == Verdict::pass
                ? "pass"
                : h2.verdict == Verdict::fail ? "fail" : "inconclusive")
        << " (" << h2.reason << ")\n"
        << "H2 against K/2 (proof variant): "
        << (h2.below_half_K ? "below" : "not below") << "\n";
    if (h2.verdict != Verdict::pass) {
        rep << "verdict: no certificate ("
            << (h2.verdict == Verdict::fail ? "H2 smallness failed"
                                            : "H2 inconclusive")
            << ")\n";
        write_report(opt, rep.str());
        return kExitInconclusive;
    }

    GridPtr grid = make_grid(cfg);
    Solution sol = picard_solve(problem, grid, cfg.tol, cfg.max_iter);
    rep << "picard: iterations = " << sol.iterations
        << ", final update = " << cli::fmt9(sol.final_update_norm)
        << ", converged = " << (sol.converged ? "yes" : "no") << "\n";

    std::vector<std::pair<double, double>> samples;
    for (std::size_t j = 1; j < sol.x.size(); ++j) {
        const double z = grid->z(j);
        samples.emplace_back(grid->t(j),
                             std::pow(z, params.gamma - 1.0) * sol.x[j]);
    }
    H1Report h1 = check_h1(problem.rhs, h, params, cfg.a, samples);
    rep << "H1: max ratio = " << cli::fmt9(h1.max_ratio) << ", "
        << (h1.satisfied ? "satisfied" : "VIOLATED at " +
                               std::to_string(h1.violations.size()) +
                               " sample(s)")
        << "\n";
    if (!h1.satisfied) {
        rep << "verdict: certificate failed (H1 violated)\n";
        write_report(opt, rep.str());
        write_csv_if_requested(opt, cli::solution_rows(problem, sol));
        return kExitFailed;
    }
    if (!sol.converged) {
        rep << "verdict: no certificate (solver did not converge)\n";
        write_report(opt, rep.str());
        return kExitInconclusive;
    }

    BoundReport chain = gronwall_chain(h, dc, params, cfg.a, cfg.b, cfg.T);
    rep << "chain: validity horizon = " << cli::fmt9(chain.validity_horizon)
        << (chain.validity_empty ? " (EMPTY validity region)" : "")
        << ", t0 = " << cli::fmt9(chain.t0)
        << ", final_C = " << cli::fmt9(chain.final_C) << "\n";
    StabilityCertificate cert =
        certify_stability(problem, h, sol, chain);
    if (!cert.attempted || !cert.passed) {
        rep << "verdict: certificate failed (" << cert.note << ")\n";
        write_report(opt, rep.str());
        write_csv_if_requested(opt, cli::solution_rows(problem, sol));
        return kExitFailed;
    }
    double min_margin = std::numeric_limits<double>::infinity();
    for (double m : cert.margin)
        if (!std::isnan(m)) min_margin = std::min(min_margin, m);
    rep << "certificate: |x(t)| <= " << cli::fmt9(cert.final_C)
        << " * z^(gamma-1) for t >= " << cli::fmt9(cert.t0)
        << "; min margin = " << cli::fmt9(min_margin) << "\n"
        << "note: " << cert.note << "\n"
        << "verdict: certified\n";
    write_report(opt, rep.str());
    write_csv_if_requested(opt, cli::solution_rows(problem, sol, &cert));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fracstab: generalized fractional calculus, Cauchy-type solver and "
        "stability certification"};
    std::string command;
    std::string config_path;
    Options opt;
    std::optional<std::size_t> nodes_override;
    std::optional<double> grading_override;
    std::optional<double> tol_override;

    app.add_option("command", command,
                   "integrate|derive|solve|lemma31|stability|pachpatte|norms")
        ->required();
    app.add_option("--config", config_path, "configuration file");
    app.add_option("--out", opt.out_path, "CSV output path");
    app.add_option("--report", opt.report_path, "report output path");
    app.add_option("--nodes", nodes_override, "grid nodes override");
    app.add_option("--grading", grading_override, "grid grading override");
    app.add_option("--tol", tol_override, "picard tolerance override");
    app.add_option("--seed", opt.seed, "seed for random sweeps");
    app.add_flag("--quiet", opt.quiet, "suppress stdout report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        opt.cfg = config_path.empty() ? RunConfig{}
                                      : cli::load_config(config_path);
        if (nodes_override) opt.cfg.nodes = *nodes_override;
        if (grading_override) opt.cfg.grading = *grading_override;
        if (tol_override) opt.cfg.tol = *tol_override;

        if (command == "integrate") return run_integrate(opt);
        if (command == "derive") return run_derive(opt);
        if (command == "solve") return run_solve(opt);
        if (command == "lemma31") return run_lemma31(opt);
        if (command == "stability") return run_stability(opt);
        if (command == "pachpatte") return run_pachpatte(opt);
        if (command == "norms") return run_norms(opt);
        std::cerr << "unknown command '" << command << "'\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
