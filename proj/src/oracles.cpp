#include "frac/oracles.hpp"

#include <algorithm>
#include <queue>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frac::oracle {

namespace {

// 15-point Gauss-Kronrod pair on [-1, 1] (nodes/weights from QUADPACK).
constexpr double kron_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gauss_kronrod(const std::function<double(double)>& f, double lo,
                          double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kron_x[i]);
        fv[14 - i] = f(c + h * kron_x[i]);
    }
    fv[7] = f(c);
    double kron = kron_w[7] * fv[7];
    double gauss = gauss_w[3] * fv[7];
    for (int i = 0; i < 7; ++i) kron += kron_w[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i)
        gauss += gauss_w[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

// Globally adaptive strategy: keep a worst-first queue of panels and split
// the largest error estimate until the summed estimates meet the budget.
// Point-like kinks left over after the endpoint substitutions then cost a
// geometric chain of small panels instead of a failed uniform race.
double adaptive(const std::function<double(double)>& f, double lo, double hi,
                const OracleConfig& cfg) {
    if (hi == lo) return 0.0;
    struct Panel {
        double lo, hi, integral, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> queue;
    PanelResult whole = gauss_kronrod(f, lo, hi);
    queue.push({lo, hi, whole.integral, whole.error});
    double total_i = whole.integral;
    double total_e = whole.error;
    const std::size_t max_panels =
        static_cast<std::size_t>(64) * static_cast<std::size_t>(cfg.max_depth);
    std::size_t splits = 0;
    auto budget = [&] {
        return std::max(cfg.target_rel_error * std::abs(total_i), 1e-305);
    };
    while (total_e > budget()) {
        if (++splits > max_panels || queue.top().hi - queue.top().lo < 1e-300)
            throw std::runtime_error(
                "adaptive_quadrature: refinement exhausted, best estimate " +
                std::to_string(total_i) + " +/- " + std::to_string(total_e));
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        PanelResult a = gauss_kronrod(f, worst.lo, mid);
        PanelResult b = gauss_kronrod(f, mid, worst.hi);
        total_i += a.integral + b.integral - worst.integral;
        total_e += a.error + b.error - worst.error;
        queue.push({worst.lo, mid, a.integral, a.error});
        queue.push({mid, worst.hi, b.integral, b.error});
    }
    return total_i;
}

}  // namespace

double adaptive_quadrature(const Integrand& f, double lo, double hi,
                           const OracleConfig& cfg,
                           const EndpointExponents& endpoints) {
    if (!(hi >= lo))
        throw std::domain_error("adaptive_quadrature: requires hi >= lo");
    if (endpoints.lo <= -1.0 || endpoints.hi <= -1.0)
        throw std::domain_error(
            "adaptive_quadrature: endpoint exponent must be > -1");

    const double len = hi - lo;
    if (len == 0.0) return 0.0;

    auto direct = [&](double from, double to) {
        return adaptive(
            [&](double x) { return f(x, x - lo, hi - x); }, from, to, cfg);
    };

    // Remove declared algebraic singularities by u-substitution on the
    // half of the interval nearest the endpoint. The substituted variable
    // u = d^(1+e) keeps the endpoint distance d exact, so singular factors
    // built from it lose no precision.
    if (endpoints.lo != 0.0 || endpoints.hi != 0.0) {
        const double mid = lo + 0.5 * len;
        double left, right;
        if (endpoints.lo != 0.0) {
            const double e = endpoints.lo;
            const double pw = 1.0 / (1.0 + e);
            auto g = [&](double u) {
                const double d = std::pow(u, pw);
                return f(lo + d, d, len - d) * pw * std::pow(u, pw - 1.0);
            };
            left = adaptive(g, 0.0, std::pow(mid - lo, 1.0 + e), cfg);
        } else {
            left = direct(lo, mid);
        }
        if (endpoints.hi != 0.0) {
            const double e = endpoints.hi;
            const double pw = 1.0 / (1.0 + e);
            auto g = [&](double u) {
                const double d = std::pow(u, pw);
                return f(hi - d, len - d, d) * pw * std::pow(u, pw - 1.0);
            };
            right = adaptive(g, 0.0, std::pow(hi - mid, 1.0 + e), cfg);
        } else {
            right = direct(mid, hi);
        }
        return left + right;
    }
    return direct(lo, hi);
}

double adaptive_quadrature(const std::function<double(double)>& f, double lo,
                           double hi, const OracleConfig& cfg,
                           const EndpointExponents& endpoints) {
    return adaptive_quadrature(
        [&](double x, double, double) { return f(x); }, lo, hi, cfg,
        endpoints);
}

double lanczos_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("lanczos_gamma: requires x > 0");
    // g = 7, n = 9 coefficients (Godfrey).
    static const double coef[9] = {
        0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
        771.32342877765313,   -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6,
        1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection, only needed for completeness on (0, 0.5)
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x));
    }
    const double z = x - 1.0;
    double sum = coef[0];
    for (int i = 1; i < 9; ++i) sum += coef[i] / (z + i);
    const double t = z + 7.5;
    const double sqrt_two_pi = 2.506628274631000502;
    return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

double power_rule_coeff(double sigma, double alpha) {
    if (!(sigma > -1.0))
        throw std::domain_error("power_rule_coeff: requires sigma > -1");
    if (!(alpha > 0.0))
        throw std::domain_error("power_rule_coeff: requires alpha > 0");
    return lanczos_gamma(sigma + 1.0) / lanczos_gamma(sigma + alpha + 1.0);
}

double mittag_leffler(double alpha, double gamma, double x,
                      const OracleConfig& cfg) {
    if (!(alpha > 0.0))
        throw std::domain_error("mittag_leffler: requires alpha > 0");
    if (std::abs(x) > 50.0)
        throw std::domain_error(
            "mittag_leffler: |x| > 50 is outside the series regime");
    double sum = 0.0;
    double xk = 1.0;
    double max_term = 0.0;
    for (int k = 0; k < 4000; ++k) {
        const double term = xk / lanczos_gamma(alpha * k + gamma);
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        // For x < 0 the terms alternate; require two consecutive small
        // terms before trusting the truncation.
        if (std::abs(term) <= cfg.series_epsilon * std::abs(sum) && k > 2) {
            const double next = xk * x / lanczos_gamma(alpha * (k + 1) + gamma);
            if (std::abs(next) <= cfg.series_epsilon * std::abs(sum))
                return sum;
        }
        xk *= x;
    }
    return sum;
}

double Trajectory::operator()(double at) const {
    if (t.empty()) throw std::domain_error("Trajectory: empty");
    if (at <= t.front()) return u.front();
    if (at >= t.back()) return u.back();
    auto it = std::upper_bound(t.begin(), t.end(), at);
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double w = (at - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * u[i - 1] + w * u[i];
}

namespace {

std::vector<double> rk4_path(double u0,
                             const std::function<double(double, double)>& rhs,
                             double t0, double h, int steps) {
    std::vector<double> u(static_cast<std::size_t>(steps) + 1);
    u[0] = u0;
    double y = u0;
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + h * i;
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        u[static_cast<std::size_t>(i) + 1] = y;
    }
    return u;
}

}  // namespace

Trajectory reference_ode(double u0,
                         const std::function<double(double, double)>& rhs,
                         double t0, double t1, int steps,
                         const OracleConfig& cfg) {
    if (steps < 10) throw std::domain_error("reference_ode: steps >= 10");
    if (!(t1 > t0)) throw std::domain_error("reference_ode: requires t1 > t0");
    const double h = (t1 - t0) / steps;
    std::vector<double> coarse = rk4_path(u0, rhs, t0, h, steps);
    std::vector<double> fine = rk4_path(u0, rhs, t0, 0.5 * h, 2 * steps);

    Trajectory traj;
    traj.t.resize(coarse.size());
    traj.u = fine.empty() ? coarse : std::vector<double>(coarse.size());
    double disagreement = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        traj.t[i] = t0 + h * static_cast<double>(i);
        traj.u[i] = fine[2 * i];
        const double scale = std::max(1.0, std::abs(fine[2 * i]));
        disagreement =
            std::max(disagreement, std::abs(coarse[i] - fine[2 * i]) / scale);
    }
    traj.richardson_error = disagreement;
    (void)cfg;
    return traj;
}

}  // namespace frac::oracle
