#include "frac/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "frac/operators.hpp"

namespace frac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Globally adaptive Simpson: split the panel with the worst local error
// estimate until the summed estimates meet a relative budget. Written
// independently of the oracle module's Gauss-Kronrod integrator.
struct SimpsonPanel {
    double lo, hi, value, error;
    bool operator<(const SimpsonPanel& o) const { return error < o.error; }
};

SimpsonPanel simpson_panel(const std::function<double(double)>& f, double lo,
                           double hi) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double flm = f(lm), frm = f(rm);
    const double coarse = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const double fine = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid) +
                        (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    return {lo, hi, fine, std::abs(fine - coarse) / 15.0};
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
    if (hi <= lo) return 0.0;
    std::priority_queue<SimpsonPanel> queue;
    SimpsonPanel whole = simpson_panel(f, lo, hi);
    queue.push(whole);
    double total_v = whole.value;
    double total_e = whole.error;
    for (int split = 0; split < 20000; ++split) {
        if (total_e <= std::max(rel_tol * std::abs(total_v), 1e-305)) break;
        SimpsonPanel worst = queue.top();
        if (worst.hi - worst.lo < 1e-300) break;
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        SimpsonPanel a = simpson_panel(f, worst.lo, mid);
        SimpsonPanel b = simpson_panel(f, mid, worst.hi);
        total_v += a.value + b.value - worst.value;
        total_e += a.error + b.error - worst.error;
        queue.push(a);
        queue.push(b);
    }
    return total_v;
}

}  // namespace

Lemma31Params::Lemma31Params(double zeta_, double vartheta_, double varpi_)
    : zeta(zeta_), vartheta(vartheta_), varpi(varpi_) {
    if (!(zeta > 0.0 && vartheta > 0.0 && varpi > 0.0))
        throw std::domain_error(
            "Lemma31Params: zeta, vartheta, varpi must all be positive");
}

double evaluate_I(const Lemma31Params& p, double rho, double a, double t) {
    if (!(t > a))
        throw std::domain_error("evaluate_I: requires t > a");
    const double z = scaled_time(t, a, rho);
    const double zeta = p.zeta, vartheta = p.vartheta;
    const double s = p.varpi * z;  // exponential scale
    const double rel = 1e-9;

    // Left half, xi in [0, 1/2]: carries the xi^(zeta-1) singularity and
    // the e^(-s xi) decay.
    double left;
    if (zeta < 1.0) {
        // u = xi^zeta removes the singularity; the exponential then has
        // scale u ~ s^(-zeta), still resolvable by bisection.
        auto g = [&](double u) {
            const double xi = std::pow(u, 1.0 / zeta);
            return std::pow(1.0 - xi, vartheta - 1.0) * std::exp(-s * xi) /
                   zeta;
        };
        left = integrate(g, 0.0, std::pow(0.5, zeta), rel);
    } else if (s > 2.0) {
        // u = s*xi normalizes the decay; integrand ~ u^(zeta-1) e^-u.
        const double cut = std::min(0.5 * s, 60.0 + 10.0 * zeta);
        auto g = [&](double u) {
            return std::pow(u, zeta - 1.0) *
                   std::pow(1.0 - u / s, vartheta - 1.0) * std::exp(-u);
        };
        left = integrate(g, 0.0, cut, rel) * std::pow(s, -zeta);
    } else {
        auto g = [&](double xi) {
            return std::pow(xi, zeta - 1.0) *
                   std::pow(1.0 - xi, vartheta - 1.0) * std::exp(-s * xi);
        };
        left = integrate(g, 0.0, 0.5, rel);
    }

    // Right half, xi in [1/2, 1]: carries the (1-xi)^(vartheta-1)
    // singularity; the exponential is bounded by e^(-s/2) here.
    double right;
    if (vartheta < 1.0) {
        auto g = [&](double v) {
            const double xi = 1.0 - std::pow(v, 1.0 / vartheta);
            return std::pow(xi, zeta - 1.0) * std::exp(-s * xi) / vartheta;
        };
        right = integrate(g, 0.0, std::pow(0.5, vartheta), rel);
    } else {
        auto g = [&](double xi) {
            return std::pow(xi, zeta - 1.0) *
                   std::pow(1.0 - xi, vartheta - 1.0) * std::exp(-s * xi);
        };
        right = integrate(g, 0.5, 1.0, rel);
    }

    return std::pow(z, zeta) * (left + right);
}

double lemma31_constant(double zeta, double vartheta) {
    if (!(zeta > 0.0 && vartheta > 0.0))
        throw std::domain_error(
            "lemma31_constant: requires zeta, vartheta > 0");
    return std::max(1.0, std::pow(2.0, 1.0 - vartheta)) * gamma_fn(zeta) *
           (1.0 + zeta * (zeta + 1.0) / vartheta);
}

Lemma31Report check_lemma31(const Lemma31Params& p, double rho, double a,
                            const std::vector<double>& t_samples) {
    Lemma31Report rep;
    rep.constant = lemma31_constant(p.zeta, p.vartheta);
    const double bound = rep.constant * std::pow(p.varpi, -p.zeta);
    for (double t : t_samples) {
        const double val = evaluate_I(p, rho, a, t);
        const double ratio = val / bound;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > 1.0) rep.violating_t.push_back(t);
    }
    rep.holds = rep.violating_t.empty();
    return rep;
}

DerivedConstants derive_constants(const Hypotheses& h,
                                  const FracParams& params, double a,
                                  double b) {
    const double alpha = params.alpha;
    const double gamma = params.gamma;
    if (h.m < 2)
        throw std::domain_error("H1 requires m in N\\{1}, got m = " +
                                std::to_string(h.m));
    if (!(h.mu >= 0.0))
        throw std::domain_error("H1 requires mu >= 0, got mu = " +
                                std::to_string(h.mu));
    if (!(h.sigma > 0.0))
        throw std::domain_error("H1 requires sigma > 0, got sigma = " +
                                std::to_string(h.sigma));
    if (!(h.q > 1.0 / alpha))
        throw std::domain_error("H2 requires q > 1/alpha = " +
                                std::to_string(1.0 / alpha) + ", got q = " +
                                std::to_string(h.q));
    const double slack = (h.m - 1) * (1.0 - gamma);
    if (!(h.mu > slack))
        throw std::domain_error(
            "H2 requires mu > (m-1)(1-gamma) = " + std::to_string(slack) +
            ", got mu = " + std::to_string(h.mu));
    if (b == 0.0)
        throw std::domain_error("derive_constants: requires b != 0");
    if (!(a > 0.0))
        throw std::domain_error("derive_constants: requires a > 0");

    DerivedConstants c;
    c.p = h.q / (h.q - 1.0);
    c.lambda1 = 1.0 + c.p * (h.mu - (1.0 - gamma) * h.m);
    c.lambda2 = 1.0 + c.p * (alpha - 1.0);
    if (!(c.lambda1 > 0.0))
        throw std::domain_error(
            "derive_constants: lambda1 = 1 + p[mu - (1-gamma)m] must be "
            "positive, got " +
            std::to_string(c.lambda1));
    if (!(c.lambda2 > 0.0))
        throw std::domain_error(
            "derive_constants: lambda2 = 1 + p(alpha-1) must be positive "
            "(equivalent to q > 1/alpha)");

    const double m = static_cast<double>(h.m);
    const double q = h.q, p = c.p;
    const double psr = p * h.sigma * params.rho;
    // K and C1 in log space; the printed formulas multiply wide-ranging
    // powers.
    const double log_K =
        (m * q * std::lgamma(alpha) + m * std::log(a) -
         m * q * (m - 1.0) * std::log(std::abs(b)) - std::log(m - 1.0) -
         (q * (m + alpha - 1.0) - 1.0) * std::log(2.0)) /
            q +
        (c.lambda1 * m * std::log(psr) - m * std::lgamma(c.lambda1) -
         m * std::log1p(c.lambda1 / c.lambda2)) /
            p;
    c.K = std::exp(log_K);
    const double log_C1 =
        ((alpha - 1.0) * p * std::log(2.0) + std::lgamma(c.lambda1) +
         std::log1p(c.lambda1 * (c.lambda1 + 1.0) / c.lambda2) -
         c.lambda1 * std::log(psr)) /
        p;
    c.C1 = std::exp(log_C1);
    c.C1hat = c.C1 / gamma_fn(alpha);
    return c;
}

H1Report check_h1(const std::function<double(double, double)>& rhs,
                  const Hypotheses& h, const FracParams& params, double a,
                  const std::vector<std::pair<double, double>>& samples) {
    H1Report rep;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [t, x] = samples[i];
        if (!(t > a))
            throw std::domain_error("check_h1: samples must have t > a");
        const double z = scaled_time(t, a, params.rho);
        const double bound = std::pow(z, h.mu) *
                             std::exp(-h.sigma * params.rho * z) *
                             h.phi.value(t) *
                             std::pow(std::abs(x), h.m);
        const double f = std::abs(rhs(t, x));
        double ratio;
        if (bound > 0.0)
            ratio = f / bound;
        else
            ratio = f == 0.0 ? 0.0 : kInf;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > 1.0 + 1e-12) rep.violations.push_back(i);
    }
    rep.satisfied = rep.violations.empty();
    return rep;
}

H2Report check_h2(const Hypotheses& h, const FracParams& params, double a,
                  double b, double t_trunc) {
    if (!(t_trunc > a))
        throw std::domain_error("check_h2: requires T_trunc > a");
    H2Report rep;
    const double q = h.q;
    const double c_exp = h.m * params.beta * (1.0 - params.alpha);
    const double rho = params.rho;
    rep.K = derive_constants(h, params, a, b).K;

    // Near-a integrability of the weighted norm: the integrand behaves
    // like z^(-c q) phi^q, integrable only for c q < 1 unless phi itself
    // vanishes toward a.
    if (c_exp * q >= 1.0) {
        const double len = t_trunc - a;
        double near = 0.0;
        for (double frac_off : {1e-9, 1e-6, 1e-3})
            near = std::max(near, h.phi.value(a + frac_off * len));
        if (near > 0.0) {
            rep.verdict = Verdict::fail;
            rep.reason =
                "weighted norm not integrable near t = a "
                "(m q beta(1-alpha) >= 1 and phi > 0 there)";
            rep.lhs_lower = rep.lhs_upper = kInf;
            rep.weighted_norm_lower = rep.weighted_norm_upper = kInf;
            return rep;
        }
        rep.verdict = Verdict::inconclusive;
        rep.reason =
            "m q beta(1-alpha) >= 1: integrability near t = a depends on "
            "how fast phi vanishes, which the checker cannot bound";
        return rep;
    }

    // Main parts on [a, T_trunc], integrated in z where the pure power
    // z^(-c q) can be substituted away.
    const double big_z = scaled_time(t_trunc, a, rho);
    auto phi_q_of_z = [&](double z) {
        const double t = inverse_scaled_time(z, a, rho);
        const double phi = h.phi.value(t);
        // dt = t^(1-rho) dz
        return std::pow(phi, q) * std::pow(t, 1.0 - rho);
    };
    const double plain_main = integrate(phi_q_of_z, 0.0, big_z, 1e-9);
    double weighted_main;
    if (c_exp == 0.0) {
        weighted_main = plain_main;
    } else {
        // z = u^(1/(1 - c q)) turns z^(-c q) dz into a bounded measure.
        const double pw = 1.0 / (1.0 - c_exp * q);
        auto g = [&](double u) {
            const double z = std::pow(u, pw);
            return phi_q_of_z(z) * pw;
        };
        weighted_main = integrate(g, 0.0, std::pow(big_z, 1.0 / pw), 1e-9);
    }

    // Tail bounds from the decay envelope.
    double plain_tail, weighted_tail;
    if (!h.phi.has_envelope) {
        // No way to bound the tail; only phi identically ~0 past T_trunc
        // could be decided, which we cannot know.
        rep.verdict = Verdict::inconclusive;
        rep.reason = "no decay envelope supplied for phi; tail unbounded";
        return rep;
    }
    const double amp = h.phi.envelope_amplitude;
    const double rate = h.phi.envelope_rate;
    if (amp == 0.0) {
        plain_tail = weighted_tail = 0.0;
    } else if (rate > 0.0) {
        plain_tail = std::pow(amp, q) * std::exp(-q * rate * t_trunc) /
                     (q * rate);
        weighted_tail = plain_tail * std::pow(big_z, -c_exp * q);
    } else {
        rep.verdict = Verdict::fail;
        rep.reason = "phi has a non-decaying envelope: L^q norm diverges";
        rep.lhs_lower = rep.lhs_upper = kInf;
        return rep;
    }

    rep.phi_norm_lower = std::pow(plain_main, 1.0 / q);
    rep.phi_norm_upper = std::pow(plain_main + plain_tail, 1.0 / q);
    rep.weighted_norm_lower = std::pow(weighted_main, 1.0 / q);
    rep.weighted_norm_upper = std::pow(weighted_main + weighted_tail, 1.0 / q);
    rep.lhs_lower = std::pow(rep.phi_norm_lower, h.m - 1) *
                    rep.weighted_norm_lower;
    rep.lhs_upper = std::pow(rep.phi_norm_upper, h.m - 1) *
                    rep.weighted_norm_upper;

    rep.below_K = rep.lhs_upper < rep.K;
    rep.below_half_K = rep.lhs_upper < 0.5 * rep.K;
    if (rep.below_K) {
        rep.verdict = Verdict::pass;
        rep.reason = "lhs upper bound below K";
    } else if (rep.lhs_lower >= rep.K) {
        rep.verdict = Verdict::fail;
        rep.reason = "lhs lower bound already >= K";
    } else {
        rep.verdict = Verdict::inconclusive;
        rep.reason = "truncation tail too loose to decide against K";
    }
    return rep;
}

namespace {

double interp_at(const std::vector<double>& xs, const std::vector<double>& ys,
                 double x) {
    if (xs.empty()) throw std::domain_error("BoundReport: empty samples");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - w) * ys[i - 1] + w * ys[i];
}

}  // namespace

double BoundReport::l_at(double t) const { return interp_at(t_s, l_s, t); }
double BoundReport::k_at(double t) const { return interp_at(t_s, k_s, t); }
double BoundReport::w_at(double t) const { return interp_at(t_s, w_s, t); }
double BoundReport::z_bound_at(double t) const {
    return interp_at(t_s, zb_s, t);
}
double BoundReport::y_at(double t) const { return interp_at(t_s, y_s, t); }

BoundReport gronwall_chain(const Hypotheses& h, const DerivedConstants& c,
                           const FracParams& params, double a, double b,
                           double T) {
    if (!(T > a))
        throw std::domain_error("gronwall_chain: requires T > a");
    BoundReport rep;
    rep.m = h.m;
    rep.q = h.q;
    rep.a = a;
    rep.T = T;

    const double m = static_cast<double>(h.m);
    const double q = h.q;
    const double rho = params.rho;
    // k's integrand exponent, as used inside the proof chain:
    // -(m q beta(alpha-1)) = +m q beta(1-alpha) >= 0.
    const double k_exp = m * q * params.beta * (1.0 - params.alpha);
    const double beta_exp = params.beta * (1.0 - params.alpha);
    const double front = std::pow(2.0, m * q - 1.0) * std::pow(c.C1hat, q);
    const double l_front = front * std::pow(std::abs(b), m * q);

    const std::size_t n = 2048;
    const double big_z = scaled_time(T, a, rho);
    rep.t_s.resize(n + 1);
    rep.z_s.resize(n + 1);
    rep.l_s.resize(n + 1);
    rep.k_s.resize(n + 1);
    rep.condition_s.resize(n + 1);
    rep.w_s.resize(n + 1);
    rep.zb_s.resize(n + 1);
    rep.y_s.resize(n + 1);

    // Graded sampling in z and cumulative trapezoid in t.
    for (std::size_t i = 0; i <= n; ++i) {
        const double frac_i = static_cast<double>(i) / static_cast<double>(n);
        rep.z_s[i] = big_z * frac_i * frac_i;
        rep.t_s[i] = inverse_scaled_time(rep.z_s[i], a, rho);
    }
    rep.t_s[0] = a;
    rep.t_s[n] = T;

    double acc_l = 0.0, acc_k = 0.0;
    double prev_pl = std::pow(h.phi.value(a), q);
    double prev_wt = prev_pl * std::pow(rep.z_s[0], k_exp);  // 0^0 = 1
    if (rep.z_s[0] == 0.0 && k_exp > 0.0) prev_wt = 0.0;
    rep.l_s[0] = 0.0;
    rep.k_s[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double phi_q = std::pow(h.phi.value(rep.t_s[i]), q);
        const double wt = phi_q * std::pow(rep.z_s[i], k_exp);
        const double dt = rep.t_s[i] - rep.t_s[i - 1];
        acc_l += 0.5 * (prev_pl + phi_q) * dt;
        acc_k += 0.5 * (prev_wt + wt) * dt;
        rep.l_s[i] = l_front * acc_l;
        rep.k_s[i] = front * acc_k;
        prev_pl = phi_q;
        prev_wt = wt;
    }

    // Validity condition l^(m-1) k < 1/(m-1), then the inverted-G bound
    // w = [l^(1-m) - (m-1) k]^(-1/(m-1)) and the closing displays.
    const double threshold = 1.0 / (m - 1.0);
    rep.validity_empty = false;
    rep.validity_horizon = T;
    bool valid_so_far = true;
    for (std::size_t i = 0; i <= n; ++i) {
        const double cond = std::pow(rep.l_s[i], m - 1.0) * rep.k_s[i];
        rep.condition_s[i] = cond;
        if (valid_so_far && !(cond < threshold)) {
            valid_so_far = false;
            if (i == 0) {
                rep.validity_empty = true;
                rep.validity_horizon = a;
            } else {
                rep.validity_horizon = rep.t_s[i - 1];
            }
        }
        double w;
        if (!valid_so_far) {
            w = kInf;
        } else if (rep.l_s[i] == 0.0) {
            w = 0.0;
        } else {
            const double inv = std::pow(rep.l_s[i], 1.0 - m) -
                               (m - 1.0) * rep.k_s[i];
            w = std::pow(inv, -1.0 / (m - 1.0));
        }
        rep.w_s[i] = w;
        const double w_root = w == 0.0 ? 0.0 : std::pow(w, 1.0 / q);
        rep.zb_s[i] =
            std::abs(b) * std::pow(rep.z_s[i], beta_exp) + w_root;
        double y;
        if (w == 0.0) {
            y = std::abs(b);
        } else if (rep.z_s[i] > 0.0) {
            y = std::abs(b) + w_root * std::pow(rep.z_s[i], -beta_exp);
        } else {
            y = beta_exp > 0.0 ? kInf : std::abs(b) + w_root;
        }
        rep.y_s[i] = y;
    }
    rep.certified = valid_so_far;

    // Certificate start: first sample with z >= 0.01 Z.
    std::size_t i0 = 0;
    while (i0 < n && rep.z_s[i0] < 0.01 * big_z) ++i0;
    rep.t0 = rep.t_s[i0];
    rep.final_C = 0.0;
    for (std::size_t i = i0; i <= n; ++i)
        rep.final_C = std::max(rep.final_C, rep.y_s[i]);
    return rep;
}

Nonlinearity Nonlinearity::power(double m) {
    if (!(m > 1.0))
        throw std::domain_error("Nonlinearity::power: requires exponent > 1");
    Nonlinearity w;
    w.kind = Kind::power;
    w.exponent = m;
    return w;
}

Nonlinearity Nonlinearity::general(std::function<double(double)> f) {
    if (!f) throw std::invalid_argument("Nonlinearity::general: missing fn");
    Nonlinearity w;
    w.kind = Kind::general;
    w.fn = std::move(f);
    return w;
}

double pachpatte_bound(double u0, const std::function<double(double)>& a_fn,
                       const std::function<double(double)>& b_fn,
                       const Nonlinearity& w, double t0, double t) {
    if (!(u0 > 0.0))
        throw std::domain_error("pachpatte_bound: requires u0 > 0");
    if (!(t >= t0))
        throw std::domain_error("pachpatte_bound: requires t >= t0");
    const double int_a = integrate(a_fn, t0, t, 1e-11);
    const double int_b = integrate(b_fn, t0, t, 1e-11);
    if (int_a < 0.0 || int_b < 0.0)
        throw std::domain_error(
            "pachpatte_bound: a and b must be nonnegative on [t0, t]");
    const double base = u0 + int_b;

    switch (w.kind) {
        case Nonlinearity::Kind::linear:
            // G = log, G^-1 = exp; r0 cancels.
            return base * std::exp(int_a);
        case Nonlinearity::Kind::power: {
            const double m = w.exponent;
            const double head = std::pow(base, 1.0 - m);
            const double rest = head - (m - 1.0) * int_a;
            if (!(rest > 0.0)) return kInf;
            return std::pow(rest, -1.0 / (m - 1.0));
        }
        case Nonlinearity::Kind::general:
            break;
    }

    const double r0 = 0.5 * u0;
    if (!(w.fn(r0) > 0.0))
        throw std::domain_error(
            "pachpatte_bound: w must be positive at r0 = u0/2");
    auto big_g = [&](double r) {
        if (r == r0) return 0.0;
        return integrate([&](double s) { return 1.0 / w.fn(s); },
                         std::min(r0, r), std::max(r0, r), 1e-11) *
               (r >= r0 ? 1.0 : -1.0);
    };
    const double target = big_g(base) + int_a;
    // Invert G by expanding an upper bracket, then bisecting.
    double lo = r0, hi = std::max(base, r0 * 2.0);
    while (big_g(hi) < target) {
        if (hi > 1e150) return kInf;
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (big_g(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

PowerSumReport power_sum_check(const std::vector<double>& values, double p) {
    if (!(p >= 1.0))
        throw std::domain_error("power_sum_check: requires p >= 1");
    double sum = 0.0, sum_p = 0.0;
    for (double v : values) {
        if (v < 0.0)
            throw std::domain_error(
                "power_sum_check: values must be nonnegative");
        sum += v;
        sum_p += std::pow(v, p);
    }
    PowerSumReport rep;
    rep.lhs = std::pow(sum, p);
    rep.rhs = std::pow(static_cast<double>(values.size()), p - 1.0) * sum_p;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

StabilityCertificate certify_stability(const CauchyProblem& problem,
                                       const Hypotheses& h,
                                       const Solution& sol,
                                       const BoundReport& report, double t0) {
    (void)h;
    StabilityCertificate cert;
    const GridFunction& v = sol.x;
    const ScaledGrid& grid = *v.grid();
    if (t0 < 0.0) t0 = report.t0;
    cert.t0 = t0;
    cert.final_C = report.final_C;

    if (!sol.converged) {
        cert.note = "refused: solution did not converge";
        return cert;
    }
    if (report.validity_empty || report.validity_horizon < grid.T()) {
        cert.note =
            "refused: validity region does not cover [t0, T] "
            "(l^(m-1) k < 1/(m-1) fails before T)";
        return cert;
    }
    if (v.is_plain() ||
        std::abs(v.weight() - (1.0 - problem.params.gamma)) > 1e-12) {
        cert.note = "refused: solution is not in weighted form z^(1-gamma) x";
        return cert;
    }
    if (grid.a() != problem.a || grid.rho() != problem.params.rho) {
        cert.note = "refused: solution grid does not match the problem";
        return cert;
    }

    cert.attempted = true;
    cert.margin.assign(v.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (grid.t(j) < t0) continue;
        const double weighted_abs = std::abs(v[j]);
        cert.margin[j] = report.final_C - weighted_abs;
        if (cert.margin[j] < 0.0) cert.violating_nodes.push_back(j);
    }
    cert.passed = cert.violating_nodes.empty();
    cert.note = cert.passed
                    ? "certified for t >= t0 > a (the theorem's closing "
                      "display is asserted from t0, not from a)"
                    : "bound violated at " +
                          std::to_string(cert.violating_nodes.size()) +
                          " node(s)";
    return cert;
}

}  // namespace frac
