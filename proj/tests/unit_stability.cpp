#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "frac/oracles.hpp"
#include "frac/solver.hpp"
#include "frac/stability.hpp"

using namespace frac;

namespace {

PhiFunction phi_const(double value) {
    PhiFunction p;
    p.value = [value](double) { return value; };
    p.has_envelope = true;
    p.envelope_amplitude = value;
    p.envelope_rate = value == 0.0 ? 1.0 : 0.0;  // constants do not decay
    return p;
}

PhiFunction phi_exp(double eps) {
    PhiFunction p;
    p.value = [eps](double t) { return eps * std::exp(-t); };
    p.has_envelope = true;
    p.envelope_amplitude = eps;
    p.envelope_rate = 1.0;
    return p;
}

Hypotheses worked_hypotheses(double eps) {
    // the worked instance: alpha = beta = 0.5, m = 2, q = 3, mu = 0.5,
    // sigma = 1
    Hypotheses h;
    h.mu = 0.5;
    h.sigma = 1.0;
    h.m = 2;
    h.q = 3.0;
    h.phi = phi_exp(eps);
    return h;
}

}  // namespace

TEST_CASE("evaluate_I closed-form spot checks") {
    // zeta = vartheta = 1, varpi = 2: I = (1 - e^(-2 z)) / 2
    Lemma31Params p1(1.0, 1.0, 2.0);
    const double i1 = evaluate_I(p1, 1.0, 1.0, 2.0);  // z = 1
    CHECK(i1 == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-8));
    CHECK(i1 == doctest::Approx(0.4323324).epsilon(1e-6));

    // vanishing varpi: I -> z * int_0^1 (1 - xi) dxi = 0.5 at z = 1
    Lemma31Params p2(1.0, 2.0, 1e-8);
    CHECK(evaluate_I(p2, 1.0, 1.0, 2.0) ==
          doctest::Approx(0.5).epsilon(1e-6));

    // zeta = 2, vartheta = 1, varpi = 1, z = 3: I = 1 - 4 e^(-3)
    Lemma31Params p3(2.0, 1.0, 1.0);
    CHECK(evaluate_I(p3, 1.0, 1.0, 4.0) ==
          doctest::Approx(1.0 - 4.0 * std::exp(-3.0)).epsilon(1e-8));
    CHECK(evaluate_I(p3, 1.0, 1.0, 4.0) ==
          doctest::Approx(0.8008517).epsilon(1e-6));

    CHECK_THROWS_AS(evaluate_I(p1, 1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Lemma31Params(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("evaluate_I agrees with the oracle quadrature across draws") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double zeta = 0.1 + 4.9 * u01(rng);
        const double vth = 0.1 + 4.9 * u01(rng);
        const double varpi = std::pow(10.0, -2.0 + 3.0 * u01(rng));
        const double z = std::pow(10.0, -2.0 + 2.5 * u01(rng));
        Lemma31Params p(zeta, vth, varpi);
        const double t = inverse_scaled_time(z, 1.0, 1.0);
        const double ours = evaluate_I(p, 1.0, 1.0, t);
        const double ref =
            std::pow(z, zeta) *
            oracle::adaptive_quadrature(
                [&](double, double d_lo, double d_hi) {
                    return std::pow(d_hi, vth - 1.0) *
                           std::pow(d_lo, zeta - 1.0) *
                           std::exp(-varpi * d_lo * z);
                },
                0.0, 1.0, {}, {zeta - 1.0, vth - 1.0});
        CHECK(std::abs(ours - ref) <= 1e-7 * std::max(std::abs(ref), 1e-30));
    }
}

TEST_CASE("lemma31_constant printed instances") {
    CHECK(lemma31_constant(1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lemma31_constant(2.0, 1.0) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(lemma31_constant(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(lemma31_constant(-1.0, 1.0), std::domain_error);
}

TEST_CASE("lemma 3.1 bound holds on samples and under damping") {
    Lemma31Params p(1.0, 1.0, 2.0);
    std::vector<double> ts;
    for (int i = 1; i <= 40; ++i) ts.push_back(1.0 + 0.5 * i);
    Lemma31Report rep = check_lemma31(p, 1.0, 1.0, ts);
    CHECK(rep.holds);
    CHECK(rep.max_ratio <= 1.0 / 3.0 + 1e-9);

    // huge varpi: I -> Gamma(zeta) varpi^(-zeta), so the ratio approaches
    // Gamma(zeta)/C = 1/(max(1,2^(1-vth))(1 + zeta(zeta+1)/vth)) ~ 0.069,
    // comfortably below 1
    Lemma31Params damped(2.3, 0.7, 1e6);
    Lemma31Report rep2 = check_lemma31(damped, 1.0, 1.0, ts);
    CHECK(rep2.holds);
    CHECK(rep2.max_ratio < 0.08);
}

TEST_CASE("lemma 3.1 random sweep has no violations") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        Lemma31Params p(0.1 + 4.9 * u01(rng), 0.1 + 4.9 * u01(rng),
                        std::pow(10.0, -2.0 + 4.0 * u01(rng)));
        const double z =
            std::pow(10.0, -2.0 + u01(rng) * (std::log10(50.0) + 2.0));
        const double t = inverse_scaled_time(z, 1.0, 1.0);
        Lemma31Report rep = check_lemma31(p, 1.0, 1.0, {t});
        CHECK(rep.holds);
        worst = std::max(worst, rep.max_ratio);
    }
    CHECK(worst <= 1.0);
}

TEST_CASE("derive_constants reproduces the worked instance exactly") {
    FracParams params(0.5, 0.5, 1.0);  // gamma = 0.75
    Hypotheses h = worked_hypotheses(0.01);
    DerivedConstants c = derive_constants(h, params, 1.0, 1.0);
    CHECK(c.p == 1.5);
    CHECK(c.lambda1 == 1.0);
    CHECK(c.lambda2 == 0.25);
    // C1 = [2^(-0.75) * Gamma(1) * (1 + 1*2/0.25) * 1.5^(-1)]^(2/3)
    const double c1_ref =
        std::pow(std::pow(2.0, -0.75) * 9.0 / 1.5, 2.0 / 3.0);
    CHECK(c.C1 == doctest::Approx(c1_ref).epsilon(1e-12));
    CHECK(c.C1 == doctest::Approx(2.3348151).epsilon(1e-7));
    CHECK(c.C1hat == doctest::Approx(c1_ref / std::tgamma(0.5)).epsilon(1e-12));

    // K assembled independently through the oracle gamma:
    //   [G(a)^(mq) a^m / (|b|^(mq(m-1)) (m-1) 2^(q(m+a-1)-1))]^(1/q)
    // * [(p s r)^(l1 m) / (G(l1)^m (1 + l1/l2)^m)]^(1/p)
    const double g_half = oracle::lanczos_gamma(0.5);
    const double term1 = std::pow(
        std::pow(g_half, 6.0) * 1.0 / (1.0 * 1.0 * std::pow(2.0, 3.5)),
        1.0 / 3.0);
    const double term2 = std::pow(
        std::pow(1.5, 2.0) /
            (std::pow(oracle::lanczos_gamma(1.0), 2.0) * std::pow(5.0, 2.0)),
        1.0 / 1.5);
    CHECK(c.K == doctest::Approx(term1 * term2).epsilon(1e-12));
    CHECK(c.K == doctest::Approx(0.2810).epsilon(1e-3));
}

TEST_CASE("derive_constants rejects violated hypotheses by name") {
    FracParams params(0.5, 0.5, 1.0);
    Hypotheses h = worked_hypotheses(0.01);

    Hypotheses bad_q = h;
    bad_q.q = 1.5;  // 1/alpha = 2
    CHECK_THROWS_WITH_AS(derive_constants(bad_q, params, 1.0, 1.0),
                         doctest::Contains("q > 1/alpha"), std::domain_error);

    Hypotheses bad_mu = h;
    bad_mu.mu = 0.2;  // (m-1)(1-gamma) = 0.25
    CHECK_THROWS_WITH_AS(derive_constants(bad_mu, params, 1.0, 1.0),
                         doctest::Contains("(m-1)(1-gamma)"),
                         std::domain_error);

    Hypotheses bad_m = h;
    bad_m.m = 1;
    CHECK_THROWS_WITH_AS(derive_constants(bad_m, params, 1.0, 1.0),
                         doctest::Contains("m in N"), std::domain_error);

    // q -> (1/alpha)+ blows C1 up (lambda2 -> 0+)
    Hypotheses close = h;
    close.q = 2.0 + 1e-9;
    DerivedConstants c = derive_constants(close, params, 1.0, 1.0);
    CHECK(c.lambda2 < 1e-8);
    CHECK(c.C1 > 1e4);
    CHECK(c.C1 > 1e3 * derive_constants(h, params, 1.0, 1.0).C1);
}

TEST_CASE("check_h1 ratio and violation detection") {
    FracParams params(0.5, 0.5, 1.0);
    Hypotheses h = worked_hypotheses(0.02);
    const double a = 1.0;

    std::vector<std::pair<double, double>> samples;
    for (int i = 1; i <= 25; ++i) samples.emplace_back(a + 0.1 * i, 0.5 + 0.1 * i);

    // f identically zero: ratio 0
    H1Report zero = check_h1([](double, double) { return 0.0; }, h, params, a,
                             samples);
    CHECK(zero.satisfied);
    CHECK(zero.max_ratio == 0.0);

    // f equal to the bound: ratio 1 everywhere
    auto bound_fn = [&](double t, double x) {
        const double z = scaled_time(t, a, params.rho);
        return std::pow(z, h.mu) * std::exp(-h.sigma * params.rho * z) *
               h.phi.value(t) * std::pow(std::abs(x), h.m);
    };
    H1Report tight = check_h1(bound_fn, h, params, a, samples);
    CHECK(tight.satisfied);
    CHECK(tight.max_ratio == doctest::Approx(1.0).epsilon(1e-12));

    // 1% excess at one sample flags a violation
    const double t_bad = samples[7].first;
    H1Report bad = check_h1(
        [&](double t, double x) {
            return bound_fn(t, x) * (t == t_bad ? 1.01 : 1.0);
        },
        h, params, a, samples);
    CHECK_FALSE(bad.satisfied);
    CHECK(bad.violations.size() == 1);
    CHECK(bad.max_ratio == doctest::Approx(1.01).epsilon(1e-12));
}

TEST_CASE("check_h2 verdict logic") {
    FracParams params(0.75, 0.2, 1.0);
    const double a = 1.0, b = 1.0, t_trunc = 12.0;
    Hypotheses h;
    h.mu = 0.5;
    h.sigma = 1.0;
    h.m = 2;
    h.q = 1.6;  // > 1/alpha = 4/3; m*q*beta*(1-alpha) = 0.16 < 1

    // phi == 0 always passes
    h.phi = phi_const(0.0);
    CHECK(check_h2(h, params, a, b, t_trunc).verdict == Verdict::pass);

    // the lhs scales like eps^m: small eps passes, huge eps fails
    h.phi = phi_exp(1e-6);
    H2Report small = check_h2(h, params, a, b, t_trunc);
    CHECK(small.verdict == Verdict::pass);
    CHECK(small.lhs_upper < small.K);

    h.phi = phi_exp(1e6);
    H2Report big = check_h2(h, params, a, b, t_trunc);
    CHECK(big.verdict == Verdict::fail);
    CHECK(big.lhs_lower >= big.K);

    // bisect the threshold: the flip point is bracketed and consistent
    double lo = 1e-6, hi = 1e6;
    for (int i = 0; i < 60; ++i) {
        const double mid = std::sqrt(lo * hi);
        h.phi = phi_exp(mid);
        if (check_h2(h, params, a, b, t_trunc).verdict == Verdict::pass)
            lo = mid;
        else
            hi = mid;
    }
    CHECK(hi / lo <= 1.0 + 1e-9);
    h.phi = phi_exp(lo * 0.5);
    CHECK(check_h2(h, params, a, b, t_trunc).verdict == Verdict::pass);
    h.phi = phi_exp(hi * 2.0);
    CHECK(check_h2(h, params, a, b, t_trunc).verdict != Verdict::pass);

    // constant phi with beta > 0: non-decaying tail envelope -> fail
    h.phi = phi_const(0.3);
    H2Report flat = check_h2(h, params, a, b, t_trunc);
    CHECK(flat.verdict == Verdict::fail);

    // no envelope -> inconclusive
    PhiFunction naked;
    naked.value = [](double t) { return 1e-6 * std::exp(-t); };
    h.phi = naked;
    CHECK(check_h2(h, params, a, b, t_trunc).verdict ==
          Verdict::inconclusive);

    // m q beta (1-alpha) >= 1 with phi > 0 near a: weighted norm diverges
    FracParams heavy(0.5, 1.0, 1.0);
    Hypotheses hh;
    hh.mu = 1.5;  // > (m-1)(1-gamma) = 0.25
    hh.sigma = 1.0;
    hh.m = 2;
    hh.q = 2.5;  // m q beta (1-alpha) = 2.5 >= 1
    hh.phi = phi_exp(1e-3);
    H2Report div = check_h2(hh, heavy, a, b, t_trunc);
    CHECK(div.verdict == Verdict::fail);
    CHECK(div.reason.find("not integrable") != std::string::npos);
}

TEST_CASE("gronwall chain: unforced closing values") {
    FracParams params(0.5, 0.5, 1.0);
    Hypotheses h = worked_hypotheses(0.0);
    h.phi = phi_const(0.0);
    DerivedConstants c = derive_constants(h, params, 1.0, -1.5);
    BoundReport rep = gronwall_chain(h, c, params, 1.0, -1.5, 2.0);
    CHECK_FALSE(rep.validity_empty);
    CHECK(rep.certified);
    CHECK(rep.validity_horizon == 2.0);
    for (std::size_t i = 0; i < rep.t_s.size(); ++i) {
        CHECK(rep.l_s[i] == 0.0);
        CHECK(rep.k_s[i] == 0.0);
        CHECK(rep.w_s[i] == 0.0);
        CHECK(rep.y_s[i] == doctest::Approx(1.5).epsilon(1e-14));
    }
    CHECK(rep.final_C == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("gronwall chain: m = 2 closed form and monotonicity") {
    FracParams params(0.5, 0.5, 1.0);
    Hypotheses h = worked_hypotheses(0.005);
    DerivedConstants c = derive_constants(h, params, 1.0, 1.0);
    BoundReport rep = gronwall_chain(h, c, params, 1.0, 1.0, 2.5);

    for (std::size_t i = 1; i < rep.t_s.size(); ++i) {
        CHECK(rep.l_s[i] >= rep.l_s[i - 1]);
        CHECK(rep.k_s[i] >= rep.k_s[i - 1]);
    }
    for (std::size_t i = 0; i < rep.t_s.size(); ++i) {
        if (rep.l_s[i] == 0.0 || !(rep.condition_s[i] < 1.0)) continue;
        const double closed = rep.l_s[i] / (1.0 - rep.l_s[i] * rep.k_s[i]);
        CHECK(rep.w_s[i] == doctest::Approx(closed).epsilon(1e-12));
    }
    CHECK(rep.final_C >= 1.0);  // final_C >= |b|

    // validity horizon shrinks as the forcing grows
    double prev_horizon = rep.validity_horizon;
    for (double eps : {0.5, 5.0, 50.0}) {
        Hypotheses hb = worked_hypotheses(eps);
        DerivedConstants cb = derive_constants(hb, params, 1.0, 1.0);
        BoundReport rb = gronwall_chain(hb, cb, params, 1.0, 1.0, 2.5);
        CHECK(rb.validity_horizon <= prev_horizon + 1e-12);
        prev_horizon = rb.validity_horizon;
    }

    // w is finite exactly on the validity region and infinite beyond it
    Hypotheses strong = worked_hypotheses(5.0);
    DerivedConstants cs = derive_constants(strong, params, 1.0, 1.0);
    BoundReport rs = gronwall_chain(strong, cs, params, 1.0, 1.0, 2.5);
    REQUIRE_FALSE(rs.certified);  // condition fails before T
    REQUIRE_FALSE(rs.validity_empty);
    bool seen_infinite = false;
    for (std::size_t i = 0; i < rs.t_s.size(); ++i) {
        if (rs.t_s[i] <= rs.validity_horizon)
            CHECK(std::isfinite(rs.w_s[i]));
        if (std::isinf(rs.w_s[i])) seen_infinite = true;
    }
    CHECK(seen_infinite);
}

TEST_CASE("gronwall chain cross-checked by independent arithmetic") {
    FracParams params(0.5, 0.5, 1.0);
    const double eps = 0.01, a = 1.0, b = 1.0, T = 2.0;
    Hypotheses h = worked_hypotheses(eps);
    DerivedConstants c = derive_constants(h, params, a, b);
    BoundReport rep = gronwall_chain(h, c, params, a, b, T);
    REQUIRE_FALSE(rep.validity_empty);

    // independent route: closed-form integrals of (eps e^-t)^q and the
    // weighted variant via the oracle integrator, then the m = 2 algebra
    const double q = h.q, m = 2.0;
    const double front = std::pow(2.0, m * q - 1.0) * std::pow(c.C1hat, q);
    auto ref_at = [&](double t) {
        const double lq =
            front * std::pow(std::abs(b), m * q) * std::pow(eps, q) *
            (std::exp(-q * a) - std::exp(-q * t)) / q;
        const double kq =
            front * std::pow(eps, q) *
            oracle::adaptive_quadrature(
                [&](double s) {
                    return std::pow(s - a, m * q * 0.5 * 0.5) *
                           std::exp(-q * s);
                },
                a, t);
        return std::pair<double, double>(lq, kq);
    };
    for (double t : {1.3, 1.7, 2.0}) {
        auto [l_ref, k_ref] = ref_at(t);
        CHECK(rep.l_at(t) == doctest::Approx(l_ref).epsilon(5e-5));
        CHECK(rep.k_at(t) == doctest::Approx(k_ref).epsilon(5e-5));
        const double w_ref = l_ref / (1.0 - l_ref * k_ref);
        CHECK(rep.w_at(t) == doctest::Approx(w_ref).epsilon(1e-4));
        const double zb_ref =
            std::abs(b) * std::pow(t - a, params.beta * 0.5) +
            std::pow(w_ref, 1.0 / q);
        CHECK(rep.z_bound_at(t) == doctest::Approx(zb_ref).epsilon(1e-3));
        const double y_ref =
            std::abs(b) + std::pow(w_ref, 1.0 / q) *
                              std::pow(t - a, -params.beta * 0.5);
        CHECK(rep.y_at(t) == doctest::Approx(y_ref).epsilon(1e-3));
    }
}

TEST_CASE("pachpatte closed forms") {
    // w(x) = x, a = 1, b = 0, u0 = 1: classical Gronwall e^(t - t0)
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
        const double bound = pachpatte_bound(
            1.0, [](double) { return 1.0; }, [](double) { return 0.0; },
            Nonlinearity::linear(), 0.0, t);
        CHECK(bound == doctest::Approx(std::exp(t)).epsilon(1e-9));
    }

    // a = b = 0: the bound is the initial value
    CHECK(pachpatte_bound(2.5, [](double) { return 0.0; },
                          [](double) { return 0.0; },
                          Nonlinearity::power(3.0), 0.0,
                          5.0) == doctest::Approx(2.5).epsilon(1e-12));

    // w(x) = x^2, a = 1, b = 0, u0 = 1: 1/(1-t), infinite from t = 1
    for (double t : {0.25, 0.5, 0.9}) {
        const double bound = pachpatte_bound(
            1.0, [](double) { return 1.0; }, [](double) { return 0.0; },
            Nonlinearity::power(2.0), 0.0, t);
        CHECK(bound == doctest::Approx(1.0 / (1.0 - t)).epsilon(1e-9));
    }
    CHECK(std::isinf(pachpatte_bound(1.0, [](double) { return 1.0; },
                                     [](double) { return 0.0; },
                                     Nonlinearity::power(2.0), 0.0, 1.0)));
    CHECK(std::isinf(pachpatte_bound(1.0, [](double) { return 1.0; },
                                     [](double) { return 0.0; },
                                     Nonlinearity::power(2.0), 0.0, 1.7)));

    CHECK_THROWS_AS(pachpatte_bound(0.0, [](double) { return 1.0; },
                                    [](double) { return 0.0; },
                                    Nonlinearity::linear(), 0.0, 1.0),
                    std::domain_error);
}

TEST_CASE("pachpatte general nonlinearity matches the closed forms") {
    auto quadratic = Nonlinearity::general([](double x) { return x * x; });
    auto linearish = Nonlinearity::general([](double x) { return x; });
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        const double u0 = 0.2 + 2.0 * u01(rng);
        const double slope = 0.1 + u01(rng);
        const double feed = 0.2 * u01(rng);
        const double t = 0.1 + 0.6 * u01(rng);
        auto a_fn = [slope](double) { return slope; };
        auto b_fn = [feed](double) { return feed; };

        const double lin_closed =
            pachpatte_bound(u0, a_fn, b_fn, Nonlinearity::linear(), 0.0, t);
        const double lin_general =
            pachpatte_bound(u0, a_fn, b_fn, linearish, 0.0, t);
        CHECK(lin_general == doctest::Approx(lin_closed).epsilon(1e-8));

        const double pow_closed =
            pachpatte_bound(u0, a_fn, b_fn, Nonlinearity::power(2.0), 0.0, t);
        const double pow_general =
            pachpatte_bound(u0, a_fn, b_fn, quadratic, 0.0, t);
        if (std::isinf(pow_closed))
            CHECK(std::isinf(pow_general));
        else
            CHECK(pow_general == doctest::Approx(pow_closed).epsilon(1e-8));
    }
}

TEST_CASE("pachpatte bound dominates the equality system") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int mexp = 1 + static_cast<int>(u01(rng) * 3.0);  // 1..3
        const double u0 = 0.2 + 1.5 * u01(rng);
        const double a0 = 0.05 + 0.8 * u01(rng), a1 = 0.05 + 0.8 * u01(rng);
        const double b0 = 0.05 + 0.5 * u01(rng), b1 = 0.05 + 0.5 * u01(rng);
        const double t1 = 0.4 + 0.6 * u01(rng);
        auto a_fn = [&](double s) { return a0 + (a1 - a0) * s / t1; };
        auto b_fn = [&](double s) { return b0 + (b1 - b0) * s / t1; };
        Nonlinearity w = mexp == 1 ? Nonlinearity::linear()
                                   : Nonlinearity::power(mexp);
        auto traj = oracle::reference_ode(
            u0,
            [&](double s, double u) {
                return a_fn(s) * std::pow(u, mexp) + b_fn(s);
            },
            0.0, t1, 4000);
        if (traj.richardson_error > 1e-8) continue;  // near blow-up
        for (int i = 1; i <= 10; ++i) {
            const double t = t1 * i / 10.0;
            const double u = traj(t);
            if (u > 1e6) break;
            const double bound =
                pachpatte_bound(u0, a_fn, b_fn, w, 0.0, t);
            if (std::isinf(bound)) continue;
            CHECK(u <= bound * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("power sum inequality") {
    PowerSumReport eq = power_sum_check({2.0, 2.0, 2.0}, 3.0);
    CHECK(eq.holds);
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-13));

    PowerSumReport p1 = power_sum_check({0.3, 1.4, 2.2}, 1.0);
    CHECK(p1.holds);
    CHECK(p1.lhs == doctest::Approx(p1.rhs).epsilon(1e-14));

    PowerSumReport ex = power_sum_check({1.0, 2.0, 3.0}, 2.0);
    CHECK(ex.lhs == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(ex.rhs == doctest::Approx(42.0).epsilon(1e-14));
    CHECK(ex.holds);

    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t k = 1 + static_cast<std::size_t>(u01(rng) * 7.0);
        std::vector<double> vals(k);
        for (double& v : vals) v = 4.0 * u01(rng);
        CHECK(power_sum_check(vals, 1.0 + 4.0 * u01(rng)).holds);
    }
    CHECK_THROWS_AS(power_sum_check({1.0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(power_sum_check({-1.0}, 2.0), std::domain_error);
}

TEST_CASE("certificate for the unforced problem") {
    FracParams params(0.5, 0.5, 1.0);  // gamma = 0.75
    CauchyProblem prob(params, 1.0, 1.0, [](double, double) { return 0.0; });
    auto grid = ScaledGrid::make_graded(1.0, 2.0, 257, 1.0,
                                        default_grading(params.gamma));
    Solution sol = picard_solve(prob, grid, 1e-12, 5);
    REQUIRE(sol.converged);

    Hypotheses h = worked_hypotheses(0.0);
    h.phi = phi_const(0.0);
    DerivedConstants c = derive_constants(h, params, 1.0, 1.0);
    BoundReport rep = gronwall_chain(h, c, params, 1.0, 1.0, 2.0);
    StabilityCertificate cert = certify_stability(prob, h, sol, rep);
    CHECK(cert.attempted);
    CHECK(cert.passed);
    CHECK(cert.final_C == doctest::Approx(1.0).epsilon(1e-13));
    // weighted solution is 1/Gamma(0.75) ~ 0.816 <= 1 with visible margin
    double min_margin = 1e300;
    for (double m : cert.margin)
        if (!std::isnan(m)) min_margin = std::min(min_margin, m);
    CHECK(min_margin == doctest::Approx(1.0 - 0.8160489).epsilon(1e-5));

    // refusal paths: non-converged solution, invalid report
    Solution fake = sol;
    fake.converged = false;
    StabilityCertificate refuse1 = certify_stability(prob, h, fake, rep);
    CHECK_FALSE(refuse1.attempted);

    BoundReport empty = rep;
    empty.validity_empty = true;
    empty.validity_horizon = 1.0;
    StabilityCertificate refuse2 = certify_stability(prob, h, sol, empty);
    CHECK_FALSE(refuse2.attempted);
    CHECK(refuse2.note.find("refused") != std::string::npos);
}
