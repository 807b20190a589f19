#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "frac/oracles.hpp"

using namespace frac::oracle;

TEST_CASE("adaptive quadrature on smooth and singular integrands") {
    CHECK(adaptive_quadrature([](double) { return 1.0; }, 0.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // int_0^1 x^(-1/2) dx = 2, declared singularity at the left endpoint
    EndpointExponents lo_sing{-0.5, 0.0};
    CHECK(adaptive_quadrature(
              [](double, double d_lo, double) { return 1.0 / std::sqrt(d_lo); },
              0.0, 1.0, {}, lo_sing) ==
          doctest::Approx(2.0).epsilon(1e-10));

    // Beta(1/2, 1/2) = pi
    EndpointExponents both{-0.5, -0.5};
    CHECK(adaptive_quadrature(
              [](double, double d_lo, double d_hi) {
                  return 1.0 / std::sqrt(d_lo * d_hi);
              },
              0.0, 1.0, {}, both) ==
          doctest::Approx(3.14159265358979).epsilon(1e-10));
}

TEST_CASE("lanczos gamma agrees with libm tgamma to 1e-12 on (0, 30)") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.02, 30.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        const double ours = lanczos_gamma(x);
        const double ref = std::tgamma(x);
        CHECK(std::abs(ours - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("power rule coefficient spot values") {
    CHECK(power_rule_coeff(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(power_rule_coeff(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    // 1/Gamma(1.5) = 2/sqrt(pi)
    CHECK(power_rule_coeff(0.0, 0.5) ==
          doctest::Approx(2.0 / std::sqrt(3.14159265358979324)).epsilon(1e-13));
    CHECK(power_rule_coeff(0.0, 0.5) == doctest::Approx(1.1283792).epsilon(1e-7));
    CHECK_THROWS_AS(power_rule_coeff(-1.0, 0.5), std::domain_error);
}

TEST_CASE("quadrature reproduces the power rule across random (sigma, alpha)") {
    // I^alpha z^sigma at z = 1 equals the Beta integral
    // (1/Gamma(alpha)) int_0^1 (1-s)^(alpha-1) s^sigma ds.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> us(-0.4, 2.5), ua(0.15, 1.8);
    for (int i = 0; i < 100; ++i) {
        const double sigma = us(rng);
        const double alpha = ua(rng);
        EndpointExponents ends{sigma, alpha - 1.0};
        const double quad =
            adaptive_quadrature(
                [&](double, double d_lo, double d_hi) {
                    return std::pow(d_hi, alpha - 1.0) *
                           std::pow(d_lo, sigma);
                },
                0.0, 1.0, {}, ends) /
            lanczos_gamma(alpha);
        const double exact = power_rule_coeff(sigma, alpha);
        CHECK(std::abs(quad - exact) <= 1e-9 * std::abs(exact));
    }
}

TEST_CASE("mittag-leffler spot values") {
    // k = 0 term only
    CHECK(mittag_leffler(0.5, 0.75, 0.0) ==
          doctest::Approx(1.0 / std::tgamma(0.75)).epsilon(1e-13));
    // E_{1,1}(x) = e^x
    for (double x : {-10.0, -1.0, 0.3, 1.0, 5.0, 10.0})
        CHECK(mittag_leffler(1.0, 1.0, x) ==
              doctest::Approx(std::exp(x)).epsilon(1e-10));
    // E_{1/2,1}(1) = e * erfc(-1) = 5.00898008...
    CHECK(mittag_leffler(0.5, 1.0, 1.0) ==
          doctest::Approx(std::exp(1.0) * std::erfc(-1.0)).epsilon(1e-10));
    CHECK(mittag_leffler(0.5, 1.0, 1.0) ==
          doctest::Approx(5.0089801).epsilon(1e-7));
    CHECK_THROWS_AS(mittag_leffler(0.5, 1.0, 51.0), std::domain_error);
}

TEST_CASE("reference ODE integrator") {
    auto flat = reference_ode(1.0, [](double, double) { return 0.0; }, 0.0,
                              1.0, 64);
    CHECK(flat(0.7) == doctest::Approx(1.0).epsilon(1e-15));

    auto expo = reference_ode(1.0, [](double, double u) { return u; }, 0.0,
                              1.0, 2000);
    CHECK(expo.richardson_error <= 1e-8);
    CHECK(expo(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

    auto riccati = reference_ode(1.0, [](double, double u) { return u * u; },
                                 0.0, 0.5, 4000);
    CHECK(riccati(0.5) == doctest::Approx(2.0).epsilon(1e-8));

    CHECK_THROWS_AS(
        reference_ode(1.0, [](double, double) { return 0.0; }, 0.0, 1.0, 5),
        std::domain_error);
}
