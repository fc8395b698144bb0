#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gbf/errors.hpp"
#include "gbf/quadrature.hpp"
#include "gbf/special.hpp"

using gbf::special::log_gamma;
using gbf::special::stirling_log_gamma;

TEST_CASE("log_gamma matches 50-digit reference values") {
    // references computed with 50-digit arithmetic
    const struct {
        double x, expected;
    } cases[] = {
        {0.1, 2.25271265173420595987},
        {0.5, 0.5723649429247000870717},
        {1.5, -0.1207822376352452223455},
        {4.5, 2.453736570842442220504},
        {10.0, 12.80182748008146961121},
        {99.5, 356.8353828236130744693},
        {1000.0, 5905.220423209181211826},
        {9999.5, 82095.11236375763922816},
    };
    for (const auto& c : cases) {
        CHECK(log_gamma(c.x) == doctest::Approx(c.expected).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma agrees with the C library across (0, 1e4]") {
    for (double x = 0.05; x <= 1e4; x *= 1.37) {
        const double mine = log_gamma(x);
        const double libm = std::lgamma(x);
        CHECK(std::abs(mine - libm) <= 1e-13 * (1.0 + std::abs(libm)));
    }
}

TEST_CASE("log_gamma satisfies recurrence and reflection identities") {
    for (double x : {0.07, 0.3, 0.9, 2.5, 17.0, 123.4, 4000.0}) {
        CHECK(log_gamma(x + 1.0) ==
              doctest::Approx(log_gamma(x) + std::log(x)).epsilon(1e-13));
    }
    for (double x : {0.1, 0.25, 0.4}) {
        const double lhs = log_gamma(x) + log_gamma(1.0 - x);
        const double rhs = std::log(M_PI / std::sin(M_PI * x));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), gbf::ValidationError);
    CHECK_THROWS_AS(log_gamma(-1.5), gbf::ValidationError);
}

TEST_CASE("large-x gamma approximation converges at the documented rate") {
    // gamma1 = 1, gamma2 = 0: approximation of log Gamma(x)
    double previous = 1.0;
    for (double x : {10.0, 100.0, 1000.0}) {
        const double approx = stirling_log_gamma(1.0, 0.0, x);
        const double exact = log_gamma(x);
        const double rel = std::abs(approx - exact) / std::abs(exact);
        CHECK(rel < 1e-2);
        CHECK(rel < previous);
        previous = rel;
    }
    // the ratio of the two sides approaches one
    CHECK(std::exp(stirling_log_gamma(1.0, 0.0, 1000.0) - log_gamma(1000.0)) ==
          doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("half-integer shape used by the large-n analysis") {
    // gamma1 = 1/2, gamma2 = -1/2, x = 200 approximates log Gamma(99.5)
    const double approx = stirling_log_gamma(0.5, -0.5, 200.0);
    const double exact = log_gamma(99.5);
    CHECK(std::isfinite(approx));
    CHECK(std::abs(approx - exact) / std::abs(exact) < 0.01);
}

TEST_CASE("stirling_log_gamma domain checks") {
    CHECK_THROWS_AS(stirling_log_gamma(-1.0, 0.0, 10.0), gbf::ValidationError);
    CHECK_THROWS_AS(stirling_log_gamma(1.0, 0.0, -10.0), gbf::ValidationError);
    CHECK_THROWS_AS(stirling_log_gamma(0.5, -10.0, 2.0), gbf::ValidationError);
}

TEST_CASE("adaptive quadrature fundamentals") {
    // smooth integral with a 50-digit reference
    const auto gaussian = [](double u) { return std::exp(-u * u); };
    const auto r = gbf::quad::integrate(gaussian, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(0.7468241328124270254).epsilon(1e-12));

    // sharply peaked integrand still converges
    const auto peaked = [](double u) {
        return 1.0 / (1e-6 + (u - 0.37) * (u - 0.37));
    };
    const auto rp = gbf::quad::integrate(peaked, 0.0, 1.0, 1e-6);
    CHECK(rp.value == doctest::Approx(3137.3026572135632).epsilon(1e-9));

    // non-convergence is an error, never a silent return
    CHECK_THROWS_AS(gbf::quad::integrate(peaked, 0.0, 1.0, 1e-8, 2),
                    gbf::QuadratureError);
    const auto nonfinite = [](double u) { return 1.0 / u; };
    CHECK_THROWS_AS(gbf::quad::integrate(nonfinite, -1.0, 1.0, 1e-10),
                    gbf::QuadratureError);
}
