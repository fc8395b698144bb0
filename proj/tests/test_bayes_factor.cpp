#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gbf/bayes_factor.hpp"
#include "gbf/errors.hpp"
#include "gbf/quadrature.hpp"

using gbf::BayesFactorResult;
using gbf::FitSummary;
using gbf::HyperParams;
using gbf::ModelSpec;

namespace {

FitSummary synthetic(double r2, int j) {
    std::vector<int> cols(static_cast<std::size_t>(j));
    for (int k = 0; k < j; ++k) cols[static_cast<std::size_t>(k)] = k + 1;
    return {r2, 1.0 - r2, 1.0, j, ModelSpec(cols)};
}

}  // namespace

TEST_CASE("null vs null is even odds") {
    const BayesFactorResult r = log_bf_vs_null(20, synthetic(0.0, 0), HyperParams{});
    CHECK(r.log_bf == 0.0);
    CHECK(r.gamma_term == 0.0);
    CHECK(r.fit_term == 0.0);
}

TEST_CASE("closed form at n=20, j=2, a=-1/2, R^2=1/2") {
    // collapses to log(2^8 / 17); 50-digit value of -log 17 + 8 log 2
    const BayesFactorResult r = log_bf_vs_null(20, synthetic(0.5, 2), HyperParams{-0.5});
    CHECK(r.log_bf == doctest::Approx(2.711964100423346395).epsilon(1e-12));
    CHECK(r.log_bf == doctest::Approx(r.gamma_term + r.fit_term).epsilon(1e-12));
    CHECK(r.fit_term == doctest::Approx(8.0 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("zero fit gain is a pure parsimony penalty") {
    const HyperParams hp{-0.5};
    for (int n : {20, 50, 100, 200}) {
        for (int j : {1, 2, 3, 4, 5}) {
            const BayesFactorResult r = log_bf_vs_null(n, synthetic(0.0, j), hp);
            CHECK(r.fit_term == 0.0);
            CHECK(r.log_bf < 0.0);
        }
    }
}

TEST_CASE("hyperparameter feasibility and degenerate fits are rejected") {
    CHECK_THROWS_AS(log_bf_vs_null(8, synthetic(0.3, 4), HyperParams{0.5}),
                    gbf::ValidationError);  // n <= j + 2a + 3
    CHECK_THROWS_AS(log_bf_vs_null(20, synthetic(1.0, 2), HyperParams{}),
                    gbf::ValidationError);
    CHECK_THROWS_AS(log_bf_vs_null(20, synthetic(-0.1, 2), HyperParams{}),
                    gbf::ValidationError);
    CHECK_THROWS_AS(log_bf_vs_null(20, synthetic(0.3, 2), HyperParams{-1.5}),
                    gbf::ValidationError);
}

TEST_CASE("pairwise factor is the difference of null-based factors") {
    const HyperParams hp{-0.5};
    const FitSummary fj = synthetic(0.6, 3);
    const FitSummary fi = synthetic(0.4, 2);
    const BayesFactorResult pair = log_bf_pair(50, fj, fi, hp);
    const double expected =
        log_bf_vs_null(50, fj, hp).log_bf - log_bf_vs_null(50, fi, hp).log_bf;
    CHECK(pair.log_bf == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pair.log_bf == doctest::Approx(pair.gamma_term + pair.fit_term).epsilon(1e-12));

    // same model on both sides and exact antisymmetry
    CHECK(log_bf_pair(50, fj, fj, hp).log_bf == 0.0);
    CHECK(log_bf_pair(50, fi, fj, hp).log_bf == -pair.log_bf);
}

TEST_CASE("pairwise factors chain consistently") {
    const HyperParams hp{0.0};
    const FitSummary a = synthetic(0.55, 4);
    const FitSummary b = synthetic(0.35, 2);
    const FitSummary c = synthetic(0.15, 1);
    const double ab = log_bf_pair(60, a, b, hp).log_bf;
    const double bc = log_bf_pair(60, b, c, hp).log_bf;
    const double ac = log_bf_pair(60, a, c, hp).log_bf;
    CHECK(ab + bc == doctest::Approx(ac).epsilon(1e-10));
}

TEST_CASE("log Bayes factor is strictly increasing in R^2") {
    const HyperParams hp{-0.5};
    for (int n : {30, 100}) {
        double prev = -1e300;
        for (double r2 = 0.0; r2 < 0.95; r2 += 0.05) {
            const double cur = log_bf_vs_null(n, synthetic(r2, 3), hp).log_bf;
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("Schwarz approximation basics") {
    CHECK(gbf::log_bf_schwarz(100, synthetic(0.0, 0)) == 0.0);
    // -log 100 + 50 log 2, 50-digit value
    CHECK(gbf::log_bf_schwarz(100, synthetic(0.5, 2)) ==
          doctest::Approx(30.05218884200917410).epsilon(1e-13));
    CHECK_THROWS_AS(gbf::log_bf_schwarz(100, synthetic(1.0, 2)), gbf::ValidationError);
}

TEST_CASE("closed form approaches the Schwarz approximation as n grows") {
    const HyperParams hp{-0.5};
    const FitSummary f = synthetic(0.3, 3);
    double prev_gap = 1e300;
    for (int n : {100, 1000, 10000}) {
        const double exact = log_bf_vs_null(n, f, hp).log_bf;
        const double schwarz = gbf::log_bf_schwarz(n, f);
        const double gap = std::abs(exact - schwarz) / std::abs(schwarz);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.02);
}

TEST_CASE("conditional factor at fixed g") {
    // g -> 0 collapses to the null
    CHECK(gbf::log_bf_given_g(20, synthetic(0.5, 2), 1e-300) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // R^2 = 0: -(j/2) log(1+g)
    CHECK(gbf::log_bf_given_g(30, synthetic(0.0, 2), 3.0) ==
          doctest::Approx(-std::log(4.0)).epsilon(1e-13));
    // direct substitution: 8.5 log 2 - 9.5 log 1.5 (50-digit value)
    CHECK(gbf::log_bf_given_g(20, synthetic(0.5, 2), 1.0) ==
          doctest::Approx(2.039832507731973501).epsilon(1e-13));
    CHECK_THROWS_AS(gbf::log_bf_given_g(20, synthetic(0.5, 2), 0.0),
                    gbf::ValidationError);
}

TEST_CASE("u-substitution matches direct g-space integration") {
    // Re-derivation check for the oracle's change of variable: integrate the
    // prior-weighted conditional factor over g directly on a long truncated
    // domain and compare.
    const int n = 24;
    const FitSummary f = synthetic(0.4, 2);
    const HyperParams hp{-0.5};
    const double b = hp.b(n, f.dim);
    const double log_norm = std::lgamma(b + 1.0) + std::lgamma(hp.a + 1.0) -
                            std::lgamma(hp.a + b + 2.0);
    const auto g_space = [&](double g) {
        if (g <= 0.0) return 0.0;
        const double log_prior =
            b * std::log(g) - (hp.a + b + 2.0) * std::log1p(g) - log_norm;
        return std::exp(gbf::log_bf_given_g(n, f, g) + log_prior);
    };
    const double direct =
        std::log(gbf::quad::integrate(g_space, 0.0, 1e7, 1e-10, 16384).value);
    const double oracle = gbf::log_bf_oracle_quadrature(n, f, hp);
    CHECK(oracle == doctest::Approx(direct).epsilon(1e-5));
}

TEST_CASE("quadrature oracle validates the closed form on the full grid") {
    for (int n : {20, 50, 100}) {
        for (int j : {1, 2, 3, 4, 5}) {
            for (double a : {-0.5, 0.0, 1.0}) {
                for (double r2 : {0.0, 0.3, 0.9}) {
                    const HyperParams hp{a};
                    const FitSummary f = synthetic(r2, j);
                    const double closed = log_bf_vs_null(n, f, hp).log_bf;
                    const double oracle = gbf::log_bf_oracle_quadrature(n, f, hp);
                    CHECK(std::abs(closed - oracle) <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("oracle trivia") {
    CHECK(gbf::log_bf_oracle_quadrature(40, synthetic(0.0, 0), HyperParams{}) == 0.0);
    // zero-fit point reduces to the gamma-ratio-only value
    const double closed =
        log_bf_vs_null(30, synthetic(0.0, 3), HyperParams{-0.5}).log_bf;
    const double oracle =
        gbf::log_bf_oracle_quadrature(30, synthetic(0.0, 3), HyperParams{-0.5});
    CHECK(std::abs(closed - oracle) <= 1e-6);
}
