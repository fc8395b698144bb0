#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gbf/anova.hpp"
#include "gbf/asymptotics.hpp"
#include "gbf/errors.hpp"
#include "gbf/kernels.hpp"
#include "gbf/rng.hpp"

using namespace gbf::anova;
using gbf::Dataset;
using gbf::ModelSpec;
using gbf::linalg::Matrix;

namespace {

// y from cell effects plus noise, in the design's row order.
std::vector<double> simulate_response(const TwoWayDesign& d, double effect_a,
                                      double effect_b, double effect_ab,
                                      double sigma, std::uint64_t seed) {
    const Matrix x = build_design(d);
    const int pa = d.p - 1;
    const int qb = d.q - 1;
    gbf::rng::NormalSampler noise(seed);
    std::vector<double> y(x.rows());
    for (std::size_t row = 0; row < x.rows(); ++row) {
        double v = 0.0;
        std::size_t col = 0;
        for (int k = 0; k < pa; ++k) v += effect_a * x(row, col++);
        for (int l = 0; l < qb; ++l) v += effect_b * x(row, col++);
        for (int k = 0; k < pa * qb; ++k) v += effect_ab * x(row, col++);
        y[row] = v + sigma * noise();
    }
    return y;
}

}  // namespace

TEST_CASE("smallest design: signs forced by sum-to-zero contrasts") {
    const TwoWayDesign d{2, 2, 1};
    const Matrix x = build_design(d);
    REQUIRE(x.rows() == 4);
    REQUIRE(x.cols() == 3);
    // rows: (a0,b0), (a0,b1), (a1,b0), (a1,b1)
    const double expected[4][3] = {
        {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 3; ++c) CHECK(x(r, c) == expected[r][c]);
    }
    for (std::size_t c = 0; c < 3; ++c) CHECK(gbf::kernels::sum(x.col(c)) == 0.0);
}

TEST_CASE("every column sums to zero exactly under balance") {
    const TwoWayDesign d{3, 4, 2};
    const Matrix x = build_design(d);
    for (std::size_t c = 0; c < x.cols(); ++c) {
        CHECK(gbf::kernels::sum(x.col(c)) == 0.0);
    }
}

TEST_CASE("submodel blocks and dimensions") {
    const TwoWayDesign d{3, 4, 2};
    CHECK(submodel(d, Submodel::m0).spec.dim() == 0);
    CHECK(submodel(d, Submodel::m1).spec.dim() == 2);   // p - 1
    CHECK(submodel(d, Submodel::m2).spec.dim() == 3);   // q - 1
    CHECK(submodel(d, Submodel::m3).spec.dim() == 5);   // p + q - 2
    CHECK(submodel(d, Submodel::m4).spec.dim() == 11);  // pq - 1
    CHECK(submodel(d, Submodel::m4).spec.contains(submodel(d, Submodel::m3).spec));
    CHECK(submodel(d, Submodel::m3).spec.contains(submodel(d, Submodel::m1).spec));
}

TEST_CASE("additive block has full rank p + q - 2") {
    const TwoWayDesign d{3, 4, 2};
    const Matrix x = build_design(d);
    const auto m3 = submodel(d, Submodel::m3).spec;
    Matrix block(x.rows(), static_cast<std::size_t>(m3.dim()));
    for (int k = 0; k < m3.dim(); ++k) {
        auto src = x.col(static_cast<std::size_t>(m3.columns()[k] - 1));
        std::copy(src.begin(), src.end(), block.col(static_cast<std::size_t>(k)).begin());
    }
    const auto sv = gbf::linalg::singular_values(std::move(block));
    CHECK(sv.size() == 5);
    CHECK(sv.back() > 1e-10 * sv.front());
}

TEST_CASE("A and B blocks are orthogonal under balance") {
    const TwoWayDesign d{3, 3, 5};
    const Matrix x = build_design(d);
    for (int k = 0; k < d.p - 1; ++k) {
        for (int l = 0; l < d.q - 1; ++l) {
            const double ip = gbf::kernels::dot(
                x.col(static_cast<std::size_t>(k)),
                x.col(static_cast<std::size_t>(d.p - 1 + l)));
            CHECK(std::abs(ip) <= 1e-10);
        }
    }
}

TEST_CASE("design validation") {
    CHECK_THROWS_AS(build_design(TwoWayDesign{1, 3, 2}), gbf::ValidationError);
    CHECK_THROWS_AS(build_design(TwoWayDesign{3, 1, 2}), gbf::ValidationError);
    CHECK_THROWS_AS(build_design(TwoWayDesign{2, 2, 0}), gbf::ValidationError);
}

TEST_CASE("pairwise Bayes factors on a two-way dataset") {
    const TwoWayDesign d{3, 3, 4};
    const Dataset data = Dataset::from_centered(
        simulate_response(d, 0.8, 0.0, 0.0, 1.0, 555), build_design(d));
    const gbf::HyperParams hp;

    // a submodel against itself is even odds
    const auto m1 = submodel(d, Submodel::m1);
    CHECK(anova_bf(data, m1, m1, hp).log_bf == 0.0);

    // the dedicated entry point agrees with the generic pairwise path
    const auto m3 = submodel(d, Submodel::m3);
    const auto via_anova = anova_bf(data, m3, m1, hp);
    const auto via_generic = gbf::log_bf_pair(
        data.n(), gbf::fit(data, m3.spec), gbf::fit(data, m1.spec), hp);
    CHECK(via_anova.log_bf == doctest::Approx(via_generic.log_bf).epsilon(1e-12));
}

TEST_CASE("near-exact factor-A fit drives the fit term") {
    const TwoWayDesign d{3, 3, 4};
    const Dataset data = Dataset::from_centered(
        simulate_response(d, 2.0, 0.0, 0.0, 1e-7, 777), build_design(d));
    const auto r = anova_bf(data, submodel(d, Submodel::m1),
                            submodel(d, Submodel::m0), gbf::HyperParams{});
    CHECK(r.fit_term > 100.0);
    CHECK(r.log_bf > 100.0);
}

TEST_CASE("R^2 respects the submodel nesting chains") {
    const TwoWayDesign d{3, 4, 3};
    const Dataset data = Dataset::from_centered(
        simulate_response(d, 0.5, -0.7, 0.3, 1.0, 999), build_design(d));
    auto r2 = [&](Submodel tag) {
        return gbf::fit(data, submodel(d, tag).spec).r_squared;
    };
    CHECK(r2(Submodel::m0) <= r2(Submodel::m1) + 1e-12);
    CHECK(r2(Submodel::m1) <= r2(Submodel::m3) + 1e-12);
    CHECK(r2(Submodel::m3) <= r2(Submodel::m4) + 1e-12);
    CHECK(r2(Submodel::m0) <= r2(Submodel::m2) + 1e-12);
    CHECK(r2(Submodel::m2) <= r2(Submodel::m3) + 1e-12);
}

TEST_CASE("pseudo-distance from the additive block to itself vanishes") {
    const TwoWayDesign d{3, 3, 4};
    const Dataset data = Dataset::from_centered(
        simulate_response(d, 0.5, 0.5, 0.0, 1.0, 1234), build_design(d));
    const auto m3 = submodel(d, Submodel::m3).spec;
    const std::vector<double> beta(static_cast<std::size_t>(m3.dim()), 0.4);
    CHECK(gbf::projection_quadform(data, m3, m3, beta, 1.0) <= 1e-12);
}

// ---------------------------------------------------------------------------
// h_root and the consistency boundary
// ---------------------------------------------------------------------------

TEST_CASE("h_root matches the quadratic closed form at r = 2") {
    // u^2/2 - u - c = 0 has u = 1 + sqrt(1 + 2c), so x = sqrt(1 + 2c)
    CHECK(h_root(2.0, 4.0) == doctest::Approx(3.0).epsilon(1e-10));
    for (double c : {0.1, 0.5, 1.0, 10.0, 250.0}) {
        CHECK(h_root(2.0, c) ==
              doctest::Approx(std::sqrt(1.0 + 2.0 * c)).epsilon(1e-11));
    }
    // c -> 0+: x -> 1
    CHECK(h_root(2.0, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("h_root residuals vanish on the test grid") {
    for (double r : {1.5, 2.0, 3.0, 10.0}) {
        for (double c : {0.1, 1.0, 10.0}) {
            const double x = h_root(r, c);
            const double residual =
                std::pow(x + 1.0, r) / r - (x + 1.0) - c;
            CHECK(std::abs(residual) <= 1e-10);
        }
    }
}

TEST_CASE("h_root is monotone in both arguments") {
    for (double r : {1.5, 2.0, 3.0, 10.0}) {
        CHECK(h_root(r, 0.5) < h_root(r, 1.0));
        CHECK(h_root(r, 1.0) < h_root(r, 5.0));
    }
    for (double c : {0.1, 1.0, 10.0}) {
        CHECK(h_root(1.5, c) > h_root(2.0, c));
        CHECK(h_root(2.0, c) > h_root(3.0, c));
        CHECK(h_root(3.0, c) > h_root(10.0, c));
    }
}

TEST_CASE("h_root domain") {
    CHECK_THROWS_AS(h_root(1.0, 1.0), gbf::ValidationError);
    CHECK_THROWS_AS(h_root(2.0, 0.0), gbf::ValidationError);
}

TEST_CASE("full-model boundary equals h_root and satisfies the fixed point") {
    CHECK(m4_consistency_boundary(2.0, 3.0, 1.0) == doctest::Approx(3.0).epsilon(1e-10));
    for (double r : {1.5, 2.0, 3.0, 10.0}) {
        for (double c : {0.1, 1.0, 10.0}) {
            const double x = m4_consistency_boundary(r, 0.6 * c, 0.4 * c);
            CHECK(std::abs(gbf::asymptotics::kappa(r, c + x) - x) <= 1e-8);
        }
    }
    CHECK_THROWS_AS(m4_consistency_boundary(2.0, 0.0, 0.0), gbf::ValidationError);
}
