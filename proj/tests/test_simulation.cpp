#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "gbf/errors.hpp"
#include "gbf/kernels.hpp"
#include "gbf/plan_io.hpp"
#include "gbf/regression.hpp"
#include "gbf/simulation.hpp"

using namespace gbf::simulation;
using gbf::Dataset;
using gbf::ModelSpec;
using gbf::asymptotics::ScenarioConfig;
using gbf::asymptotics::TrueModel;
using gbf::linalg::Matrix;

namespace {

SimPlan smoke_plan() {
    SimPlan plan;
    plan.scenario = ScenarioConfig::make_s1(0.0, 0.0);
    plan.n_grid = {60, 120};
    plan.i_rule = {DimKind::fixed, 2, 1.0, 0.0, 0.0};
    plan.j_rule = {DimKind::fixed, 3, 1.0, 0.0, 0.0};
    plan.truth = TrueModel::mj;
    plan.beta_rule = {0.5, 0.5, 0};
    plan.sigma = 1.0;
    plan.replicates = 30;
    plan.seed = 7;
    return plan;
}

bool identical_results(const SimResult& a, const SimResult& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t k = 0; k < a.points.size(); ++k) {
        const SimPoint& x = a.points[k];
        const SimPoint& y = b.points[k];
        if (x.n != y.n || x.i_dim != y.i_dim || x.j_dim != y.j_dim) return false;
        if (x.frac_favor_truth != y.frac_favor_truth) return false;
        if (x.mean_log_bf != y.mean_log_bf || x.sd_log_bf != y.sd_log_bf) return false;
        if (x.mean_r2_ratio != y.mean_r2_ratio || x.se_r2_ratio != y.se_r2_ratio) {
            return false;
        }
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// make_design
// ---------------------------------------------------------------------------

TEST_CASE("make_design produces an exactly orthonormal scaled design") {
    const int n = 80;
    const Matrix x = make_design(n, 6, 99);
    for (std::size_t p = 0; p < x.cols(); ++p) {
        CHECK(std::abs(gbf::kernels::sum(x.col(p)) / n) <= 1e-10);
        for (std::size_t q = p; q < x.cols(); ++q) {
            const double g = gbf::kernels::dot(x.col(p), x.col(q)) / n;
            CHECK(std::abs(g - (p == q ? 1.0 : 0.0)) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(make_design(7, 6, 1), gbf::ValidationError);
}

TEST_CASE("unit coefficient on a disjoint column gives distance 1/sigma^2") {
    const Matrix x = make_design(50, 4, 123);
    const Dataset data = Dataset::from_centered(std::vector<double>(50, 0.0), x);
    const double d = gbf::projection_quadform(
        data, ModelSpec(std::vector<int>{1}), ModelSpec(std::vector<int>{2}),
        std::vector<double>{1.0}, 0.25);
    CHECK(d == doctest::Approx(1.0 / 0.25).epsilon(1e-10));
}

// ---------------------------------------------------------------------------
// generate_response
// ---------------------------------------------------------------------------

TEST_CASE("zero noise reproduces the signal exactly") {
    const Matrix x = make_design(40, 3, 5);
    const ModelSpec spec(std::vector<int>{1, 3});
    const std::vector<double> beta{0.5, -1.0};
    const auto y = generate_response(x, spec, beta, 0.0, 11);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(y[i] == 0.5 * x(i, 0) - 1.0 * x(i, 2));
    }
}

TEST_CASE("responses are bit-identical across runs with one seed") {
    const Matrix x = make_design(30, 2, 21);
    const ModelSpec spec(std::vector<int>{1});
    const std::vector<double> beta{1.0};
    const auto y1 = generate_response(x, spec, beta, 1.5, 42);
    const auto y2 = generate_response(x, spec, beta, 1.5, 42);
    CHECK(y1 == y2);
    const auto y3 = generate_response(x, spec, beta, 1.5, 43);
    CHECK(y1 != y3);
}

TEST_CASE("noise variance matches sigma^2 at large n") {
    const int n = 10000;
    const Matrix x = make_design(n, 1, 77);
    const ModelSpec spec(std::vector<int>{1});
    const std::vector<double> beta{2.0};
    const double sigma = 1.7;
    const auto y = generate_response(x, spec, beta, sigma, 1234);
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double noise = y[i] - 2.0 * x(i, 0);
        ss += noise * noise;
    }
    const double var = ss / n;
    CHECK(std::abs(var - sigma * sigma) / (sigma * sigma) < 0.05);
}

TEST_CASE("generate_response validates dimensions") {
    const Matrix x = make_design(30, 2, 3);
    CHECK_THROWS_AS(generate_response(x, ModelSpec(std::vector<int>{1, 2}),
                                      std::vector<double>{1.0}, 1.0, 0),
                    gbf::ValidationError);
}

// ---------------------------------------------------------------------------
// plan validation
// ---------------------------------------------------------------------------

TEST_CASE("plan validation catches bad grids and caps") {
    SimPlan plan = smoke_plan();
    plan.n_grid = {120, 60};
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);
    plan = smoke_plan();
    plan.n_grid = {60, 8000};
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);
    plan = smoke_plan();
    plan.replicates = 1000;
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);
    plan = smoke_plan();
    plan.beta_rule = {0.5, 0.4, 0};  // delta_null < delta_comp
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);
    plan = smoke_plan();
    plan.beta_rule = {0.5, 1.0, 0};  // needs a shared block
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);
    plan = smoke_plan();
    plan.n_grid = {6};  // i + j + 2 >= n
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);
}

TEST_CASE("scenario and dimension rules must agree") {
    SimPlan plan = smoke_plan();
    plan.scenario = ScenarioConfig::make_s2(0.0, 2.0);
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);  // j not ratio
    plan.j_rule = {DimKind::ratio, 0, 1.0, 0.0, 2.0};
    CHECK_NOTHROW(plan.validate());
    plan.scenario = ScenarioConfig::make_s3(2.0, 4.0);
    CHECK_THROWS_AS(plan.validate(), gbf::ValidationError);  // i not ratio
}

// ---------------------------------------------------------------------------
// run_plan
// ---------------------------------------------------------------------------

TEST_CASE("run_plan is deterministic and favors the truth on easy plans") {
    const SimPlan plan = smoke_plan();
    const SimResult r1 = run_plan(plan);
    const SimResult r2 = run_plan(plan);
    CHECK(identical_results(r1, r2));

    REQUIRE(r1.points.size() == 2);
    CHECK(r1.points[0].n == 60);
    CHECK(r1.points[1].j_dim == 3);
    CHECK(r1.points[1].frac_favor_truth >= 0.8);
    CHECK(r1.verdict.consistent);
    CHECK(r1.points[0].theory_consistent);
    CHECK(r1.lemma_limit == doctest::Approx(1.0 / 1.5));

    // a different seed moves the draws
    SimPlan reseeded = smoke_plan();
    reseeded.seed = 8;
    CHECK_FALSE(identical_results(r1, run_plan(reseeded)));
}

TEST_CASE("worker count does not change the result") {
    const SimPlan plan = smoke_plan();
    setenv("GBF_THREADS", "1", 1);
    const SimResult serial = run_plan(plan);
    setenv("GBF_THREADS", "3", 1);
    const SimResult threaded = run_plan(plan);
    unsetenv("GBF_THREADS");
    CHECK(identical_results(serial, threaded));
}

TEST_CASE("generated designs hit the plan's target distances") {
    // S2-style point: shared block carries delta_null - delta_comp.
    const int n = 250;
    const int i_dim = 16, j_dim = 125, shared = 4;
    const Matrix x = make_design(n, i_dim + j_dim - shared, 31337);
    const Dataset data = Dataset::from_centered(std::vector<double>(n, 0.0), x);

    std::vector<int> cols_i, cols_j;
    for (int c = 1; c <= shared; ++c) {
        cols_i.push_back(c);
        cols_j.push_back(c);
    }
    for (int c = shared + 1; c <= i_dim; ++c) cols_i.push_back(c);
    for (int c = i_dim + 1; c <= i_dim + j_dim - shared; ++c) cols_j.push_back(c);
    const ModelSpec spec_i(cols_i), spec_j(cols_j);

    const double delta_null = 20.0, delta_comp = 2.0;
    std::vector<double> beta(static_cast<std::size_t>(j_dim));
    for (int k = 0; k < shared; ++k) {
        beta[static_cast<std::size_t>(k)] = std::sqrt((delta_null - delta_comp) / shared);
    }
    for (int k = shared; k < j_dim; ++k) {
        beta[static_cast<std::size_t>(k)] = std::sqrt(delta_comp / (j_dim - shared));
    }

    const double d_j0 =
        gbf::projection_quadform(data, spec_j, ModelSpec::null_model(), beta, 1.0);
    const double d_ji = gbf::projection_quadform(data, spec_j, spec_i, beta, 1.0);
    CHECK(std::abs(d_j0 - delta_null) <= 1e-9);
    CHECK(std::abs(d_ji - delta_comp) <= 1e-9);
    // comfortably inside the spec'd 10/sqrt(n) targeting band
    CHECK(std::abs(d_ji - delta_comp) <= 10.0 / std::sqrt(n));
}

TEST_CASE("empirical_r2_ratio rejects degenerate fits") {
    gbf::FitSummary ok{0.5, 0.5, 1.0, 2, ModelSpec(std::vector<int>{1, 2})};
    gbf::FitSummary bad{1.0, 0.0, 1.0, 2, ModelSpec(std::vector<int>{1, 2})};
    CHECK(empirical_r2_ratio(ok, ok) == doctest::Approx(1.0));
    CHECK_THROWS_AS(empirical_r2_ratio(ok, bad), gbf::ValidationError);
}

TEST_CASE("fixed-dimension consistency trend along the n grid") {
    const SimPlan plan = gbf::io::load_plan_file(
        std::string(GBF_PLAN_DIR) + "/corollary1_truth_mj.json");
    const SimResult result = run_plan(plan);
    double prev_frac = -1.0;
    double prev_mean = -1e300;
    for (const SimPoint& pt : result.points) {
        CHECK(pt.frac_favor_truth >= prev_frac);
        CHECK(pt.mean_log_bf > prev_mean);
        prev_frac = pt.frac_favor_truth;
        prev_mean = pt.mean_log_bf;
    }
    CHECK(result.points.back().frac_favor_truth >= 0.95);
}

// ---------------------------------------------------------------------------
// plan files
// ---------------------------------------------------------------------------

TEST_CASE("plan JSON round-trips through the parser") {
    const SimPlan plan = smoke_plan();
    const auto j = gbf::io::plan_to_json(plan);
    const SimPlan back = gbf::io::plan_from_json(j);
    CHECK(gbf::io::plan_to_json(back) == j);
}

TEST_CASE("plan parse errors carry JSON-pointer paths") {
    auto j = gbf::io::plan_to_json(smoke_plan());
    j.erase("n_grid");
    CHECK_THROWS_WITH_AS(gbf::io::plan_from_json(j),
                         doctest::Contains("/n_grid"), gbf::ValidationError);
    j = gbf::io::plan_to_json(smoke_plan());
    j["beta_rule"].erase("delta_null");
    CHECK_THROWS_WITH_AS(gbf::io::plan_from_json(j),
                         doctest::Contains("/beta_rule"), gbf::ValidationError);
    j = gbf::io::plan_to_json(smoke_plan());
    j["truth"] = "mx";
    CHECK_THROWS_WITH_AS(gbf::io::plan_from_json(j), doctest::Contains("/truth"),
                         gbf::ValidationError);
}

TEST_CASE("result serialization carries the documented columns") {
    SimPlan plan = smoke_plan();
    plan.n_grid = {60};
    plan.replicates = 5;
    const SimResult result = run_plan(plan);
    const std::string csv = gbf::io::result_to_csv(result);
    CHECK(csv.find("n,i,j,frac_favor_truth,mean_log_bf,sd_log_bf,theory_consistent") ==
          0);
    const auto j = gbf::io::result_to_json(result);
    CHECK(j["points"].size() == 1);
    CHECK(j["points"][0]["n"] == 60);
    CHECK(j["plan"]["seed"] == 7);

    // CSV carries the same textual values as JSON
    const std::string mean_text =
        gbf::io::format_double(j["points"][0]["mean_log_bf"].get<double>());
    CHECK(csv.find(mean_text) != std::string::npos);
}
