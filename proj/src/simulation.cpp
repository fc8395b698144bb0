#include "gbf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "gbf/bayes_factor.hpp"
#include "gbf/errors.hpp"
#include "gbf/kernels.hpp"
#include "gbf/rng.hpp"

namespace gbf::simulation {

namespace ker = gbf::kernels;
namespace asy = gbf::asymptotics;

// ---------------------------------------------------------------------------
// Plan validation
// ---------------------------------------------------------------------------

int DimRule::dim_for(int n) const {
    switch (kind) {
        case DimKind::fixed:
            return value;
        case DimKind::power:
            return static_cast<int>(std::ceil(coef * std::pow(n, exponent)));
        case DimKind::ratio:
            return static_cast<int>(std::ceil(n / ratio));
    }
    throw ValidationError("unknown dimension rule");
}

void DimRule::validate() const {
    switch (kind) {
        case DimKind::fixed:
            if (value < 0) throw ValidationError("fixed dimension must be >= 0");
            return;
        case DimKind::power:
            if (!(coef > 0.0) || exponent < 0.0 || exponent >= 1.0) {
                throw ValidationError("power dimension rule needs coef > 0 and "
                                      "0 <= exponent < 1");
            }
            return;
        case DimKind::ratio:
            if (!(ratio > 1.0)) {
                throw ValidationError("ratio dimension rule needs ratio > 1");
            }
            return;
    }
    throw ValidationError("unknown dimension rule");
}

void SimPlan::validate() const {
    scenario.validate();
    i_rule.validate();
    j_rule.validate();

    if (n_grid.empty()) throw ValidationError("n_grid must be nonempty");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
        std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end()) {
        throw ValidationError("n_grid must be strictly increasing");
    }
    if (n_grid.back() > 4000) {
        throw ValidationError("n_grid is capped at 4000");
    }
    if (replicates < 1 || replicates > 500) {
        throw ValidationError("replicates must lie in [1, 500]");
    }
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");

    // The scenario dictates which growth shapes make sense.
    const bool j_grows_linearly = j_rule.kind == DimKind::ratio;
    switch (scenario.scenario) {
        case asy::Scenario::s1:
            if (j_grows_linearly || i_rule.kind == DimKind::ratio) {
                throw ValidationError("S1 plans need subpolynomial dimension rules");
            }
            break;
        case asy::Scenario::s2:
            if (!j_grows_linearly || i_rule.kind == DimKind::ratio) {
                throw ValidationError("S2 plans need j ~ n/r and i = O(n^a1), a1 < 1");
            }
            break;
        case asy::Scenario::s3:
            if (!j_grows_linearly || i_rule.kind != DimKind::ratio) {
                throw ValidationError("S3 plans need i ~ n/s and j ~ n/r");
            }
            if (i_rule.ratio < j_rule.ratio) {
                throw ValidationError("S3 plans need r <= s (M_i no larger than M_j)");
            }
            break;
    }

    const BetaRule& br = beta_rule;
    if (br.delta_comp < 0.0 || br.delta_null < br.delta_comp) {
        throw ValidationError("beta_rule needs 0 <= delta_comp <= delta_null");
    }
    if (br.shared_cols < 0) throw ValidationError("shared_cols must be >= 0");
    if (br.delta_null > br.delta_comp && br.shared_cols == 0) {
        throw ValidationError("delta_null > delta_comp needs a shared column block");
    }

    const HyperParams hp{a};
    for (int n : n_grid) {
        const int i_dim = i_rule.dim_for(n);
        const int j_dim = j_rule.dim_for(n);
        if (i_dim <= br.shared_cols || j_dim <= br.shared_cols) {
            throw ValidationError("both models need columns beyond the shared "
                                  "block (nonnested pair) at n = " + std::to_string(n));
        }
        if (i_dim + j_dim + 2 >= n) {
            throw ValidationError("dimension rules violate i + j + 2 < n at n = " +
                                  std::to_string(n));
        }
        hp.validate(n, j_dim);
        const int truth_exclusive =
            (truth == asy::TrueModel::mj ? j_dim : i_dim) - br.shared_cols;
        if (br.delta_comp > 0.0 && truth_exclusive < 1) {
            throw ValidationError("truth model has no exclusive columns to carry "
                                  "delta_comp");
        }
    }
}

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

linalg::Matrix make_design(int n, int p_total, std::uint64_t seed) {
    if (n <= p_total + 1) {
        throw ValidationError("make_design requires n > p_total + 1");
    }
    rng::NormalSampler normal(seed);
    linalg::Matrix x(static_cast<std::size_t>(n), static_cast<std::size_t>(p_total));
    for (std::size_t c = 0; c < x.cols(); ++c) {
        auto col = x.col(c);
        for (double& v : col) v = normal();
        ker::shift(-ker::sum(col) / n, col);
    }
    // Centered columns stay centered under linear combinations, so
    // orthonormalizing afterwards preserves exact zero means.
    linalg::orthonormalize_columns(x);
    const double scale = std::sqrt(static_cast<double>(n));
    for (std::size_t c = 0; c < x.cols(); ++c) ker::scal(scale, x.col(c));
    return x;
}

std::vector<double> generate_response(const linalg::Matrix& design,
                                      const ModelSpec& true_spec,
                                      std::span<const double> beta, double sigma,
                                      std::uint64_t seed) {
    if (static_cast<int>(beta.size()) != true_spec.dim()) {
        throw ValidationError("beta length does not match the true model dimension");
    }
    true_spec.validate_for(static_cast<int>(design.cols()));
    if (sigma < 0.0) throw ValidationError("sigma must be nonnegative");

    std::vector<double> y(design.rows(), 0.0);
    for (int k = 0; k < true_spec.dim(); ++k) {
        ker::axpy(beta[static_cast<std::size_t>(k)],
                  design.col(static_cast<std::size_t>(true_spec.columns()[k] - 1)), y);
    }
    if (sigma > 0.0) {
        rng::NormalSampler normal(seed);
        for (double& v : y) v += sigma * normal();
    }
    return y;
}

double empirical_r2_ratio(const FitSummary& fit_j, const FitSummary& fit_i) {
    const double denom = 1.0 - fit_i.r_squared;
    if (!(denom > 0.0) || !(1.0 - fit_j.r_squared > 0.0)) {
        throw ValidationError("degenerate fit in R^2 ratio");
    }
    return (1.0 - fit_j.r_squared) / denom;
}

// ---------------------------------------------------------------------------
// run_plan
// ---------------------------------------------------------------------------

namespace {

int worker_count(int replicates) {
    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("GBF_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed < 1) {
            throw ValidationError("GBF_THREADS must be a positive integer");
        }
        threads = static_cast<unsigned>(parsed);
    }
    if (threads == 0) threads = 1;
    return static_cast<int>(std::min<unsigned>(threads,
                                               static_cast<unsigned>(replicates)));
}

double kahan_mean(const std::vector<double>& xs) {
    double sum = 0.0, carry = 0.0;
    for (double x : xs) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double sum = 0.0, carry = 0.0;
    for (double x : xs) {
        const double d = (x - mean) * (x - mean) - carry;
        const double t = sum + d;
        carry = (t - sum) - d;
        sum = t;
    }
    return std::sqrt(sum / static_cast<double>(xs.size() - 1));
}

struct ColumnLayout {
    ModelSpec spec_i;
    ModelSpec spec_j;
    int p_total = 0;
};

ColumnLayout layout_columns(int i_dim, int j_dim, int shared) {
    std::vector<int> cols_i, cols_j;
    for (int c = 1; c <= shared; ++c) {
        cols_i.push_back(c);
        cols_j.push_back(c);
    }
    for (int c = shared + 1; c <= i_dim; ++c) cols_i.push_back(c);
    for (int c = i_dim + 1; c <= i_dim + j_dim - shared; ++c) cols_j.push_back(c);
    return {ModelSpec(cols_i), ModelSpec(cols_j), i_dim + j_dim - shared};
}

// Coefficients for the truth spec: delta_null - delta_comp of squared mass on
// the shared block, delta_comp on the truth-exclusive block.
std::vector<double> truth_coefficients(const SimPlan& plan, int truth_dim) {
    const BetaRule& br = plan.beta_rule;
    const int shared = br.shared_cols;
    const int exclusive = truth_dim - shared;
    const double sigma2 = plan.sigma * plan.sigma;
    std::vector<double> beta(static_cast<std::size_t>(truth_dim), 0.0);
    if (shared > 0) {
        const double v = std::sqrt((br.delta_null - br.delta_comp) * sigma2 / shared);
        for (int k = 0; k < shared; ++k) beta[static_cast<std::size_t>(k)] = v;
    }
    if (br.delta_comp > 0.0) {
        const double v = std::sqrt(br.delta_comp * sigma2 / exclusive);
        for (int k = shared; k < truth_dim; ++k) beta[static_cast<std::size_t>(k)] = v;
    }
    return beta;
}

}  // namespace

SimResult run_plan(const SimPlan& plan) {
    plan.validate();
    const HyperParams hp{plan.a};
    const bool truth_is_j = plan.truth == asy::TrueModel::mj;

    SimResult result;
    result.plan = plan;

    // The plan's targets pin the truth-side limiting distances; the
    // competitor carries no true signal, so its distances are zero.
    asy::LimitDistances limits;
    if (truth_is_j) {
        limits.delta_j0 = plan.beta_rule.delta_null;
        limits.delta_ji = plan.beta_rule.delta_comp;
    } else {
        limits.delta_i0 = plan.beta_rule.delta_null;
        limits.delta_ij = plan.beta_rule.delta_comp;
    }
    result.verdict = asy::verdict(plan.scenario, plan.truth, limits);
    result.lemma_limit = asy::lemma1_limit(
        plan.scenario, truth_is_j ? 0.0 : plan.beta_rule.delta_comp,
        truth_is_j ? plan.beta_rule.delta_comp : 0.0);

    const int reps = plan.replicates;
    const int workers = worker_count(reps);

    for (std::size_t ni = 0; ni < plan.n_grid.size(); ++ni) {
        const int n = plan.n_grid[ni];
        const int i_dim = plan.i_rule.dim_for(n);
        const int j_dim = plan.j_rule.dim_for(n);
        const ColumnLayout cols = layout_columns(i_dim, j_dim, plan.beta_rule.shared_cols);
        const ModelSpec& truth_spec = truth_is_j ? cols.spec_j : cols.spec_i;

        const linalg::Matrix design =
            make_design(n, cols.p_total, rng::derive_seed(plan.seed, 2 * ni, 0));
        const std::vector<double> beta = truth_coefficients(plan, truth_spec.dim());

        std::vector<double> log_bfs(static_cast<std::size_t>(reps));
        std::vector<double> ratios(static_cast<std::size_t>(reps));

        // One slot per replicate; workers never share slots, and the merge
        // below walks the slots in replicate order.
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto replicate_range = [&](int first, int last) {
            try {
                for (int k = first; k < last; ++k) {
                    const std::vector<double> y = generate_response(
                        design, truth_spec, beta, plan.sigma,
                        rng::derive_seed(plan.seed, 2 * ni + 1,
                                         static_cast<std::uint64_t>(k)));

                    // With X'X = n I the fitted R^2 of a submodel is the sum
                    // of its squared column scores over n * TSS.
                    const double ybar = ker::sum(y) / n;
                    const double tss = ker::sumsq(y) - n * ybar * ybar;
                    auto r2_of = [&](const ModelSpec& spec) {
                        double score = 0.0;
                        for (int c : spec.columns()) {
                            const double t = ker::dot(
                                design.col(static_cast<std::size_t>(c - 1)), y);
                            score += t * t;
                        }
                        return std::min(score / (n * tss), 1.0 - 1e-15);
                    };
                    const double r2j = r2_of(cols.spec_j);
                    const double r2i = r2_of(cols.spec_i);
                    const FitSummary fit_j{r2j, tss * (1.0 - r2j), tss, j_dim,
                                           cols.spec_j};
                    const FitSummary fit_i{r2i, tss * (1.0 - r2i), tss, i_dim,
                                           cols.spec_i};
                    const std::size_t slot = static_cast<std::size_t>(k);
                    log_bfs[slot] = log_bf_pair(n, fit_j, fit_i, hp).log_bf;
                    ratios[slot] = empirical_r2_ratio(fit_j, fit_i);
                }
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) {
                    try {
                        std::throw_with_nested(
                            Error("plan aborted at n = " + std::to_string(n)));
                    } catch (...) {
                        failure = std::current_exception();
                    }
                }
            }
        };

        if (workers <= 1) {
            replicate_range(0, reps);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            const int chunk = (reps + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const int first = w * chunk;
                const int last = std::min(reps, first + chunk);
                if (first >= last) break;
                pool.emplace_back(replicate_range, first, last);
            }
            for (auto& t : pool) t.join();
        }
        if (failure) std::rethrow_exception(failure);

        int favor = 0;
        for (double lbf : log_bfs) {
            if (truth_is_j ? lbf > 0.0 : lbf < 0.0) ++favor;
        }
        SimPoint point;
        point.n = n;
        point.i_dim = i_dim;
        point.j_dim = j_dim;
        point.frac_favor_truth = static_cast<double>(favor) / reps;
        point.mean_log_bf = kahan_mean(log_bfs);
        point.sd_log_bf = sample_sd(log_bfs, point.mean_log_bf);
        point.mean_r2_ratio = kahan_mean(ratios);
        point.se_r2_ratio =
            sample_sd(ratios, point.mean_r2_ratio) / std::sqrt(static_cast<double>(reps));
        point.theory_consistent = result.verdict.consistent;
        result.points.push_back(point);
    }
    return result;
}

}  // namespace gbf::simulation
