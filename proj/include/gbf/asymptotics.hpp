#pragma once

// Limit theory for Bayes-factor model selection with growing dimensions:
// predicted residual-variance ratios, consistency-region boundary functions
// and region-membership verdicts, for both the closed-form Bayes factor and
// the published intrinsic-Bayes-factor comparison curves.
//
// Growth regimes for competing dimensions i = O(n^{a1}), j = O(n^{a2}):
//   S1: 0 <= a1 <= a2 < 1   (includes fixed dimensions)
//   S2: 0 <= a1 < a2 = 1,   r = lim n/j > 1
//   S3: a1 = a2 = 1,        r = lim n/j, s = lim n/i, 1 < r <= s

#include <optional>

namespace gbf::asymptotics {

enum class Scenario { s1, s2, s3 };
enum class TrueModel { mi, mj };
enum class TheoremCase { t3, t4a, t4b, t5a, t5b };

struct ScenarioConfig {
    Scenario scenario = Scenario::s1;
    double a1 = 0.0;
    double a2 = 0.0;
    std::optional<double> r;  // lim n/j, required for S2 and S3
    std::optional<double> s;  // lim n/i, required for S3 (r <= s)

    static ScenarioConfig make_s1(double a1, double a2);
    static ScenarioConfig make_s2(double a1, double r);
    static ScenarioConfig make_s3(double r, double s);

    void validate() const;
};

// Limiting pseudo-distances between the competing models and the null base.
struct LimitDistances {
    double delta_j0 = 0.0;
    double delta_i0 = 0.0;
    double delta_ji = 0.0;
    double delta_ij = 0.0;

    // delta_ji <= delta_j0 and delta_ij <= delta_i0 (the null is nested in
    // both models).
    void validate() const;
};

struct ConsistencyVerdict {
    TrueModel truth = TrueModel::mj;
    bool consistent = false;
    double lower_bound = 0.0;  // open edge of the consistency interval
    double upper_bound = 0.0;  // closed edge
    bool condition_met = false;  // auxiliary delta_*0 inequality, when present
    TheoremCase theorem = TheoremCase::t3;
    // Set when the queried distance sits exactly on a strict-inequality edge;
    // such points are classified inconsistent.
    bool boundary_degenerate = false;
};

// Predicted limit of (1 - R_j^2)/(1 - R_i^2) under the true model, where
// delta_tj / delta_ti are the limiting distances from the truth to the two
// fitted models:
//   S1: (1 + delta_tj) / (1 + delta_ti)
//   S2: (1 + delta_tj - 1/r) / (1 + delta_ti)
//   S3: (1 + delta_tj - 1/r) / (1 + delta_ti - 1/s)
double lemma1_limit(const ScenarioConfig& cfg, double delta_tj, double delta_ti);

/// delta(r) = r^{1/(r-1)} - 1, the S2 threshold on delta_j0.
double delta_threshold(double r);

/// kappa(r, s) = [r (1 + s)]^{1/r} - 1, the S2 region lower edge.
double kappa(double r, double s);

/// xi(r) = (r-1)/((r+1)^{(r-1)/r} - 1) - 1, intrinsic-BF threshold.
double xi(double r);

/// eta(r, s) = (r+s)/(1+r)^{(r-1)/r} - 1, intrinsic-BF region lower edge.
double eta(double r, double s);

/// phi(a, b, c) = ((b-1)/b) [ (a^{1/a}/b^{1/b}) (1+c)^{1/a-1/b} - 1 ]^{b/(b-1)},
/// the S3 region lower edge under M_j; 0 when the bracketed base is not
/// positive (the region floor collapses).
double phi(double a, double b, double c);

/// S3 feasibility under M_i:
/// (1 + d/(1-1/r))^{1-1/r} > (1/r)^{1/r}/(1/s)^{1/s} (1+d)^{1/s-1/r}.
bool t5a_condition(double r, double s, double delta_i0);

/// S3 region lower edge under M_i:
/// ((r-1)/r) { [ (s^{1/s}/r^{1/r}) (1+d)^{1/s-1/r} ]^{r/(r-1)} - 1 },
/// clamped at 0 (a negative edge means all of (0, delta_i0] is consistent).
double t5a_lower_bound(double r, double s, double delta_i0);

/// S3 feasibility under M_j:
/// (1 + d/(1-1/s))^{1-1/s} > (r^{1/r}/s^{1/s}) (1+d)^{1/r-1/s}.
bool t5b_condition(double r, double s, double delta_j0);

// Region membership for the closed-form Bayes factor. Intervals are open at
// the lower edge and closed at the upper edge; equality at a strict boundary
// is inconsistent with boundary_degenerate set.
ConsistencyVerdict verdict(const ScenarioConfig& cfg, TrueModel truth,
                           const LimitDistances& d);

// S2 verdict for the intrinsic Bayes factor (xi/eta in place of delta/kappa);
// provided for region comparisons only.
ConsistencyVerdict intrinsic_verdict_s2(double r, double delta_j0, double delta_ji,
                                        double delta_ij, TrueModel truth);

}  // namespace gbf::asymptotics
