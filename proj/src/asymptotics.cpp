#include "gbf/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gbf/errors.hpp"

namespace gbf::asymptotics {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

void require_rs(double r, double s) {
    require(r > 1.0 && s > 1.0 && r <= s, "need 1 < r <= s");
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

ScenarioConfig ScenarioConfig::make_s1(double a1, double a2) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::s1;
    cfg.a1 = a1;
    cfg.a2 = a2;
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::make_s2(double a1, double r) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::s2;
    cfg.a1 = a1;
    cfg.a2 = 1.0;
    cfg.r = r;
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::make_s3(double r, double s) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::s3;
    cfg.a1 = 1.0;
    cfg.a2 = 1.0;
    cfg.r = r;
    cfg.s = s;
    cfg.validate();
    return cfg;
}

void ScenarioConfig::validate() const {
    switch (scenario) {
        case Scenario::s1:
            require(0.0 <= a1 && a1 <= a2 && a2 < 1.0,
                    "S1 requires 0 <= a1 <= a2 < 1");
            break;
        case Scenario::s2:
            require(0.0 <= a1 && a1 < 1.0 && a2 == 1.0,
                    "S2 requires 0 <= a1 < a2 = 1");
            require(r.has_value() && *r > 1.0, "S2 requires r > 1");
            break;
        case Scenario::s3:
            require(a1 == 1.0 && a2 == 1.0, "S3 requires a1 = a2 = 1");
            require(r.has_value() && s.has_value(), "S3 requires both r and s");
            require_rs(*r, *s);
            break;
    }
}

void LimitDistances::validate() const {
    require(delta_j0 >= 0.0 && delta_i0 >= 0.0 && delta_ji >= 0.0 && delta_ij >= 0.0,
            "limiting distances must be nonnegative");
    const double slack = 1e-12;
    require(delta_ji <= delta_j0 + slack * (1.0 + delta_j0),
            "invariant violation: delta_ji exceeds delta_j0");
    require(delta_ij <= delta_i0 + slack * (1.0 + delta_i0),
            "invariant violation: delta_ij exceeds delta_i0");
}

// ---------------------------------------------------------------------------
// Limit formulas and boundary functions
// ---------------------------------------------------------------------------

double lemma1_limit(const ScenarioConfig& cfg, double delta_tj, double delta_ti) {
    cfg.validate();
    require(delta_tj >= 0.0 && delta_ti >= 0.0, "distances must be nonnegative");
    double numer = 1.0 + delta_tj;
    double denom = 1.0 + delta_ti;
    if (cfg.scenario != Scenario::s1) numer -= 1.0 / *cfg.r;
    if (cfg.scenario == Scenario::s3) denom -= 1.0 / *cfg.s;
    require(denom > 0.0, "nonpositive denominator in limit ratio");
    return numer / denom;
}

double delta_threshold(double r) {
    require(r > 1.0, "delta threshold requires r > 1");
    return std::expm1(std::log(r) / (r - 1.0));
}

double kappa(double r, double s) {
    require(r > 1.0 && s >= 0.0, "kappa requires r > 1 and s >= 0");
    return std::expm1((std::log(r) + std::log1p(s)) / r);
}

double xi(double r) {
    require(r > 1.0, "xi requires r > 1");
    return (r - 1.0) / std::expm1((r - 1.0) / r * std::log1p(r)) - 1.0;
}

double eta(double r, double s) {
    require(r > 1.0 && s >= 0.0, "eta requires r > 1 and s >= 0");
    return (r + s) * std::exp(-(r - 1.0) / r * std::log1p(r)) - 1.0;
}

double phi(double a, double b, double c) {
    require(a > 1.0 && b > 1.0 && c >= 0.0, "phi requires a > 1, b > 1, c >= 0");
    const double base =
        std::expm1(std::log(a) / a - std::log(b) / b + (1.0 / a - 1.0 / b) * std::log1p(c));
    if (base <= 0.0) return 0.0;
    return (b - 1.0) / b * std::exp(b / (b - 1.0) * std::log(base));
}

bool t5a_condition(double r, double s, double delta_i0) {
    require_rs(r, s);
    require(delta_i0 >= 0.0, "delta_i0 must be nonnegative");
    const double lhs = (1.0 - 1.0 / r) * std::log1p(delta_i0 / (1.0 - 1.0 / r));
    const double rhs = std::log(s) / s - std::log(r) / r +
                       (1.0 / s - 1.0 / r) * std::log1p(delta_i0);
    return lhs > rhs;
}

double t5a_lower_bound(double r, double s, double delta_i0) {
    require_rs(r, s);
    require(delta_i0 >= 0.0, "delta_i0 must be nonnegative");
    const double inner_log = std::log(s) / s - std::log(r) / r +
                             (1.0 / s - 1.0 / r) * std::log1p(delta_i0);
    const double bound = (r - 1.0) / r * std::expm1(r / (r - 1.0) * inner_log);
    return bound > 0.0 ? bound : 0.0;
}

bool t5b_condition(double r, double s, double delta_j0) {
    require_rs(r, s);
    require(delta_j0 >= 0.0, "delta_j0 must be nonnegative");
    const double lhs = (1.0 - 1.0 / s) * std::log1p(delta_j0 / (1.0 - 1.0 / s));
    const double rhs = std::log(r) / r - std::log(s) / s +
                       (1.0 / r - 1.0 / s) * std::log1p(delta_j0);
    return lhs > rhs;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

namespace {

ConsistencyVerdict interval_verdict(TrueModel truth, TheoremCase theorem,
                                    bool condition, double lower, double upper,
                                    double query) {
    ConsistencyVerdict v;
    v.truth = truth;
    v.theorem = theorem;
    v.condition_met = condition;
    v.lower_bound = lower;
    v.upper_bound = upper;
    v.consistent = condition && query > lower && query <= upper;
    v.boundary_degenerate = (query == lower);
    return v;
}

}  // namespace

ConsistencyVerdict verdict(const ScenarioConfig& cfg, TrueModel truth,
                           const LimitDistances& d) {
    cfg.validate();
    d.validate();

    switch (cfg.scenario) {
        case Scenario::s1:
            // Consistent whichever the truth is, provided the truth keeps a
            // positive distance to the competitor.
            if (truth == TrueModel::mj) {
                return interval_verdict(truth, TheoremCase::t3, true, 0.0, d.delta_j0,
                                        d.delta_ji);
            }
            return interval_verdict(truth, TheoremCase::t3, true, 0.0, d.delta_i0,
                                    d.delta_ij);

        case Scenario::s2: {
            const double r = *cfg.r;
            if (truth == TrueModel::mi) {
                return interval_verdict(truth, TheoremCase::t4a, true, 0.0, d.delta_i0,
                                        d.delta_ij);
            }
            const double threshold = delta_threshold(r);
            ConsistencyVerdict v = interval_verdict(
                truth, TheoremCase::t4b, d.delta_j0 > threshold,
                kappa(r, d.delta_j0), d.delta_j0, d.delta_ji);
            v.boundary_degenerate = v.boundary_degenerate || d.delta_j0 == threshold;
            return v;
        }

        case Scenario::s3: {
            const double r = *cfg.r;
            const double s = *cfg.s;
            if (truth == TrueModel::mi) {
                const bool cond = d.delta_i0 > 0.0 && t5a_condition(r, s, d.delta_i0);
                return interval_verdict(truth, TheoremCase::t5a, cond,
                                        t5a_lower_bound(r, s, d.delta_i0), d.delta_i0,
                                        d.delta_ij);
            }
            const bool cond = d.delta_j0 > 0.0 && t5b_condition(r, s, d.delta_j0);
            return interval_verdict(truth, TheoremCase::t5b, cond,
                                    phi(r, s, d.delta_j0), d.delta_j0, d.delta_ji);
        }
    }
    throw ValidationError("unknown scenario");
}

ConsistencyVerdict intrinsic_verdict_s2(double r, double delta_j0, double delta_ji,
                                        double delta_ij, TrueModel truth) {
    require(r > 1.0, "intrinsic verdict requires r > 1");
    require(delta_j0 >= 0.0 && delta_ji >= 0.0 && delta_ij >= 0.0,
            "distances must be nonnegative");
    if (truth == TrueModel::mi) {
        return interval_verdict(truth, TheoremCase::t4a, true, 0.0,
                                std::numeric_limits<double>::infinity(), delta_ij);
    }
    return interval_verdict(truth, TheoremCase::t4b, delta_j0 > xi(r),
                            eta(r, delta_j0), delta_j0, delta_ji);
}

}  // namespace gbf::asymptotics
