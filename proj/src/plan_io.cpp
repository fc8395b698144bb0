#include "gbf/plan_io.hpp"

#include <fstream>
#include <sstream>

#include "gbf/errors.hpp"

namespace gbf::io {

namespace asy = gbf::asymptotics;
namespace sim = gbf::simulation;
using nlohmann::json;

std::string format_double(double value) { return json(value).dump(); }

const char* to_string(asy::TrueModel truth) {
    return truth == asy::TrueModel::mi ? "mi" : "mj";
}

const char* to_string(asy::TheoremCase theorem) {
    switch (theorem) {
        case asy::TheoremCase::t3: return "t3";
        case asy::TheoremCase::t4a: return "t4a";
        case asy::TheoremCase::t4b: return "t4b";
        case asy::TheoremCase::t5a: return "t5a";
        case asy::TheoremCase::t5b: return "t5b";
    }
    return "?";
}

const char* to_string(asy::Scenario scenario) {
    switch (scenario) {
        case asy::Scenario::s1: return "s1";
        case asy::Scenario::s2: return "s2";
        case asy::Scenario::s3: return "s3";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError("plan: missing field " + path + "/" + key);
    }
    return j.at(key);
}

double number_at(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_number()) {
        throw ValidationError("plan: " + path + "/" + key + " must be a number");
    }
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return j.at(key).get<double>();
}

std::string string_at(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) {
        throw ValidationError("plan: " + path + "/" + key + " must be a string");
    }
    return v.get<std::string>();
}

asy::ScenarioConfig scenario_from_json(const json& j) {
    const std::string type = string_at(j, "type", "/scenario");
    try {
        if (type == "s1") {
            return asy::ScenarioConfig::make_s1(number_at(j, "a1", "/scenario"),
                                                number_at(j, "a2", "/scenario"));
        }
        if (type == "s2") {
            return asy::ScenarioConfig::make_s2(number_at(j, "a1", "/scenario"),
                                                number_at(j, "r", "/scenario"));
        }
        if (type == "s3") {
            return asy::ScenarioConfig::make_s3(number_at(j, "r", "/scenario"),
                                                number_at(j, "s", "/scenario"));
        }
    } catch (const ValidationError& e) {
        throw ValidationError("plan: /scenario invalid: " + std::string(e.what()));
    }
    throw ValidationError("plan: /scenario/type must be s1, s2 or s3");
}

json scenario_to_json(const asy::ScenarioConfig& cfg) {
    json j{{"type", to_string(cfg.scenario)}};
    switch (cfg.scenario) {
        case asy::Scenario::s1:
            j["a1"] = cfg.a1;
            j["a2"] = cfg.a2;
            break;
        case asy::Scenario::s2:
            j["a1"] = cfg.a1;
            j["r"] = *cfg.r;
            break;
        case asy::Scenario::s3:
            j["r"] = *cfg.r;
            j["s"] = *cfg.s;
            break;
    }
    return j;
}

sim::DimRule dim_rule_from_json(const json& j, const std::string& path) {
    const std::string kind = string_at(j, "kind", path);
    sim::DimRule rule;
    if (kind == "fixed") {
        rule.kind = sim::DimKind::fixed;
        rule.value = static_cast<int>(number_at(j, "value", path));
    } else if (kind == "power") {
        rule.kind = sim::DimKind::power;
        rule.coef = number_or(j, "coef", 1.0);
        rule.exponent = number_at(j, "exponent", path);
    } else if (kind == "ratio") {
        rule.kind = sim::DimKind::ratio;
        rule.ratio = number_at(j, "ratio", path);
    } else {
        throw ValidationError("plan: " + path + "/kind must be fixed, power or ratio");
    }
    return rule;
}

json dim_rule_to_json(const sim::DimRule& rule) {
    switch (rule.kind) {
        case sim::DimKind::fixed:
            return {{"kind", "fixed"}, {"value", rule.value}};
        case sim::DimKind::power:
            return {{"kind", "power"}, {"coef", rule.coef}, {"exponent", rule.exponent}};
        case sim::DimKind::ratio:
            return {{"kind", "ratio"}, {"ratio", rule.ratio}};
    }
    return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Plans
// ---------------------------------------------------------------------------

sim::SimPlan plan_from_json(const json& j) {
    sim::SimPlan plan;
    plan.scenario = scenario_from_json(field(j, "scenario", ""));

    const json& grid = field(j, "n_grid", "");
    if (!grid.is_array() || grid.empty()) {
        throw ValidationError("plan: /n_grid must be a nonempty array");
    }
    for (const json& v : grid) {
        if (!v.is_number_integer()) {
            throw ValidationError("plan: /n_grid entries must be integers");
        }
        plan.n_grid.push_back(v.get<int>());
    }

    plan.i_rule = dim_rule_from_json(field(j, "i_rule", ""), "/i_rule");
    plan.j_rule = dim_rule_from_json(field(j, "j_rule", ""), "/j_rule");

    const std::string truth = string_at(j, "truth", "");
    if (truth == "mi") {
        plan.truth = asy::TrueModel::mi;
    } else if (truth == "mj") {
        plan.truth = asy::TrueModel::mj;
    } else {
        throw ValidationError("plan: /truth must be mi or mj");
    }

    const json& beta = field(j, "beta_rule", "");
    plan.beta_rule.delta_comp = number_at(beta, "delta_comp", "/beta_rule");
    plan.beta_rule.delta_null = number_at(beta, "delta_null", "/beta_rule");
    plan.beta_rule.shared_cols =
        static_cast<int>(number_or(beta, "shared_cols", 0.0));

    plan.sigma = number_at(j, "sigma", "");
    plan.replicates = static_cast<int>(number_at(j, "replicates", ""));
    const json& seed = field(j, "seed", "");
    if (!seed.is_number_integer() && !seed.is_number_unsigned()) {
        throw ValidationError("plan: /seed must be an integer");
    }
    plan.seed = seed.get<std::uint64_t>();
    plan.a = number_or(j, "a", -0.5);

    try {
        plan.validate();
    } catch (const ValidationError& e) {
        throw ValidationError("plan: " + std::string(e.what()));
    }
    return plan;
}

json plan_to_json(const sim::SimPlan& plan) {
    return {{"scenario", scenario_to_json(plan.scenario)},
            {"n_grid", plan.n_grid},
            {"i_rule", dim_rule_to_json(plan.i_rule)},
            {"j_rule", dim_rule_to_json(plan.j_rule)},
            {"truth", to_string(plan.truth)},
            {"beta_rule",
             {{"delta_comp", plan.beta_rule.delta_comp},
              {"delta_null", plan.beta_rule.delta_null},
              {"shared_cols", plan.beta_rule.shared_cols}}},
            {"sigma", plan.sigma},
            {"replicates", plan.replicates},
            {"seed", plan.seed},
            {"a", plan.a}};
}

sim::SimPlan load_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open plan file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("plan file " + path + ": " + e.what());
    }
    return plan_from_json(j);
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

json verdict_to_json(const asy::ConsistencyVerdict& verdict) {
    return {{"truth", to_string(verdict.truth)},
            {"theorem", to_string(verdict.theorem)},
            {"consistent", verdict.consistent},
            {"condition_met", verdict.condition_met},
            {"lower_bound", verdict.lower_bound},
            {"upper_bound", verdict.upper_bound},
            {"boundary_degenerate", verdict.boundary_degenerate}};
}

json result_to_json(const sim::SimResult& result) {
    json points = json::array();
    for (const sim::SimPoint& pt : result.points) {
        points.push_back({{"n", pt.n},
                          {"i", pt.i_dim},
                          {"j", pt.j_dim},
                          {"frac_favor_truth", pt.frac_favor_truth},
                          {"mean_log_bf", pt.mean_log_bf},
                          {"sd_log_bf", pt.sd_log_bf},
                          {"mean_r2_ratio", pt.mean_r2_ratio},
                          {"se_r2_ratio", pt.se_r2_ratio},
                          {"theory_consistent", pt.theory_consistent}});
    }
    return {{"plan", plan_to_json(result.plan)},
            {"verdict", verdict_to_json(result.verdict)},
            {"lemma_limit", result.lemma_limit},
            {"points", points}};
}

std::string result_to_csv(const sim::SimResult& result) {
    std::ostringstream out;
    out << "n,i,j,frac_favor_truth,mean_log_bf,sd_log_bf,theory_consistent\n";
    for (const sim::SimPoint& pt : result.points) {
        out << pt.n << ',' << pt.i_dim << ',' << pt.j_dim << ','
            << format_double(pt.frac_favor_truth) << ','
            << format_double(pt.mean_log_bf) << ',' << format_double(pt.sd_log_bf)
            << ',' << (pt.theory_consistent ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace gbf::io
