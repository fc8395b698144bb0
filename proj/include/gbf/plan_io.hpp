#pragma once

// JSON plan files and simulation-result serialization. Parse errors carry
// JSON-pointer-style paths ("/beta_rule/delta_null") so plan authors can
// locate the offending field.

#include <string>

#include <json.hpp>

#include "gbf/simulation.hpp"

namespace gbf::io {

// Shortest round-trip decimal form; used for every number the tool prints so
// CSV and JSON outputs carry identical values.
std::string format_double(double value);

const char* to_string(asymptotics::TrueModel truth);
const char* to_string(asymptotics::TheoremCase theorem);
const char* to_string(asymptotics::Scenario scenario);

simulation::SimPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const simulation::SimPlan& plan);

// Reads and validates a plan file; ValidationError on I/O, syntax or schema
// problems.
simulation::SimPlan load_plan_file(const std::string& path);

nlohmann::json verdict_to_json(const asymptotics::ConsistencyVerdict& verdict);
nlohmann::json result_to_json(const simulation::SimResult& result);

// columns: n,i,j,frac_favor_truth,mean_log_bf,sd_log_bf,theory_consistent
std::string result_to_csv(const simulation::SimResult& result);

}  // namespace gbf::io
