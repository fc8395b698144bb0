// gbf: Bayes factors for Gaussian linear model selection under a g-prior
// with a beta-prime prior on the scaling, plus consistency-region tables and
// a Monte Carlo simulation harness.
//
// Subcommands: bf, compare, regions, simulate, anova.
// Exit codes: 0 success, 2 usage/validation, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbf/anova.hpp"
#include "gbf/bayes_factor.hpp"
#include "gbf/dataset_io.hpp"
#include "gbf/errors.hpp"
#include "gbf/kernels.hpp"
#include "gbf/plan_io.hpp"
#include "gbf/regions.hpp"
#include "gbf/regression.hpp"
#include "gbf/rng.hpp"
#include "gbf/simulation.hpp"

namespace {

using nlohmann::json;
namespace asy = gbf::asymptotics;

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

std::string iso_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%FT%TZ", &utc);
    return buffer;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gbf::ValidationError("cannot write output file: " + path);
    out << text;
}

void emit_json(json j, bool deterministic, const std::string& path) {
    if (!deterministic) j["generated_at"] = iso_timestamp();
    emit(j.dump(2) + "\n", path);
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> names;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) names.push_back(item);
    }
    return names;
}

// Grid syntax: either "lo:hi:count" (inclusive linear spacing) or a comma
// list of values.
std::vector<double> parse_grid(const std::string& text, const char* flag) {
    std::vector<double> values;
    try {
        if (text.find(':') != std::string::npos) {
            std::istringstream in(text);
            std::string lo_s, hi_s, count_s;
            std::getline(in, lo_s, ':');
            std::getline(in, hi_s, ':');
            std::getline(in, count_s);
            const double lo = std::stod(lo_s);
            const double hi = std::stod(hi_s);
            const int count = std::stoi(count_s);
            if (count < 1 || hi < lo) throw std::invalid_argument("bad range");
            for (int k = 0; k < count; ++k) {
                values.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
            }
        } else {
            std::istringstream in(text);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (!item.empty()) values.push_back(std::stod(item));
            }
        }
    } catch (const std::exception&) {
        throw gbf::ValidationError(std::string(flag) +
                                   ": expected lo:hi:count or v1,v2,...");
    }
    if (values.empty()) {
        throw gbf::ValidationError(std::string(flag) + ": empty grid");
    }
    return values;
}

// Linear-scale display with explicit overflow/underflow markers.
std::string bf_display(double log_bf) {
    if (log_bf > 709.0) return "+inf";
    if (log_bf < -745.0) return "0 (underflow)";
    return gbf::io::format_double(std::exp(log_bf));
}

json bf_result_json(const gbf::BayesFactorResult& r) {
    return {{"log_bf", r.log_bf},
            {"bf_display", bf_display(r.log_bf)},
            {"gamma_term", r.gamma_term},
            {"fit_term", r.fit_term}};
}

// ---------------------------------------------------------------------------
// bf / compare
// ---------------------------------------------------------------------------

struct DataOptions {
    std::string data_path;
    double a = -0.5;
};

int cmd_bf(const DataOptions& opt, const std::string& columns, bool deterministic,
           const std::string& output) {
    const gbf::io::CsvTable table = gbf::io::load_csv(opt.data_path);
    const gbf::Dataset data = gbf::io::to_dataset(table);
    const std::vector<std::string> names = split_names(columns);
    const gbf::ModelSpec spec(gbf::io::column_indices(table, names));

    const gbf::HyperParams hp{opt.a};
    const gbf::FitSummary fit = gbf::fit(data, spec);
    const gbf::BayesFactorResult r = gbf::log_bf_vs_null(data.n(), fit, hp);

    json out = bf_result_json(r);
    out["n"] = data.n();
    out["j"] = fit.dim;
    out["a"] = opt.a;
    out["r_squared"] = fit.r_squared;
    out["model_columns"] = names;
    out["schwarz_log_bf"] = gbf::log_bf_schwarz(data.n(), fit);
    emit_json(std::move(out), deterministic, output);
    return 0;
}

int cmd_compare(const DataOptions& opt, const std::string& model_j,
                const std::string& model_i, bool deterministic,
                const std::string& output) {
    const gbf::io::CsvTable table = gbf::io::load_csv(opt.data_path);
    const gbf::Dataset data = gbf::io::to_dataset(table);
    const std::vector<std::string> names_j = split_names(model_j);
    const std::vector<std::string> names_i = split_names(model_i);
    const gbf::ModelSpec spec_j(gbf::io::column_indices(table, names_j));
    const gbf::ModelSpec spec_i(gbf::io::column_indices(table, names_i));

    const gbf::HyperParams hp{opt.a};
    const gbf::FitSummary fit_j = gbf::fit(data, spec_j);
    const gbf::FitSummary fit_i = gbf::fit(data, spec_i);
    const gbf::BayesFactorResult r = gbf::log_bf_pair(data.n(), fit_j, fit_i, hp);

    json out = bf_result_json(r);
    out["n"] = data.n();
    out["a"] = opt.a;
    out["model_j"] = {{"columns", names_j},
                      {"dim", fit_j.dim},
                      {"r_squared", fit_j.r_squared}};
    out["model_i"] = {{"columns", names_i},
                      {"dim", fit_i.dim},
                      {"r_squared", fit_i.r_squared}};
    emit_json(std::move(out), deterministic, output);
    return 0;
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

json region_row_json(const asy::RegionRow& row) {
    json j{{"r", row.r},
           {"delta_j0", row.delta},
           {"delta_threshold", row.delta_threshold},
           {"kappa", row.kappa},
           {"xi", row.xi},
           {"eta", row.eta}};
    if (row.s) j["s"] = *row.s;
    if (row.phi) j["phi"] = *row.phi;
    if (row.t5a_lower) j["t5a_lower_bound"] = *row.t5a_lower;
    if (row.t5a_cond) j["t5a_condition"] = *row.t5a_cond;
    if (row.t5b_cond) j["t5b_condition"] = *row.t5b_cond;
    return j;
}

std::string regions_csv(const std::vector<asy::RegionRow>& rows, bool s3) {
    std::ostringstream out;
    using gbf::io::format_double;
    if (s3) {
        out << "r,s,delta_j0,delta_threshold,kappa,xi,eta,phi,t5a_lower_bound,"
               "t5a_condition,t5b_condition\n";
    } else {
        out << "r,delta_j0,delta_threshold,kappa,xi,eta\n";
    }
    for (const asy::RegionRow& row : rows) {
        out << format_double(row.r) << ',';
        if (s3) out << format_double(*row.s) << ',';
        out << format_double(row.delta) << ',' << format_double(row.delta_threshold)
            << ',' << format_double(row.kappa) << ',' << format_double(row.xi) << ','
            << format_double(row.eta);
        if (s3) {
            out << ',' << format_double(*row.phi) << ','
                << format_double(*row.t5a_lower) << ','
                << (*row.t5a_cond ? "true" : "false") << ','
                << (*row.t5b_cond ? "true" : "false");
        }
        out << '\n';
    }
    return out.str();
}

int cmd_regions(const std::string& scenario_name, const std::string& r_grid,
                const std::string& s_grid, const std::string& delta_grid,
                bool strict, const std::string& format, bool deterministic,
                const std::string& output) {
    asy::RegionTableRequest req;
    if (scenario_name == "s2") {
        req.scenario = asy::Scenario::s2;
    } else if (scenario_name == "s3") {
        req.scenario = asy::Scenario::s3;
    } else {
        throw gbf::ValidationError("--scenario must be s2 or s3");
    }
    req.r_grid = parse_grid(r_grid, "--r-grid");
    if (!s_grid.empty()) req.s_grid = parse_grid(s_grid, "--s-grid");
    req.delta_grid = parse_grid(delta_grid, "--delta-j0");
    req.strict = strict;

    const auto rows = asy::regions_table(req);
    if (format == "csv") {
        emit(regions_csv(rows, req.scenario == asy::Scenario::s3), output);
    } else if (format == "json") {
        json out{{"scenario", scenario_name}, {"rows", json::array()}};
        for (const auto& row : rows) out["rows"].push_back(region_row_json(row));
        emit_json(std::move(out), deterministic, output);
    } else {
        throw gbf::ValidationError("--format must be csv or json");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& plan_path, std::optional<std::uint64_t> seed,
                 std::optional<int> threads, const std::string& out_json,
                 const std::string& out_csv, bool deterministic) {
    gbf::simulation::SimPlan plan = gbf::io::load_plan_file(plan_path);
    if (seed) plan.seed = *seed;
    if (threads) {
        if (*threads < 1) throw gbf::ValidationError("--threads must be positive");
        setenv("GBF_THREADS", std::to_string(*threads).c_str(), 1);
    }

    const gbf::simulation::SimResult result = gbf::simulation::run_plan(plan);
    json out = gbf::io::result_to_json(result);
    out["kernels"] = gbf::kernels::backend_name(gbf::kernels::active_backend());
    if (!out_csv.empty()) emit(gbf::io::result_to_csv(result), out_csv);
    emit_json(std::move(out), deterministic, out_json);
    return 0;
}

// ---------------------------------------------------------------------------
// anova
// ---------------------------------------------------------------------------

const char* submodel_name(gbf::anova::Submodel tag) {
    switch (tag) {
        case gbf::anova::Submodel::m0: return "m0";
        case gbf::anova::Submodel::m1: return "m1";
        case gbf::anova::Submodel::m2: return "m2";
        case gbf::anova::Submodel::m3: return "m3";
        case gbf::anova::Submodel::m4: return "m4";
    }
    return "?";
}

int cmd_anova(int levels_a, int levels_b, int per_cell, double effect_a,
              double effect_b, double effect_ab, double sigma, std::uint64_t seed,
              double a, bool deterministic, const std::string& output) {
    using namespace gbf::anova;
    const TwoWayDesign design{levels_a, levels_b, per_cell};
    design.validate();
    if (!(sigma > 0.0)) throw gbf::ValidationError("--sigma must be positive");

    const gbf::linalg::Matrix x = build_design(design);
    const int pa = levels_a - 1;
    const int qb = levels_b - 1;

    // True coefficients in the contrast basis: one magnitude per block.
    std::vector<double> beta(static_cast<std::size_t>(pa + qb + pa * qb));
    for (int k = 0; k < pa; ++k) beta[static_cast<std::size_t>(k)] = effect_a;
    for (int l = 0; l < qb; ++l) beta[static_cast<std::size_t>(pa + l)] = effect_b;
    for (int k = 0; k < pa * qb; ++k) {
        beta[static_cast<std::size_t>(pa + qb + k)] = effect_ab;
    }

    const AnovaSubmodel full = submodel(design, Submodel::m4);
    const std::vector<double> y =
        gbf::simulation::generate_response(x, full.spec, beta, sigma, seed);
    const gbf::Dataset data = gbf::Dataset::from_centered(y, x);
    const gbf::HyperParams hp{a};

    const Submodel tags[] = {Submodel::m0, Submodel::m1, Submodel::m2,
                             Submodel::m3, Submodel::m4};
    json fits = json::object();
    double null_based[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 5; ++k) {
        const AnovaSubmodel sub = submodel(design, tags[k]);
        const gbf::FitSummary f = gbf::fit(data, sub.spec);
        null_based[k] = gbf::log_bf_vs_null(data.n(), f, hp).log_bf;
        fits[submodel_name(tags[k])] = {{"dim", f.dim}, {"r_squared", f.r_squared}};
    }

    json pairs = json::object();
    for (int top = 1; top < 5; ++top) {
        for (int bottom = 0; bottom < top; ++bottom) {
            const gbf::BayesFactorResult r =
                anova_bf(data, submodel(design, tags[top]),
                         submodel(design, tags[bottom]), hp);
            pairs[std::string(submodel_name(tags[top])) + "_vs_" +
                  submodel_name(tags[bottom])] = bf_result_json(r);
        }
    }

    // Posterior weights under a uniform model prior.
    double max_lbf = null_based[0];
    for (double v : null_based) max_lbf = std::max(max_lbf, v);
    double total = 0.0;
    for (double v : null_based) total += std::exp(v - max_lbf);
    json weights = json::object();
    for (int k = 0; k < 5; ++k) {
        weights[submodel_name(tags[k])] = std::exp(null_based[k] - max_lbf) / total;
    }

    // Boundary for the full-vs-additive comparison: the per-cell count plays
    // the dimension-ratio role, so it needs per_cell > 1 and a positive
    // combined main-effect distance.
    const double sigma2 = sigma * sigma;
    const AnovaSubmodel m1 = submodel(design, Submodel::m1);
    const AnovaSubmodel m2 = submodel(design, Submodel::m2);
    const std::vector<double> beta_a(beta.begin(), beta.begin() + pa);
    const std::vector<double> beta_b(beta.begin() + pa, beta.begin() + pa + qb);
    const double delta_10 = gbf::projection_quadform(
        data, m1.spec, gbf::ModelSpec::null_model(), beta_a, sigma2);
    const double delta_20 = gbf::projection_quadform(
        data, m2.spec, gbf::ModelSpec::null_model(), beta_b, sigma2);

    json boundary;
    if (per_cell > 1 && delta_10 + delta_20 > 0.0) {
        const double c = delta_10 + delta_20;
        const double r_ratio = static_cast<double>(per_cell);
        const double h = m4_consistency_boundary(r_ratio, delta_10, delta_20);
        boundary = {{"r", r_ratio},
                    {"delta_10", delta_10},
                    {"delta_20", delta_20},
                    {"h_root", h},
                    {"fixed_point_residual",
                     gbf::asymptotics::kappa(r_ratio, c + h) - h}};
        if (per_cell == 2) {
            // quadratic closed form at r = 2
            boundary["closed_form"] = std::sqrt(1.0 + 2.0 * c);
        }
    } else {
        boundary = {{"skipped", per_cell <= 1
                                    ? "per-cell count must exceed 1"
                                    : "no main-effect distance to the null"}};
    }

    json out{{"design",
              {{"levels_a", levels_a},
               {"levels_b", levels_b},
               {"per_cell", per_cell},
               {"n", design.n()}}},
             {"effects", {{"a", effect_a}, {"b", effect_b}, {"ab", effect_ab}}},
             {"sigma", sigma},
             {"seed", seed},
             {"a", a},
             {"fits", fits},
             {"log_bf_pairs", pairs},
             {"posterior_weights", weights},
             {"m4_vs_m3_boundary", boundary}};
    emit_json(std::move(out), deterministic, output);
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"Bayes factors for Gaussian linear model selection under a "
                 "g-prior with a beta-prime prior on g"};
    app.require_subcommand(1);

    bool deterministic = false;
    app.add_flag("--deterministic", deterministic,
                 "suppress the generated_at timestamp in JSON outputs");

    // bf
    auto* bf = app.add_subcommand("bf", "Bayes factor of one model against the null");
    DataOptions bf_opt;
    std::string bf_columns, bf_output;
    bf->add_option("--data", bf_opt.data_path, "CSV dataset (first column y)")
        ->required();
    bf->add_option("--columns", bf_columns,
                   "comma-separated predictor names (empty: null model)");
    bf->add_option("--a", bf_opt.a, "hyperparameter a (> -1)");
    bf->add_option("--output,-o", bf_output, "output path (default stdout)");

    // compare
    auto* compare =
        app.add_subcommand("compare", "pairwise Bayes factor of two models");
    DataOptions cmp_opt;
    std::string cmp_j, cmp_i, cmp_output;
    compare->add_option("--data", cmp_opt.data_path, "CSV dataset")->required();
    compare->add_option("--model-j", cmp_j, "predictor names of the first model");
    compare->add_option("--model-i", cmp_i, "predictor names of the second model");
    compare->add_option("--a", cmp_opt.a, "hyperparameter a (> -1)");
    compare->add_option("--output,-o", cmp_output, "output path (default stdout)");

    // regions
    auto* regions =
        app.add_subcommand("regions", "tabulate consistency-region boundary curves");
    std::string reg_scenario = "s2", reg_r, reg_s, reg_delta = "0.5,20";
    std::string reg_format = "csv", reg_output;
    bool reg_strict = false;
    regions->add_option("--scenario", reg_scenario, "s2 or s3");
    regions->add_option("--r-grid", reg_r, "r values: lo:hi:count or list")
        ->required();
    regions->add_option("--s-grid", reg_s, "s values (s3 only)");
    regions->add_option("--delta-j0", reg_delta, "delta values: lo:hi:count or list");
    regions->add_flag("--strict", reg_strict, "fail on out-of-domain grid points");
    regions->add_option("--format", reg_format, "csv or json");
    regions->add_option("--output,-o", reg_output, "output path (default stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo plan file");
    std::string sim_plan, sim_json, sim_csv;
    std::optional<std::uint64_t> sim_seed;
    std::optional<int> sim_threads;
    simulate->add_option("--plan", sim_plan, "plan JSON file")->required();
    simulate->add_option("--seed", sim_seed, "override the plan's seed");
    simulate->add_option("--threads", sim_threads,
                         "worker cap (also honors GBF_THREADS)");
    simulate->add_option("--out-json", sim_json, "JSON result path (default stdout)");
    simulate->add_option("--out-csv", sim_csv, "CSV result path");

    // anova
    auto* anova = app.add_subcommand(
        "anova", "two-way balanced ANOVA Bayes factors and boundary report");
    int an_a = 3, an_b = 3, an_cell = 2;
    double an_ea = 0.0, an_eb = 0.0, an_eab = 0.0, an_sigma = 1.0, an_hp = -0.5;
    std::uint64_t an_seed = 1;
    std::string an_output;
    anova->add_option("--levels-a", an_a, "levels of factor A (>= 2)");
    anova->add_option("--levels-b", an_b, "levels of factor B (>= 2)");
    anova->add_option("--per-cell", an_cell, "observations per cell (>= 1)");
    anova->add_option("--effect-a", an_ea, "contrast coefficient for the A block");
    anova->add_option("--effect-b", an_eb, "contrast coefficient for the B block");
    anova->add_option("--effect-ab", an_eab, "contrast coefficient for interactions");
    anova->add_option("--sigma", an_sigma, "noise standard deviation");
    anova->add_option("--seed", an_seed, "RNG seed");
    anova->add_option("--a", an_hp, "hyperparameter a (> -1)");
    anova->add_option("--output,-o", an_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bf->parsed()) return cmd_bf(bf_opt, bf_columns, deterministic, bf_output);
        if (compare->parsed()) {
            return cmd_compare(cmp_opt, cmp_j, cmp_i, deterministic, cmp_output);
        }
        if (regions->parsed()) {
            return cmd_regions(reg_scenario, reg_r, reg_s, reg_delta, reg_strict,
                               reg_format, deterministic, reg_output);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_plan, sim_seed, sim_threads, sim_json, sim_csv,
                                deterministic);
        }
        if (anova->parsed()) {
            return cmd_anova(an_a, an_b, an_cell, an_ea, an_eb, an_eab, an_sigma,
                             an_seed, an_hp, deterministic, an_output);
        }
    } catch (const gbf::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gbf::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
