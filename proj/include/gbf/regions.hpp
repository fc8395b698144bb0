#pragma once

// Tabulated consistency-region boundaries for plotting and comparison:
// one row per grid point with every applicable boundary function evaluated
// at that point's delta value.

#include <optional>
#include <vector>

#include "gbf/asymptotics.hpp"

namespace gbf::asymptotics {

struct RegionRow {
    double r = 0.0;
    std::optional<double> s;  // S3 only
    double delta = 0.0;       // interpreted as the relevant delta_*0
    double delta_threshold = 0.0;
    double kappa = 0.0;
    double xi = 0.0;
    double eta = 0.0;
    std::optional<double> phi;        // S3 only
    std::optional<double> t5a_lower;  // S3 only
    std::optional<bool> t5a_cond;     // S3 only
    std::optional<bool> t5b_cond;     // S3 only
};

struct RegionTableRequest {
    Scenario scenario = Scenario::s2;
    std::vector<double> r_grid;
    std::vector<double> s_grid;      // S3 only; paired with r by cartesian
                                     // product, keeping r <= s
    std::vector<double> delta_grid;  // delta_*0 values
    bool strict = false;             // throw on a domain violation instead of
                                     // skipping the row
};

std::vector<RegionRow> regions_table(const RegionTableRequest& request);

}  // namespace gbf::asymptotics
