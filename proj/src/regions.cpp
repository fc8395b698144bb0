#include "gbf/regions.hpp"

#include "gbf/errors.hpp"

namespace gbf::asymptotics {

std::vector<RegionRow> regions_table(const RegionTableRequest& request) {
    if (request.r_grid.empty() || request.delta_grid.empty()) {
        throw ValidationError("regions table needs a nonempty r grid and delta grid");
    }
    if (request.scenario == Scenario::s1) {
        throw ValidationError("S1 has no boundary curves; choose s2 or s3");
    }
    const bool s3 = request.scenario == Scenario::s3;
    if (s3 && request.s_grid.empty()) {
        throw ValidationError("S3 regions table needs an s grid");
    }

    std::vector<RegionRow> rows;
    auto emit = [&](double r, std::optional<double> s, double delta) {
        try {
            RegionRow row;
            row.r = r;
            row.s = s;
            row.delta = delta;
            row.delta_threshold = delta_threshold(r);
            row.kappa = kappa(r, delta);
            row.xi = xi(r);
            row.eta = eta(r, delta);
            if (s) {
                row.phi = phi(r, *s, delta);
                row.t5a_lower = t5a_lower_bound(r, *s, delta);
                row.t5a_cond = t5a_condition(r, *s, delta);
                row.t5b_cond = t5b_condition(r, *s, delta);
            }
            rows.push_back(row);
        } catch (const ValidationError&) {
            if (request.strict) throw;
            // out-of-domain grid point; skipped unless --strict
        }
    };

    for (double r : request.r_grid) {
        if (s3) {
            for (double s : request.s_grid) {
                if (s < r) {
                    if (request.strict) {
                        throw ValidationError("S3 grid point has s < r");
                    }
                    continue;
                }
                for (double delta : request.delta_grid) emit(r, s, delta);
            }
        } else {
            for (double delta : request.delta_grid) emit(r, std::nullopt, delta);
        }
    }
    return rows;
}

}  // namespace gbf::asymptotics
