#include "gbf/anova.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gbf/asymptotics.hpp"
#include "gbf/errors.hpp"
#include "gbf/roots.hpp"

namespace gbf::anova {

void TwoWayDesign::validate() const {
    if (p < 2 || q < 2) {
        throw ValidationError("two-way design needs at least two levels per factor");
    }
    if (r_cell < 1) {
        throw ValidationError("two-way design needs at least one observation per cell");
    }
}

linalg::Matrix build_design(const TwoWayDesign& design) {
    design.validate();
    const int p = design.p;
    const int q = design.q;
    const int n = design.n();
    linalg::Matrix x(static_cast<std::size_t>(n),
                     static_cast<std::size_t>(p * q - 1));

    auto a_contrast = [p](int level, int k) {
        return level == k ? 1.0 : (level == p - 1 ? -1.0 : 0.0);
    };
    auto b_contrast = [q](int level, int l) {
        return level == l ? 1.0 : (level == q - 1 ? -1.0 : 0.0);
    };

    std::size_t row = 0;
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < q; ++b) {
            for (int rep = 0; rep < design.r_cell; ++rep, ++row) {
                std::size_t col = 0;
                for (int k = 0; k < p - 1; ++k) x(row, col++) = a_contrast(a, k);
                for (int l = 0; l < q - 1; ++l) x(row, col++) = b_contrast(b, l);
                for (int k = 0; k < p - 1; ++k) {
                    for (int l = 0; l < q - 1; ++l) {
                        x(row, col++) = a_contrast(a, k) * b_contrast(b, l);
                    }
                }
            }
        }
    }
    return x;
}

AnovaSubmodel submodel(const TwoWayDesign& design, Submodel tag) {
    design.validate();
    const int pa = design.p - 1;
    const int qb = design.q - 1;
    auto range = [](int first, int count) {
        std::vector<int> cols(static_cast<std::size_t>(count));
        std::iota(cols.begin(), cols.end(), first);
        return cols;
    };
    switch (tag) {
        case Submodel::m0: return {tag, ModelSpec::null_model()};
        case Submodel::m1: return {tag, ModelSpec(range(1, pa))};
        case Submodel::m2: return {tag, ModelSpec(range(pa + 1, qb))};
        case Submodel::m3: return {tag, ModelSpec(range(1, pa + qb))};
        case Submodel::m4: return {tag, ModelSpec(range(1, pa + qb + pa * qb))};
    }
    throw ValidationError("unknown submodel tag");
}

BayesFactorResult anova_bf(const Dataset& data, const AnovaSubmodel& top,
                           const AnovaSubmodel& bottom, const HyperParams& hp) {
    return log_bf_pair(data.n(), fit(data, top.spec), fit(data, bottom.spec), hp);
}

double h_root(double r, double c) {
    if (!(r > 1.0)) throw ValidationError("h_root requires r > 1");
    if (!(c > 0.0)) throw ValidationError("h_root requires c > 0");

    // In u = x + 1: g(u) = u^r / r - u - c, g(1) = 1/r - 1 - c < 0, and g is
    // eventually positive and convex on u > 1, so the positive root is unique.
    auto g = [r, c](double u) { return std::exp(r * std::log(u)) / r - u - c; };
    double hi = 2.0;
    int doublings = 0;
    while (g(hi) <= 0.0) {
        hi *= 2.0;
        if (++doublings > 200) throw RootError("h_root bracket expansion failed");
    }
    double u = roots::find_root(g, 1.0, hi, 1e-13);

    // Newton polish; g'(u) = u^{r-1} - 1 > 0 on the bracket interior.
    for (int k = 0; k < 3; ++k) {
        const double slope = std::exp((r - 1.0) * std::log(u)) - 1.0;
        if (!(slope > 0.0)) break;
        u -= g(u) / slope;
    }
    return u - 1.0;
}

double m4_consistency_boundary(double r, double delta_10, double delta_20) {
    if (!(delta_10 >= 0.0) || !(delta_20 >= 0.0) || delta_10 + delta_20 <= 0.0) {
        throw ValidationError("boundary needs delta_10, delta_20 >= 0, not both zero");
    }
    const double c = delta_10 + delta_20;
    const double x = h_root(r, c);
    // The defining equation rearranges to x = [r (1 + c + x)]^{1/r} - 1.
    const double fixed_point = asymptotics::kappa(r, c + x);
    if (std::abs(x - fixed_point) > 1e-8 * (1.0 + std::abs(x))) {
        throw NumericError("boundary root failed the fixed-point cross-check");
    }
    return x;
}

}  // namespace gbf::anova
