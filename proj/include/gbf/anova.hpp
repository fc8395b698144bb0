#pragma once

// Two-way balanced ANOVA reparameterized into the centered linear model via
// sum-to-zero contrasts, the five standard submodels, and the boundary
// function for consistency under the full model.

#include "gbf/bayes_factor.hpp"
#include "gbf/linalg.hpp"
#include "gbf/regression.hpp"

namespace gbf::anova {

struct TwoWayDesign {
    int p = 2;       // levels of factor A
    int q = 2;       // levels of factor B
    int r_cell = 1;  // observations per cell

    int n() const noexcept { return p * q * r_cell; }
    void validate() const;
};

enum class Submodel { m0, m1, m2, m3, m4 };

struct AnovaSubmodel {
    Submodel tag = Submodel::m0;
    ModelSpec spec;
};

// Sum-to-zero contrast design, n x (pq - 1): (p-1) columns for A, (q-1) for
// B, then the (p-1)(q-1) elementwise interaction products. Balance makes
// every column sum to zero exactly and the A and B blocks orthogonal.
// Row order: cell (a, b) varies b fastest, replicates innermost.
linalg::Matrix build_design(const TwoWayDesign& design);

// Column block for each submodel: m0 {} | m1 A | m2 B | m3 A+B | m4 all.
AnovaSubmodel submodel(const TwoWayDesign& design, Submodel tag);

// Pairwise Bayes factor between two submodels on an ANOVA dataset; simply
// the generic pairwise Bayes factor on the reparameterized design.
BayesFactorResult anova_bf(const Dataset& data, const AnovaSubmodel& top,
                           const AnovaSubmodel& bottom, const HyperParams& hp);

// Unique positive root of (x+1)^r / r - (x+1) - c = 0 for r > 1, c > 0.
// Bisection/secant on u = x+1 over a doubling bracket, then Newton polish;
// absolute tolerance 1e-12 on x.
double h_root(double r, double c);

// Consistency boundary for the full-vs-additive comparison:
// h_root(r, delta_10 + delta_20), cross-checked against the fixed-point form
// x = [r (1 + c + x)]^{1/r} - 1 to 1e-8.
double m4_consistency_boundary(double r, double delta_10, double delta_20);

}  // namespace gbf::anova
