#pragma once

// Bayes factors for Gaussian linear submodels under a g-prior on the
// coefficients with a beta-prime prior on g whose second shape is tied to the
// sample and model size, b = (n - j - 1)/2 - a - 2. That tie makes the
// marginal over g collapse to a closed form:
//
//   BF[M_j : M_0] = G(j/2 + a + 1) G((n-j-1)/2) / (G(a+1) G((n-1)/2))
//                   * (1 - R_j^2)^{-(n-j-1)/2 + a + 1}.
//
// Everything is computed and reported in natural-log space; the linear-scale
// value overflows for n in the hundreds.

#include "gbf/regression.hpp"

namespace gbf {

struct HyperParams {
    // First beta-prime shape parameter; a = -1/2 gives Cauchy-like tails.
    double a = -0.5;

    // Second shape implied by (n, j).
    double b(int n, int j) const { return 0.5 * (n - j - 1) - a - 2.0; }

    // Requires a > -1 and b > -1, i.e. n > j + 2a + 3.
    void validate(int n, int j) const;
};

struct BayesFactorResult {
    double log_bf = 0.0;      // = gamma_term + fit_term
    double gamma_term = 0.0;  // log of the gamma-function ratio
    double fit_term = 0.0;    // log of the (1 - R^2) power term
    ModelSpec model;
    ModelSpec base;
};

// log BF[model : M_0] from the closed form above.
BayesFactorResult log_bf_vs_null(int n, const FitSummary& fit, const HyperParams& hp);

// log BF[M_j : M_i] = log BF[M_j : M_0] - log BF[M_i : M_0]; valid for
// nonnested pairs since both share the null base.
BayesFactorResult log_bf_pair(int n, const FitSummary& fit_j,
                              const FitSummary& fit_i, const HyperParams& hp);

// Schwarz (BIC-style) approximation -(j/2) log n - (n/2) log(1 - R^2);
// asymptotically equivalent to the closed form for fixed j.
double log_bf_schwarz(int n, const FitSummary& fit);

// Conditional log Bayes factor for a fixed scaling g:
//   ((n-1-j)/2) log(1+g) - ((n-1)/2) log(1 + g (1 - R^2)).
double log_bf_given_g(int n, const FitSummary& fit, double g);

// Independent check of the closed form: integrates exp(log_bf_given_g)
// against the beta-prime prior. The substitution u = g/(1+g) turns the prior
// into a Beta(b+1, a+1) density on (0,1); the integral runs in a shifted log
// scale through adaptive quadrature (absolute tolerance 1e-10 on the scaled
// integrand). Throws QuadratureError instead of returning a bad value.
double log_bf_oracle_quadrature(int n, const FitSummary& fit, const HyperParams& hp);

}  // namespace gbf
