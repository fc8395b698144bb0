#pragma once

// Special functions needed by the Bayes-factor kernel.

namespace gbf::special {

/// Natural log of the gamma function for x > 0, Lanczos approximation
/// (g = 7, 9 terms) with the reflection formula below 0.5. Relative accuracy
/// is better than 1e-13 across (0, 1e4]; verified against recurrence and
/// reflection identities in the tests.
double log_gamma(double x);

/// log B(a, b) = log G(a) + log G(b) - log G(a+b), a, b > 0.
double log_beta(double a, double b);

/// Log of the large-x gamma approximation
///   G(g1 x + g2) ~ sqrt(2 pi) e^{-g1 x} (g1 x)^{g1 x + g2 - 1/2},
/// i.e. 0.5 log(2 pi) - g1 x + (g1 x + g2 - 1/2) log(g1 x).
/// Requires g1 > 0, x > 0 and g1 x + g2 > 0.
double stirling_log_gamma(double gamma1, double gamma2, double x);

}  // namespace gbf::special
