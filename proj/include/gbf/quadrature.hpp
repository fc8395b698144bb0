#pragma once

// Adaptive one-dimensional quadrature on a finite interval: 15-point
// Gauss-Kronrod panels, worst-panel bisection until the summed error
// estimate meets the tolerance.

#include <functional>

namespace gbf::quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// Integrates f over [lo, hi] to the requested absolute tolerance. Throws
// QuadratureError when the estimate does not converge within `max_panels`
// or the integrand produces a non-finite value.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double abs_tol, int max_panels = 8192);

}  // namespace gbf::quad
