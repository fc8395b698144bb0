#pragma once

// Bracketed scalar root finding: bisection safeguarded by secant steps.

#include <functional>

namespace gbf::roots {

// Finds x in [lo, hi] with f(x) = 0, where f(lo) and f(hi) have opposite
// signs. Stops when the bracket width falls below x_tol (absolute, with a
// relative floor at machine precision). Throws ValidationError on a bad
// bracket and RootError when max_iter is exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, int max_iter = 200);

}  // namespace gbf::roots
