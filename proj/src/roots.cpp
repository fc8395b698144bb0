#include "gbf/roots.hpp"

#include <cmath>
#include <limits>

#include "gbf/errors.hpp"

namespace gbf::roots {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, int max_iter) {
    if (!(lo < hi)) throw ValidationError("root bracket must satisfy lo < hi");
    double fa = f(lo);
    double fb = f(hi);
    if (fa == 0.0) return lo;
    if (fb == 0.0) return hi;
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        throw ValidationError("root bracket endpoints evaluate non-finite");
    }
    if ((fa < 0.0) == (fb < 0.0)) {
        throw ValidationError("root bracket does not enclose a sign change");
    }

    double a = lo, b = hi;
    for (int iter = 0; iter < max_iter; ++iter) {
        const double width = b - a;
        const double tol = x_tol + std::numeric_limits<double>::epsilon() *
                                       std::max(std::abs(a), std::abs(b));
        if (width <= tol) return 0.5 * (a + b);

        // Secant proposal from the bracket endpoints; fall back to bisection
        // when it leaves the central part of the bracket.
        double x = a - fa * width / (fb - fa);
        const double margin = 0.01 * width;
        if (!(x > a + margin && x < b - margin)) x = 0.5 * (a + b);

        const double fx = f(x);
        if (fx == 0.0) return x;
        if (!std::isfinite(fx)) throw RootError("function value became non-finite");
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    throw RootError("root finder failed to converge in " + std::to_string(max_iter) +
                    " iterations");
}

}  // namespace gbf::roots
