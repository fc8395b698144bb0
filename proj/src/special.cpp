#include "gbf/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gbf/errors.hpp"

namespace gbf::special {

namespace {

// Lanczos coefficients for g = 7.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double log_gamma_lanczos(double x) {
    // valid for x >= 0.5
    x -= 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (x + i);
    const double t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t +
           std::log(series);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw ValidationError("log_gamma requires x > 0, got " + std::to_string(x));
    }
    if (x < 0.5) {
        // reflection: G(x) G(1-x) = pi / sin(pi x)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
               log_gamma_lanczos(1.0 - x);
    }
    return log_gamma_lanczos(x);
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double stirling_log_gamma(double gamma1, double gamma2, double x) {
    if (!(gamma1 > 0.0) || !(x > 0.0)) {
        throw ValidationError("stirling_log_gamma requires gamma1 > 0 and x > 0");
    }
    const double gx = gamma1 * x;
    if (!(gx + gamma2 > 0.0)) {
        throw ValidationError("stirling_log_gamma requires gamma1*x + gamma2 > 0");
    }
    return 0.5 * std::log(2.0 * std::numbers::pi) - gx +
           (gx + gamma2 - 0.5) * std::log(gx);
}

}  // namespace gbf::special
