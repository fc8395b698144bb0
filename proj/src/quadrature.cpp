#include "gbf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "gbf/errors.hpp"

namespace gbf::quad {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (positive half; the rule is symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double lo, hi;
    double value;
    double err;
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);

    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    kronrod *= half;
    gauss *= half;

    if (!std::isfinite(kronrod)) {
        throw QuadratureError("integrand produced a non-finite value");
    }
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double abs_tol, int max_panels) {
    auto worse = [](const Panel& a, const Panel& b) { return a.err < b.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);

    Panel whole = gk15(f, lo, hi);
    double total_err = whole.err;
    queue.push(whole);
    int panels = 1;

    while (total_err > abs_tol) {
        if (panels >= max_panels) {
            throw QuadratureError("adaptive quadrature did not converge within " +
                                  std::to_string(max_panels) + " panels");
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            throw QuadratureError("adaptive quadrature stalled on a degenerate panel");
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    // Accumulate panels in position order so the result does not depend on
    // the heap's internal layout.
    std::vector<Panel> all;
    all.reserve(static_cast<std::size_t>(panels));
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double value = 0.0;
    double carry = 0.0;
    for (const Panel& p : all) {
        // Kahan compensation
        const double y = p.value - carry;
        const double t = value + y;
        carry = (t - value) - y;
        value = t;
    }
    return {value, total_err, panels};
}

}  // namespace gbf::quad
