// NEON kernel variants for aarch64. Baseline on that architecture, so no
// runtime CPU check is needed beyond the compile-time guard.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "gbf/kernels.hpp"

namespace gbf::kernels {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n) noexcept {
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    float64x2_t a2 = vdupq_n_f64(0.0);
    float64x2_t a3 = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        a0 = vfmaq_f64(a0, vld1q_f64(x + k), vld1q_f64(y + k));
        a1 = vfmaq_f64(a1, vld1q_f64(x + k + 2), vld1q_f64(y + k + 2));
        a2 = vfmaq_f64(a2, vld1q_f64(x + k + 4), vld1q_f64(y + k + 4));
        a3 = vfmaq_f64(a3, vld1q_f64(x + k + 6), vld1q_f64(y + k + 6));
    }
    for (; k + 2 <= n; k += 2) {
        a0 = vfmaq_f64(a0, vld1q_f64(x + k), vld1q_f64(y + k));
    }
    double acc = vaddvq_f64(vaddq_f64(vaddq_f64(a0, a1), vaddq_f64(a2, a3)));
    for (; k < n; ++k) acc += x[k] * y[k];
    return acc;
}

double sum_neon(const double* x, std::size_t n) noexcept {
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        a0 = vaddq_f64(a0, vld1q_f64(x + k));
        a1 = vaddq_f64(a1, vld1q_f64(x + k + 2));
    }
    for (; k + 2 <= n; k += 2) a0 = vaddq_f64(a0, vld1q_f64(x + k));
    double acc = vaddvq_f64(vaddq_f64(a0, a1));
    for (; k < n; ++k) acc += x[k];
    return acc;
}

double sumsq_neon(const double* x, std::size_t n) noexcept {
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        float64x2_t v0 = vld1q_f64(x + k);
        float64x2_t v1 = vld1q_f64(x + k + 2);
        a0 = vfmaq_f64(a0, v0, v0);
        a1 = vfmaq_f64(a1, v1, v1);
    }
    for (; k + 2 <= n; k += 2) {
        float64x2_t v = vld1q_f64(x + k);
        a0 = vfmaq_f64(a0, v, v);
    }
    double acc = vaddvq_f64(vaddq_f64(a0, a1));
    for (; k < n; ++k) acc += x[k] * x[k];
    return acc;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) noexcept {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), av, vld1q_f64(x + k)));
    }
    for (; k < n; ++k) y[k] += a * x[k];
}

void scal_neon(double a, double* x, std::size_t n) noexcept {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        vst1q_f64(x + k, vmulq_f64(av, vld1q_f64(x + k)));
    }
    for (; k < n; ++k) x[k] *= a;
}

void shift_neon(double a, double* x, std::size_t n) noexcept {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        vst1q_f64(x + k, vaddq_f64(av, vld1q_f64(x + k)));
    }
    for (; k < n; ++k) x[k] += a;
}

}  // namespace

const Ops* neon_ops() noexcept {
    static constexpr Ops ops{dot_neon, sum_neon,  sumsq_neon,
                             axpy_neon, scal_neon, shift_neon};
    return &ops;
}

}  // namespace gbf::kernels

#endif  // aarch64
