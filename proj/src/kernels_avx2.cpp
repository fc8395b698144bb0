// AVX2/FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; it must not be entered unless the CPU reports AVX2.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "gbf/kernels.hpp"

namespace gbf::kernels {

namespace {

inline double hadd4(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) noexcept {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 16 <= n; k += 16) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), a0);
        a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 4), _mm256_loadu_pd(y + k + 4), a1);
        a2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 8), _mm256_loadu_pd(y + k + 8), a2);
        a3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 12), _mm256_loadu_pd(y + k + 12), a3);
    }
    for (; k + 4 <= n; k += 4) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), a0);
    }
    double acc = hadd4(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3)));
    for (; k < n; ++k) acc += x[k] * y[k];
    return acc;
}

double sum_avx2(const double* x, std::size_t n) noexcept {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + k));
        a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + k + 4));
    }
    for (; k + 4 <= n; k += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + k));
    double acc = hadd4(_mm256_add_pd(a0, a1));
    for (; k < n; ++k) acc += x[k];
    return acc;
}

double sumsq_avx2(const double* x, std::size_t n) noexcept {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        __m256d v0 = _mm256_loadu_pd(x + k);
        __m256d v1 = _mm256_loadu_pd(x + k + 4);
        a0 = _mm256_fmadd_pd(v0, v0, a0);
        a1 = _mm256_fmadd_pd(v1, v1, a1);
    }
    for (; k + 4 <= n; k += 4) {
        __m256d v = _mm256_loadu_pd(x + k);
        a0 = _mm256_fmadd_pd(v, v, a0);
    }
    double acc = hadd4(_mm256_add_pd(a0, a1));
    for (; k < n; ++k) acc += x[k] * x[k];
    return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) noexcept {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        _mm256_storeu_pd(y + k, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k),
                                                _mm256_loadu_pd(y + k)));
        _mm256_storeu_pd(y + k + 4, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k + 4),
                                                    _mm256_loadu_pd(y + k + 4)));
    }
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(y + k, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k),
                                                _mm256_loadu_pd(y + k)));
    }
    for (; k < n; ++k) y[k] += a * x[k];
}

void scal_avx2(double a, double* x, std::size_t n) noexcept {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(x + k, _mm256_mul_pd(av, _mm256_loadu_pd(x + k)));
    }
    for (; k < n; ++k) x[k] *= a;
}

void shift_avx2(double a, double* x, std::size_t n) noexcept {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(x + k, _mm256_add_pd(av, _mm256_loadu_pd(x + k)));
    }
    for (; k < n; ++k) x[k] += a;
}

}  // namespace

const Ops* avx2_ops() noexcept {
    static constexpr Ops ops{dot_avx2, sum_avx2,  sumsq_avx2,
                             axpy_avx2, scal_avx2, shift_avx2};
    return &ops;
}

}  // namespace gbf::kernels

#endif  // x86
