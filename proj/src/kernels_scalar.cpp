#include "gbf/kernels.hpp"

// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against: plain left-to-right accumulation, no blocking.

namespace gbf::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * y[k];
    return acc;
}

double sum_scalar(const double* x, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k];
    return acc;
}

double sumsq_scalar(const double* x, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * x[k];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void scal_scalar(double a, double* x, std::size_t n) noexcept {
    for (std::size_t k = 0; k < n; ++k) x[k] *= a;
}

void shift_scalar(double a, double* x, std::size_t n) noexcept {
    for (std::size_t k = 0; k < n; ++k) x[k] += a;
}

}  // namespace

const Ops& scalar_ops() noexcept {
    static constexpr Ops ops{dot_scalar, sum_scalar,  sumsq_scalar,
                             axpy_scalar, scal_scalar, shift_scalar};
    return ops;
}

}  // namespace gbf::kernels
