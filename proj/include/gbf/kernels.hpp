#pragma once

// Vectorized arithmetic kernels used by the dense linear-algebra layer and
// the simulation inner loops.
//
// Every kernel has a scalar reference implementation plus optional SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime from
// CPU capabilities. The environment variable GBF_KERNELS overrides the
// selection with one of: auto, scalar, avx2, neon.
//
// SIMD variants reassociate floating-point sums, so reductions may differ
// from the scalar reference by a few ulps; the equivalence tests bound that
// difference. Within one process the selected backend is fixed, so results
// are deterministic for a given machine and environment.

#include <cassert>
#include <cstddef>
#include <span>

namespace gbf::kernels {

enum class Backend { scalar, avx2, neon };

struct Ops {
    double (*dot)(const double* x, const double* y, std::size_t n) noexcept;
    double (*sum)(const double* x, std::size_t n) noexcept;
    double (*sumsq)(const double* x, std::size_t n) noexcept;
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n) noexcept;
    // x *= a
    void (*scal)(double a, double* x, std::size_t n) noexcept;
    // x += a
    void (*shift)(double a, double* x, std::size_t n) noexcept;
};

// Scalar reference kernels; always available.
const Ops& scalar_ops() noexcept;

// Kernel table for a specific backend, or nullptr when the backend was not
// compiled in or the CPU lacks the required instructions.
const Ops* ops_for(Backend backend) noexcept;

// Backend chosen for this process (resolves GBF_KERNELS on first use).
// Throws ValidationError if GBF_KERNELS names an unknown or unavailable
// backend.
Backend active_backend();
const Ops& active();

const char* backend_name(Backend backend) noexcept;

// -- span convenience wrappers ---------------------------------------------

inline double dot(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    return active().dot(x.data(), y.data(), x.size());
}

inline double sum(std::span<const double> x) {
    return active().sum(x.data(), x.size());
}

inline double sumsq(std::span<const double> x) {
    return active().sumsq(x.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    active().axpy(a, x.data(), y.data(), x.size());
}

inline void scal(double a, std::span<double> x) {
    active().scal(a, x.data(), x.size());
}

inline void shift(double a, std::span<double> x) {
    active().shift(a, x.data(), x.size());
}

}  // namespace gbf::kernels
