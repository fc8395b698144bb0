#include "gbf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "gbf/errors.hpp"
#include "gbf/kernels.hpp"

namespace gbf::linalg {

namespace ker = gbf::kernels;

// ---------------------------------------------------------------------------
// Householder QR
// ---------------------------------------------------------------------------

HouseholderQr::HouseholderQr(Matrix a) : qr_(std::move(a)), tau_(qr_.cols(), 0.0) {
    const std::size_t n = qr_.rows();
    const std::size_t k = qr_.cols();
    if (n < k) throw ValidationError("QR requires rows >= cols");

    for (std::size_t c = 0; c < k; ++c) {
        auto colc = qr_.col(c);
        const double x0 = colc[c];
        auto tail = colc.subspan(c + 1);
        const double sigma = ker::sumsq(tail);
        const double mu = std::sqrt(x0 * x0 + sigma);
        if (mu == 0.0) {
            tau_[c] = 0.0;  // zero column; reflector is the identity
            continue;
        }
        // LAPACK-style reflector: H x = beta e1, v0 = 1, tau = (beta - x0)/beta.
        const double beta = (x0 > 0.0) ? -mu : mu;
        tau_[c] = (beta - x0) / beta;
        ker::scal(1.0 / (x0 - beta), tail);
        colc[c] = beta;

        for (std::size_t d = c + 1; d < k; ++d) {
            auto cold = qr_.col(d);
            auto dtail = cold.subspan(c + 1);
            double w = tau_[c] * (cold[c] + ker::dot(tail, dtail));
            cold[c] -= w;
            ker::axpy(-w, tail, dtail);
        }
    }
}

void HouseholderQr::apply_qt(std::span<double> y) const {
    const std::size_t n = rows();
    const std::size_t k = cols();
    if (y.size() != n) throw ValidationError("apply_qt: vector length mismatch");
    for (std::size_t c = 0; c < k; ++c) {
        if (tau_[c] == 0.0) continue;
        auto v = qr_.col(c).subspan(c + 1);
        auto ytail = y.subspan(c + 1);
        double w = tau_[c] * (y[c] + ker::dot(v, ytail));
        y[c] -= w;
        ker::axpy(-w, v, ytail);
    }
}

void HouseholderQr::apply_q(std::span<double> y) const {
    const std::size_t n = rows();
    const std::size_t k = cols();
    if (y.size() != n) throw ValidationError("apply_q: vector length mismatch");
    for (std::size_t c = k; c-- > 0;) {
        if (tau_[c] == 0.0) continue;
        auto v = qr_.col(c).subspan(c + 1);
        auto ytail = y.subspan(c + 1);
        double w = tau_[c] * (y[c] + ker::dot(v, ytail));
        y[c] -= w;
        ker::axpy(-w, v, ytail);
    }
}

Matrix HouseholderQr::r_factor() const {
    const std::size_t k = cols();
    Matrix r(k, k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t row = 0; row <= c; ++row) r(row, c) = qr_(row, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Singular values (one-sided Jacobi)
// ---------------------------------------------------------------------------

std::vector<double> singular_values(Matrix a) {
    const std::size_t k = a.cols();
    const std::size_t n = a.rows();
    constexpr int kMaxSweeps = 60;
    constexpr double kTol = 1e-15;

    for (int sweep = 0; sweep < kMaxSweeps && k > 1; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                auto cp = a.col(p);
                auto cq = a.col(q);
                const double alpha = ker::sumsq(cp);
                const double beta = ker::sumsq(cq);
                const double gamma = ker::dot(cp, cq);
                if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t row = 0; row < n; ++row) {
                    const double vp = cp[row];
                    const double vq = cq[row];
                    cp[row] = c * vp - s * vq;
                    cq[row] = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(k);
    for (std::size_t c = 0; c < k; ++c) sv[c] = std::sqrt(ker::sumsq(a.col(c)));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double rank_ratio(const Matrix& a) {
    auto sv = singular_values(a);
    if (sv.empty() || sv.front() == 0.0) return 0.0;
    return sv.back() / sv.front();
}

// ---------------------------------------------------------------------------
// Gram-Schmidt with reorthogonalization
// ---------------------------------------------------------------------------

void orthonormalize_columns(Matrix& a) {
    const std::size_t k = a.cols();
    for (std::size_t c = 0; c < k; ++c) {
        auto v = a.col(c);
        const double norm0 = std::sqrt(ker::sumsq(v));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < c; ++j) {
                auto qj = a.col(j);
                ker::axpy(-ker::dot(qj, v), qj, v);
            }
        }
        const double norm = std::sqrt(ker::sumsq(v));
        if (!(norm > 1e-12 * std::max(norm0, 1.0))) {
            throw SingularDesignError("column " + std::to_string(c + 1) +
                                      " is linearly dependent on its predecessors");
        }
        ker::scal(1.0 / norm, v);
    }
}

}  // namespace gbf::linalg
