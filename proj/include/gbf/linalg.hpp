#pragma once

// Small dense linear-algebra layer: column-major matrices, economy
// Householder QR, one-sided Jacobi singular values and Gram-Schmidt
// orthonormalization. Columns are contiguous, so the inner loops run on the
// vector kernels.

#include <cstddef>
#include <span>
#include <vector>

namespace gbf::linalg {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    std::span<double> col(std::size_t c) {
        return {data_.data() + c * rows_, rows_};
    }
    std::span<const double> col(std::size_t c) const {
        return {data_.data() + c * rows_, rows_};
    }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Economy Householder QR of an n x k matrix, n >= k. The factored form keeps
// R in the upper triangle and the reflector tails below the diagonal.
class HouseholderQr {
public:
    explicit HouseholderQr(Matrix a);

    std::size_t rows() const noexcept { return qr_.rows(); }
    std::size_t cols() const noexcept { return qr_.cols(); }

    // y <- Q' y and y <- Q y for a full-length vector (size rows()).
    void apply_qt(std::span<double> y) const;
    void apply_q(std::span<double> y) const;

    // The k x k upper-triangular factor.
    Matrix r_factor() const;

private:
    Matrix qr_;
    std::vector<double> tau_;
};

// Singular values of an arbitrary matrix via one-sided Jacobi, sorted
// descending. Intended for the small factors used in rank checks.
std::vector<double> singular_values(Matrix a);

// Ratio smallest/largest singular value, 0 for an all-zero matrix.
double rank_ratio(const Matrix& a);

// In-place Gram-Schmidt with reorthogonalization; columns end up orthonormal
// to near machine precision. Throws SingularDesignError when a column is
// (numerically) dependent on its predecessors.
void orthonormalize_columns(Matrix& a);

}  // namespace gbf::linalg
