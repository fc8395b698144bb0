#pragma once

// Deterministic linear-model layer: centered designs, least-squares fits
// with an implicit intercept, coefficients of determination and the
// projection quadratic form used as a pseudo-distance between models.

#include <span>
#include <vector>

#include "gbf/linalg.hpp"

namespace gbf {

// A submodel: a sorted, duplicate-free set of 1-based predictor indices.
// An empty set denotes the intercept-only null model.
class ModelSpec {
public:
    ModelSpec() = default;
    explicit ModelSpec(std::vector<int> columns);

    static ModelSpec null_model() { return ModelSpec{}; }

    const std::vector<int>& columns() const noexcept { return columns_; }
    int dim() const noexcept { return static_cast<int>(columns_.size()); }

    // True when every column of `inner` also appears here.
    bool contains(const ModelSpec& inner) const;

    // Throws unless every index lies in [1, p].
    void validate_for(int p) const;

private:
    std::vector<int> columns_;
};

// Response plus centered full-potential design. Construction centers the
// design columns and checks n >= p + 2 so every submodel keeps at least one
// residual degree of freedom after the intercept.
class Dataset {
public:
    // Centers the raw design.
    static Dataset from_raw(std::vector<double> y, linalg::Matrix raw_design);
    // Accepts an already-centered design (column means must vanish to
    // 1e-12 relative to the column scale).
    static Dataset from_centered(std::vector<double> y, linalg::Matrix design);

    int n() const noexcept { return static_cast<int>(y_.size()); }
    int p() const noexcept { return static_cast<int>(x_.cols()); }
    const std::vector<double>& y() const noexcept { return y_; }
    const linalg::Matrix& x() const noexcept { return x_; }

private:
    Dataset(std::vector<double> y, linalg::Matrix x);
    std::vector<double> y_;
    linalg::Matrix x_;
};

struct FitSummary {
    double r_squared = 0.0;
    double rss = 0.0;  // residual sum of squares
    double tss = 0.0;  // total sum of squares about the mean
    int dim = 0;
    ModelSpec spec;
};

// Subtracts the mean from every column. Fails on fewer than two rows or any
// non-finite entry.
linalg::Matrix center_columns(linalg::Matrix raw_design);

// Least squares of y on [1, X_j] via Householder QR. The null model returns
// r_squared = 0 with rss = tss. Rank deficiency of the selected columns
// (smallest singular value below 1e-10 of the largest) raises
// SingularDesignError; dim >= n - 1 raises ValidationError.
FitSummary fit(const Dataset& data, const ModelSpec& model);

// Pseudo-distance between models:
//   (1/sigma2) * beta' X_j' (I - H_i) X_j beta / n,
// where H_i projects onto the span of the centered denominator columns
// (the intercept is orthogonal to every centered column, so it needs no
// explicit column). Zero whenever numer is nested in denom.
double projection_quadform(const Dataset& data, const ModelSpec& numer,
                           const ModelSpec& denom, std::span<const double> beta,
                           double sigma2);

}  // namespace gbf
