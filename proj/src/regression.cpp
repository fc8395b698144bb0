#include "gbf/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gbf/errors.hpp"
#include "gbf/kernels.hpp"

namespace gbf {

namespace ker = gbf::kernels;

// ---------------------------------------------------------------------------
// ModelSpec
// ---------------------------------------------------------------------------

ModelSpec::ModelSpec(std::vector<int> columns) : columns_(std::move(columns)) {
    std::sort(columns_.begin(), columns_.end());
    for (std::size_t k = 0; k < columns_.size(); ++k) {
        if (columns_[k] < 1) {
            throw ValidationError("model columns are 1-based; got " +
                                  std::to_string(columns_[k]));
        }
        if (k > 0 && columns_[k] == columns_[k - 1]) {
            throw ValidationError("duplicate model column " +
                                  std::to_string(columns_[k]));
        }
    }
}

bool ModelSpec::contains(const ModelSpec& inner) const {
    return std::includes(columns_.begin(), columns_.end(), inner.columns_.begin(),
                         inner.columns_.end());
}

void ModelSpec::validate_for(int p) const {
    if (!columns_.empty() && columns_.back() > p) {
        throw ValidationError("model column " + std::to_string(columns_.back()) +
                              " exceeds predictor count " + std::to_string(p));
    }
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

Dataset::Dataset(std::vector<double> y, linalg::Matrix x)
    : y_(std::move(y)), x_(std::move(x)) {
    const std::size_t n = y_.size();
    if (x_.rows() != n) {
        throw ValidationError("response length " + std::to_string(n) +
                              " does not match design rows " +
                              std::to_string(x_.rows()));
    }
    if (n < x_.cols() + 2) {
        throw ValidationError("need n >= p + 2; got n = " + std::to_string(n) +
                              ", p = " + std::to_string(x_.cols()));
    }
    for (double v : y_) {
        if (!std::isfinite(v)) throw ValidationError("non-finite response value");
    }
    for (std::size_t c = 0; c < x_.cols(); ++c) {
        auto col = x_.col(c);
        double maxabs = 0.0;
        for (double v : col) {
            if (!std::isfinite(v)) throw ValidationError("non-finite design value");
            maxabs = std::max(maxabs, std::abs(v));
        }
        const double mean = ker::sum(col) / static_cast<double>(n);
        if (std::abs(mean) > 1e-12 * std::max(maxabs, 1.0)) {
            throw ValidationError("design column " + std::to_string(c + 1) +
                                  " is not centered");
        }
    }
}

Dataset Dataset::from_raw(std::vector<double> y, linalg::Matrix raw_design) {
    return Dataset(std::move(y), center_columns(std::move(raw_design)));
}

Dataset Dataset::from_centered(std::vector<double> y, linalg::Matrix design) {
    return Dataset(std::move(y), std::move(design));
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

linalg::Matrix center_columns(linalg::Matrix raw_design) {
    const std::size_t n = raw_design.rows();
    if (n < 2) throw ValidationError("centering requires at least two rows");
    for (std::size_t c = 0; c < raw_design.cols(); ++c) {
        auto col = raw_design.col(c);
        for (double v : col) {
            if (!std::isfinite(v)) {
                throw ValidationError("non-finite entry in design column " +
                                      std::to_string(c + 1));
            }
        }
        ker::shift(-ker::sum(col) / static_cast<double>(n), col);
    }
    return raw_design;
}

namespace {

constexpr double kRankTol = 1e-10;

linalg::Matrix gather_columns(const Dataset& data, const ModelSpec& spec) {
    const std::size_t n = static_cast<std::size_t>(data.n());
    linalg::Matrix sub(n, static_cast<std::size_t>(spec.dim()));
    for (int k = 0; k < spec.dim(); ++k) {
        auto src = data.x().col(static_cast<std::size_t>(spec.columns()[k] - 1));
        std::copy(src.begin(), src.end(), sub.col(static_cast<std::size_t>(k)).begin());
    }
    return sub;
}

std::vector<double> centered_response(const Dataset& data) {
    std::vector<double> yc = data.y();
    ker::shift(-ker::sum(yc) / static_cast<double>(yc.size()), yc);
    return yc;
}

void require_full_rank(const linalg::HouseholderQr& qr, const char* what) {
    if (linalg::rank_ratio(qr.r_factor()) < kRankTol) {
        throw SingularDesignError(std::string(what) +
                                  " submatrix is rank deficient");
    }
}

}  // namespace

FitSummary fit(const Dataset& data, const ModelSpec& model) {
    model.validate_for(data.p());
    const int n = data.n();
    const int j = model.dim();

    std::vector<double> yc = centered_response(data);
    const double tss = ker::sumsq(yc);
    if (!(tss > 0.0)) {
        throw ValidationError("response is constant; R^2 is undefined");
    }
    if (j == 0) return {0.0, tss, tss, 0, model};
    if (j >= n - 1) {
        throw ValidationError("model dimension " + std::to_string(j) +
                              " leaves no residual degrees of freedom at n = " +
                              std::to_string(n));
    }

    linalg::HouseholderQr qr(gather_columns(data, model));
    require_full_rank(qr, "model");
    qr.apply_qt(yc);
    const double rss = ker::sumsq(std::span<const double>(yc).subspan(
        static_cast<std::size_t>(j)));
    const double r2 = std::max(1.0 - rss / tss, 0.0);
    return {r2, rss, tss, j, model};
}

double projection_quadform(const Dataset& data, const ModelSpec& numer,
                           const ModelSpec& denom, std::span<const double> beta,
                           double sigma2) {
    numer.validate_for(data.p());
    denom.validate_for(data.p());
    if (static_cast<int>(beta.size()) != numer.dim()) {
        throw ValidationError("beta length " + std::to_string(beta.size()) +
                              " does not match numerator dimension " +
                              std::to_string(numer.dim()));
    }
    if (!(sigma2 > 0.0)) throw ValidationError("sigma2 must be positive");

    const std::size_t n = static_cast<std::size_t>(data.n());
    std::vector<double> v(n, 0.0);
    for (int k = 0; k < numer.dim(); ++k) {
        ker::axpy(beta[static_cast<std::size_t>(k)],
                  data.x().col(static_cast<std::size_t>(numer.columns()[k] - 1)), v);
    }

    double quad = 0.0;
    if (denom.dim() == 0) {
        quad = ker::sumsq(v);
    } else {
        linalg::HouseholderQr qr(gather_columns(data, denom));
        require_full_rank(qr, "denominator");
        qr.apply_qt(v);
        quad = ker::sumsq(std::span<const double>(v).subspan(
            static_cast<std::size_t>(denom.dim())));
    }
    return quad / (static_cast<double>(n) * sigma2);
}

}  // namespace gbf
