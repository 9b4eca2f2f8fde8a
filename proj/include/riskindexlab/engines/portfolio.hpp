#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "riskindexlab/errors.hpp"

namespace riskindexlab {

/// Dense square matrix, row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
    SquareMatrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
        if (data_.size() != n * n) throw InputError("matrix data does not match dimension");
    }

    std::size_t dim() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    bool symmetric(double tol = 1e-10) const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Σ from per-asset volatilities and one common pairwise correlation.
inline SquareMatrix covariance_from(std::span<const double> vols, double rho) {
    SquareMatrix m(vols.size());
    for (std::size_t i = 0; i < vols.size(); ++i)
        for (std::size_t j = 0; j < vols.size(); ++j)
            m(i, j) = (i == j ? 1.0 : rho) * vols[i] * vols[j];
    return m;
}

/// Σ_i Σ_j x_i x_j σ_ij
inline double portfolio_variance(std::span<const double> weights, const SquareMatrix& cov) {
    if (weights.size() != cov.dim()) {
        throw InputError("portfolio_variance: " + std::to_string(weights.size()) +
                         " weights for a " + std::to_string(cov.dim()) + "x" +
                         std::to_string(cov.dim()) + " covariance matrix");
    }
    if (!cov.symmetric()) throw InputError("portfolio_variance: covariance matrix is not symmetric");
    double v = 0.0;
    for (std::size_t i = 0; i < cov.dim(); ++i)
        for (std::size_t j = 0; j < cov.dim(); ++j) v += weights[i] * weights[j] * cov(i, j);
    if (v < -1e-10) throw NumericError("portfolio_variance: negative quadratic form");
    return v < 0.0 ? 0.0 : v;
}

inline double portfolio_volatility(std::span<const double> weights, const SquareMatrix& cov) {
    return std::sqrt(portfolio_variance(weights, cov));
}

/// Population covariance of the columns in `rows[t][i]` (observation t, asset i).
inline SquareMatrix sample_covariance(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InputError("sample_covariance: no observations");
    const std::size_t n = rows.front().size();
    std::vector<double> mu(n, 0.0);
    for (const auto& r : rows) {
        if (r.size() != n) throw InputError("sample_covariance: ragged observations");
        for (std::size_t i = 0; i < n; ++i) mu[i] += r[i];
    }
    const double eta = static_cast<double>(rows.size());
    for (double& m : mu) m /= eta;
    SquareMatrix c(n);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) c(i, j) += (r[i] - mu[i]) * (r[j] - mu[j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            c(i, j) /= eta;
            c(j, i) = c(i, j);
        }
    return c;
}

}  // namespace riskindexlab
