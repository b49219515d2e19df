#pragma once

#include "mssa/experiments.hpp"

#include <utility>

namespace mssa::detail {

/// Single-row expansion from a stacked vector.
inline MAExpansion row_expansion(const Vec& stacked, int n) {
    return MAExpansion::from_stacked_row(stacked, n);
}

/// Variance of sum_k Gamma_k x_{t-k} (one output row) under Wold weights xi, over every lag.
double full_target_variance(const MatrixFilter& gamma_row, const MAExpansion& xi,
                            const NoiseCovariance& sigma);

/// Values of two filtered series on their common time range.
std::pair<Vec, Vec> align(const FilteredSeries& a, const FilteredSeries& b);

/// Column `c` restricted to time indices [t0, t1].
Vec slice(const FilteredSeries& s, int c, int t0, int t1);

/// Output of a single-row data-space filter.
FilteredSeries run_filter(const MAExpansion& weights, const Mat& x);

/// Creates the directory if needed and returns the joined path.
std::filesystem::path out_file(const std::filesystem::path& dir, const std::string& name);

/// Indices 0..n-1 as doubles, offset by `first`.
Vec index_axis(Eigen::Index n, double first = 0.0);

}  // namespace mssa::detail
