#pragma once

#include "mssa/processes.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mssa {

/// pi / arccos(rho); throws ValidationError for |rho| >= 1.
double ht_from_acf(double rho);

/// cos(pi / ht); inverse of ht_from_acf.
double acf_from_ht(double ht);

/// 0.5 + arcsin(rho_yz) / pi.
double sa_from_corr(double rho_yz);

struct MetricReport {
    double acf1 = 0.0;
    double holding_time = 0.0;
    std::optional<double> sign_accuracy;
    std::optional<double> target_correlation;
    std::optional<double> rms_second_diff;
    /// Empirical only.
    std::optional<long> n_crossings;
    /// Empirical only: mean gap between the first and last crossing.
    std::optional<double> holding_time_gaps;

    static std::string csv_header();
    std::string csv_row() const;
    std::string to_json() const;
};

/// sum_k c_k' Sigma c_k over every lag of a (possibly acausal) single-row filter
/// in innovation space, e.g. the full two-sided (Gamma . Xi) row of a target.
double target_variance(const MatrixFilter& gxi_row, const NoiseCovariance& sigma);

/// Expected metrics of a predictor with innovation-space weights bxi (one row) against a
/// target whose causal innovation weights are gxi (one row, same length) and whose total
/// variance is target_var.
MetricReport expected_metrics(const MAExpansion& bxi, const MAExpansion& gxi, double target_var,
                              const NoiseCovariance& sigma);

/// Expected metrics without a target (ACF, HT and curvature only).
MetricReport expected_metrics(const MAExpansion& bxi, const NoiseCovariance& sigma);

/// Empirical metrics of the sample path y (and target z when given), discarding the
/// first `skip` points. A crossing at t means y_{t-1} y_t < 0; exact zeros keep the
/// previous sign. holding_time = effective length / crossings (+inf without crossings).
MetricReport empirical_metrics(const Vec& y, const std::optional<Vec>& z = std::nullopt,
                               int skip = 0);

/// ||Delta^2 b|| of the zero-padded filter scaled to unit length: RMS second difference of
/// the output for standardized white noise input.
double rms_second_diff(const Vec& b);

/// Multivariate analogue: sqrt(q(Delta^2 b) / q(b)) with q = b'(Sigma (x) I)b, blockwise.
double rms_second_diff(const Vec& b, const NoiseCovariance& sigma);

/// Sample lag-one autocorrelation (mean removed).
double sample_acf1(const Vec& y);

/// Pearson correlation.
double sample_correlation(const Vec& x, const Vec& y);

/// c[k + max_lag] = corr(x_{t+k}, y_t), k = -max_lag..max_lag. A peak at negative k
/// means x lags y (y leads).
Vec cross_correlation(const Vec& x, const Vec& y, int max_lag);

/// Moving-block bootstrap standard error of stat(x, y) over aligned series.
double block_bootstrap_se(const Vec& x, const Vec& y,
                          const std::function<double(const Vec&, const Vec&)>& stat, int block,
                          int replications, std::uint64_t seed);

}  // namespace mssa
