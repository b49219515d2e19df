#pragma once

#include "mssa/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace mssa {

/// Matrix-valued filter with coefficients on lags first_lag .. first_lag + size - 1.
/// Applied to a series as y_t = sum_k coeffs[k - first_lag] x_{t-k}; negative lags
/// weight future observations.
struct MatrixFilter {
    int first_lag = 0;
    std::vector<Mat> coeffs;

    int size() const { return static_cast<int>(coeffs.size()); }
    int last_lag() const { return first_lag + size() - 1; }
    int n_out() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows()); }
    int n_in() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().cols()); }
    bool has_lag(int lag) const { return lag >= first_lag && lag <= last_lag(); }
    /// Coefficient at `lag`, or a zero matrix outside the support.
    Mat at(int lag) const;

    /// Expands a scalar filter to diag(w_k, ..., w_k) of size n.
    static MatrixFilter diagonal(int first_lag, const Vec& weights, int n);
};

/// Causal coefficient sequence on lags 0 .. length-1: Wold weights Xi_k, or a
/// filter convolved with them.
struct MAExpansion {
    std::vector<Mat> coeffs;

    int length() const { return static_cast<int>(coeffs.size()); }
    int n_out() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows()); }
    int n_in() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().cols()); }

    /// ||Xi_{L-1}|| / ||Xi_0|| (Frobenius); small values justify truncation at L.
    double tail_ratio() const;

    /// Row i stacked by input: (c_{i1,0..L-1}, c_{i2,0..L-1}, ...), length n_in * L.
    Vec stacked_row(int i) const;

    /// Inverse of stacked_row for a single-output expansion.
    static MAExpansion from_stacked_row(const Vec& stacked, int n_in);

    /// Xi_0 = I, Xi_k = 0 for k > 0.
    static MAExpansion identity(int n, int L);

    /// Scalar causal weights expanded to diagonal matrices.
    static MAExpansion diagonal(const Vec& weights, int n);

    MatrixFilter as_filter() const { return MatrixFilter{0, coeffs}; }

    /// Rows [row, row+1) of every coefficient.
    MAExpansion row(int i) const;
};

/// Stationary VARMA(p, q) model
///   x_t = c + sum_m A_m x_{t-m} + eps_t + sum_m Theta_m eps_{t-m},  Var(eps_t) = Sigma.
struct VarmaModel {
    std::vector<Mat> ar;
    std::vector<Mat> ma;
    Vec intercept;
    NoiseCovariance sigma;

    VarmaModel(std::vector<Mat> ar_coeffs, std::vector<Mat> ma_coeffs, Vec intercept_vec,
               NoiseCovariance noise);

    int dim() const { return sigma.dim(); }

    /// Spectral radius of the AR companion matrix (0 for pure MA models).
    double companion_spectral_radius() const;
    bool is_stationary() const { return companion_spectral_radius() < 1.0; }

    /// Unconditional mean (I - sum A_m)^{-1} c.
    Vec mean() const;

    static VarmaModel white_noise(const NoiseCovariance& sigma);
};

/// Wold weights Xi_0 .. Xi_{L-1} from Xi_k = sum_m A_m Xi_{k-m} + Theta_k, Xi_0 = I.
/// Throws DivergenceError for non-stationary models.
MAExpansion ma_inversion(const VarmaModel& model, int L);

/// Lags delta .. delta+L-1 of (Gamma . Xi)_k = sum_m Gamma_m Xi_{k-m}.
/// The result is indexed 0..L-1, i.e. entry j holds (Gamma . Xi)_{j+delta}: the weight
/// of eps_{t-j} in the target z_{t+delta}. Weights on future innovations are dropped.
MAExpansion convolve(const MatrixFilter& filter, const MAExpansion& xi, int delta, int L);
MAExpansion convolve(const MAExpansion& filter, const MAExpansion& xi, int delta, int L);

/// (Gamma . Xi)_k for k in [k_min, k_max], including acausal lags.
MatrixFilter convolve_range(const MatrixFilter& filter, const MAExpansion& xi, int k_min, int k_max);

/// Recovers B_0 .. B_{L-1} from (B . Xi)_0 .. (B . Xi)_{L-1}.
/// Throws SingularSystem if Xi_0 is not invertible.
MAExpansion deconvolve(const MAExpansion& bxi, const MAExpansion& xi);

/// Gaussian sample path of length N (rows = time) with `burn_in` discarded start-up
/// draws. Innovations use the symmetric square root of Sigma. The path is centred:
/// intercepts are ignored unless `add_mean` is set.
Mat simulate(const VarmaModel& model, int N, std::uint64_t seed, int burn_in = 1000,
             bool add_mean = false);

/// Output of a filter over a series; row r corresponds to time index first_t + r.
struct FilteredSeries {
    int first_t = 0;
    Mat values;

    int size() const { return static_cast<int>(values.rows()); }
    int last_t() const { return first_t + size() - 1; }
};

/// y_t = sum_k F_k x_{t-k} for every t with a complete data window.
FilteredSeries apply_filter(const MatrixFilter& filter, const Mat& x);
FilteredSeries apply_filter(const MAExpansion& filter, const Mat& x);

/// Per-input components y_{ijt} = sum_k F_k(i, j) x_{j,t-k} for output row i; column j
/// of the result holds the contribution of input j. Columns sum to output i.
FilteredSeries filter_components(const MAExpansion& filter, const Mat& x, int i);

}  // namespace mssa
