#pragma once

#include "mssa/processes.hpp"

#include <string>

namespace mssa {

enum class TargetKind { AllpassShift, HpTwoSided, Identity, Custom };

std::string to_string(TargetKind kind);

/// Target z_{t+delta} = sum_k Gamma_k x_{t+delta-k}. delta > 0 forecasts, 0 nowcasts,
/// < 0 backcasts. `weights` hold Gamma_k on their own lag grid (possibly acausal).
struct TargetSpec {
    TargetKind kind = TargetKind::Custom;
    int delta = 0;
    MatrixFilter weights;
    double lambda = 0.0;
    int diff_order = 2;

    int dim() const { return weights.n_out(); }

    /// Gamma re-indexed so the target is a filter of x_t alone: lag k holds
    /// Gamma_{k+delta}. For allpass_shift(n, h) this is I at lag -h.
    MatrixFilter shifted_weights() const;
};

/// Causal benchmark predictor on lags 0..L-1.
struct BenchmarkFilter {
    std::string name;
    MAExpansion weights;
};

/// Row `row` (0-based) of the Whittaker-Henderson smoother (I + lambda K'K)^{-1} on a
/// window of length W, where K is the D-th order difference matrix. Sparse solve.
Vec whittaker_henderson_row(int W, double lambda, int D, int row);

/// Symmetric two-sided HP filter on lags -(L-1)/2 .. (L-1)/2: centre row of the
/// WH smoother on `window` points, truncated and scaled to unit sum. L must be odd.
/// If the window is shorter than L the outer lags are zero.
TargetSpec hp_two_sided(double lambda, int L, int window = 2001);

/// Concurrent HP: last row of the WH smoother on L points, lag 0 = latest observation,
/// scaled to unit sum.
BenchmarkFilter hp_concurrent(double lambda, int L);

/// Diagonal expansion Gamma_k = diag(gamma_k, ..., gamma_k) of a scalar target.
TargetSpec diagonal_target(const TargetSpec& scalar, int n);

/// Diagonal expansion of a scalar causal benchmark.
BenchmarkFilter diagonal_benchmark(const BenchmarkFilter& scalar, int n);

/// Identity at lag -h: z_t = x_{t+h}.
TargetSpec allpass_shift(int n, int h);

/// z_t = x_t.
TargetSpec identity_target(int n);

/// Arbitrary filter with explicit lag grid.
TargetSpec custom_target(MatrixFilter weights, int delta);

/// Gamma . Xi at lags delta .. delta+L-1 (see convolve); the MSE predictor in
/// innovation space.
MAExpansion target_convolution(const TargetSpec& target, const MAExpansion& xi, int L);

/// Minimum-MSE causal filter of the target under the model with Wold weights xi:
/// convolve, drop the acausal part, deconvolve.
BenchmarkFilter mse_nowcast(const TargetSpec& target, const MAExpansion& xi, int L);

}  // namespace mssa
