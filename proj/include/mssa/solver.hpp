#pragma once

#include "mssa/spectrum.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mssa {

/// Coordinates of a stacked MSE predictor gamma in the basis
/// v~_{kj} = v_{sigma j} (x) v_k, k = 1..L (eigenvectors of M), j = 1..n
/// (eigenvectors of Sigma).
struct SpectralWeights {
    Mat w;                          ///< L x n, w(k, j)
    Vec sigma_eigenvalues;          ///< sigma~_j matching the columns of w
    bool complete_support = false;  ///< sum_j |w_kj| > support_eps for every k
    double support_eps = 0.0;

    int length() const { return static_cast<int>(w.rows()); }
    int dim() const { return static_cast<int>(w.cols()); }

    /// w~_k^2 = sum_j sigma~_j w_kj^2.
    Vec weighted_squares() const;

    /// sum_{k,j} w_kj v~_{kj}.
    Vec reconstruct(const TridiagSpectrum& spectrum, const NoiseCovariance& sigma) const;
};

SpectralWeights spectral_weights(const Vec& gamma, const NoiseCovariance& sigma,
                                 const TridiagSpectrum& spectrum);

struct HtConstraint {
    enum class Mode { Acf, HoldingTime };
    Mode mode = Mode::HoldingTime;
    double value = 2.0;
    double l = 1.0;

    static HtConstraint holding_time(double ht, double l = 1.0) { return {Mode::HoldingTime, ht, l}; }
    static HtConstraint acf(double rho, double l = 1.0) { return {Mode::Acf, rho, l}; }

    /// Target lag-one autocorrelation rho_i.
    double to_rho() const;
};

struct MssaSolution {
    Vec b;                  ///< stacked weights, length n L
    double nu = 0.0;        ///< +-inf for the MSE embedding, 2 lambda_1 / 2 lambda_L on the boundary
    int d_sign = 1;
    double scale = 1.0;     ///< s_i
    double realized_acf = 0.0;
    double realized_ht = 0.0;
    double objective = 0.0;           ///< gamma' I~ b
    double mse_correlation = 0.0;     ///< correlation with the MSE predictor
    double target_correlation = 0.0;  ///< correlation with the target (equals mse_correlation without a target variance)
    bool is_boundary = false;
    bool is_degenerate_mse = false;
};

struct SolveOptions {
    /// Variance of the target z; when set, target_correlation is measured against it.
    std::optional<double> target_variance;
    /// Solve even when some eigen-direction carries no weight.
    bool allow_incomplete_support = false;
    double tol = 1e-10;
    int max_iter = 200;
};

/// b(nu) = sign(D) (I (x) (2M - nu I))^{-1} gamma with sign(D) = -sign(nu), one
/// tridiagonal solve per block. Independent of Sigma.
Vec solve_b_of_nu(const Vec& gamma, double nu, const TridiagSpectrum& spectrum);

/// rho(nu) = sum lambda_k (2lambda_k - nu)^{-2} w~_k^2 / sum (2lambda_k - nu)^{-2} w~_k^2.
double rho_of_nu(const SpectralWeights& weights, double nu, const TridiagSpectrum& spectrum);

/// Lag-one autocorrelation gamma'M~gamma / gamma'I~gamma of the MSE predictor.
double rho_mse(const Vec& gamma, const NoiseCovariance& sigma);

/// Maximizes gamma'I~b subject to b'M~b = rho l and b'I~b = l.
MssaSolution solve_mssa(const Vec& gamma, const NoiseCovariance& sigma,
                        const TridiagSpectrum& spectrum, const HtConstraint& constraint,
                        const SolveOptions& options = {});

/// Independent problems for several targets, solved concurrently.
std::vector<MssaSolution> solve_mssa(const std::vector<Vec>& gammas, const NoiseCovariance& sigma,
                                     const TridiagSpectrum& spectrum,
                                     const std::vector<HtConstraint>& constraints,
                                     const std::vector<SolveOptions>& options);

enum class Boundary { Top, Bottom };

/// Exterior limit |rho_i| = rho_max: projection of gamma onto v~_{1j} (top) or v~_{Lj} (bottom).
MssaSolution solve_boundary(const Vec& gamma, const NoiseCovariance& sigma,
                            const TridiagSpectrum& spectrum, Boundary which,
                            const SolveOptions& options = {}, double l = 1.0);

enum class DualSense { Maximize, Minimize };

/// Dual problem: extremize the lag-one ACF subject to a fixed correlation rho_yz with the
/// target (or the MSE predictor when no target variance is given) and b'I~b = l.
/// Maximize searches nu > 2 rho_max, Minimize searches nu < -2 rho_max.
MssaSolution solve_dual(const Vec& gamma, const NoiseCovariance& sigma,
                        const TridiagSpectrum& spectrum, double rho_yz,
                        DualSense sense = DualSense::Maximize, const SolveOptions& options = {},
                        double l = 1.0);

/// Mean and covariance of b = D (I (x) (2M - nu I))^{-1} gamma^ for an estimate gamma^ with
/// mean mu_gamma and covariance sigma_gamma.
std::pair<Vec, Mat> estimator_distribution(const Vec& mu_gamma, const Mat& sigma_gamma, double nu,
                                           double D, const TridiagSpectrum& spectrum);

/// Same with D = -nu, the scaling under which the map tends to the identity as |nu| grows.
std::pair<Vec, Mat> estimator_distribution(const Vec& mu_gamma, const Mat& sigma_gamma, double nu,
                                           const TridiagSpectrum& spectrum);

}  // namespace mssa
