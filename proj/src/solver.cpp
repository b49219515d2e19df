#include "mssa/solver.hpp"

#include "mssa/error.hpp"
#include "mssa/metrics.hpp"

#include <lapacke.h>

#include <cmath>
#include <future>
#include <limits>
#include <string>

namespace mssa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

void check_nu(double nu, const TridiagSpectrum& spectrum) {
    if (!std::isfinite(nu)) {
        throw ValidationError("nu must be finite");
    }
    const double guard = 1e-9 * std::max(1.0, std::abs(nu));
    for (int k = 0; k < spectrum.length(); ++k) {
        if (std::abs(nu - 2.0 * spectrum.eigenvalue(k)) < guard) {
            throw SingularSystem("nu = " + std::to_string(nu) +
                                 " coincides with twice an eigenvalue of M");
        }
    }
}

int dimension_of(const Vec& gamma, const TridiagSpectrum& spectrum) {
    const int L = spectrum.length();
    if (gamma.size() == 0 || gamma.size() % L != 0) {
        throw InvalidDimension("stacked weights of length " + std::to_string(gamma.size()) +
                               " do not fit filter length " + std::to_string(L));
    }
    return static_cast<int>(gamma.size() / L);
}

// Solves (2M - nu I) X = rhs for an L x m right-hand side (partial pivoting, LAPACK gtsv).
Mat tridiagonal_solve(const Mat& rhs, double nu, int L) {
    std::vector<double> lower(L - 1, 1.0);
    std::vector<double> diag(L, -nu);
    std::vector<double> upper(L - 1, 1.0);
    Mat x = rhs;
    const lapack_int info =
        LAPACKE_dgtsv(LAPACK_COL_MAJOR, L, static_cast<lapack_int>(x.cols()), lower.data(),
                      diag.data(), upper.data(), x.data(), L);
    if (info != 0) {
        throw SingularSystem("tridiagonal system 2M - nu I is singular at nu = " +
                             std::to_string(nu));
    }
    return x;
}

// Sums S_p = sum_k w~_k^2 (2 lambda_k - nu)^{-p}, p = 0, 1, 2, and the lambda-weighted S_2.
struct SpectralSums {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s2_lambda = 0.0;
};

SpectralSums spectral_sums(const Vec& wsq, double nu, const TridiagSpectrum& spectrum) {
    SpectralSums s;
    for (int k = 0; k < spectrum.length(); ++k) {
        const double lam = spectrum.eigenvalue(k);
        const double inv = 1.0 / (2.0 * lam - nu);
        s.s0 += wsq(k);
        s.s1 += wsq(k) * inv;
        s.s2 += wsq(k) * inv * inv;
        s.s2_lambda += lam * wsq(k) * inv * inv;
    }
    return s;
}

// Correlation of b(nu) with the MSE predictor, sign(D) included.
double mse_correlation_of_nu(const Vec& wsq, double nu, const TridiagSpectrum& spectrum) {
    const SpectralSums s = spectral_sums(wsq, nu, spectrum);
    return -sign_of(nu) * s.s1 / std::sqrt(s.s0 * s.s2);
}

void require_support(const SpectralWeights& weights, const SolveOptions& options) {
    if (!weights.complete_support && !options.allow_incomplete_support) {
        throw SingularSupport(
            "the MSE predictor has no weight in at least one eigen-direction of M "
            "(incomplete spectral support); set allow_incomplete_support to solve anyway");
    }
}

MssaSolution finalize(const Vec& raw, const Vec& gamma, const NoiseCovariance& sigma, double nu,
                      double l, const SolveOptions& options) {
    const double length = quad_form_I(raw, sigma);
    if (!(length > 0.0)) {
        throw SingularSystem("solution has zero length");
    }
    MssaSolution sol;
    sol.scale = std::sqrt(l / length);
    sol.b = sol.scale * raw;
    sol.nu = nu;
    sol.d_sign = std::isfinite(nu) ? -sign_of(nu) : 1;
    sol.realized_acf = quad_form_M(sol.b, sigma) / quad_form_I(sol.b, sigma);
    sol.realized_ht = ht_from_acf(sol.realized_acf);
    sol.objective = cross_form_I(gamma, sol.b, sigma);
    const double gamma_var = quad_form_I(gamma, sigma);
    sol.mse_correlation = sol.objective / std::sqrt(gamma_var * l);
    sol.target_correlation = options.target_variance
                                 ? sol.objective / std::sqrt(*options.target_variance * l)
                                 : sol.mse_correlation;
    return sol;
}

MssaSolution degenerate_solution(const Vec& gamma, const NoiseCovariance& sigma, double l,
                                 const SolveOptions& options) {
    MssaSolution sol = finalize(gamma, gamma, sigma, kInf, l, options);
    sol.is_degenerate_mse = true;
    return sol;
}

void check_length(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw ValidationError("length constraint l must be positive");
    }
}

}  // namespace

Vec SpectralWeights::weighted_squares() const {
    return w.array().square().matrix() * sigma_eigenvalues;
}

Vec SpectralWeights::reconstruct(const TridiagSpectrum& spectrum, const NoiseCovariance& sigma) const {
    const int L = length();
    const int n = dim();
    // Block l of sum_{k,j} w_kj v_{sigma j} (x) v_k is V (w V_sigma')_{., l}.
    const Mat blocks = spectrum.eigenvectors() * w * sigma.eigenvectors().transpose();
    Vec out(n * L);
    for (int l = 0; l < n; ++l) {
        out.segment(l * L, L) = blocks.col(l);
    }
    return out;
}

SpectralWeights spectral_weights(const Vec& gamma, const NoiseCovariance& sigma,
                                 const TridiagSpectrum& spectrum) {
    const int n = dimension_of(gamma, spectrum);
    if (n != sigma.dim()) {
        throw InvalidDimension("stacked weights and noise covariance dimensions differ");
    }
    const double norm = gamma.norm();
    if (norm == 0.0) {
        throw ValidationError("MSE weights must not vanish identically");
    }
    const int L = spectrum.length();
    const Eigen::Map<const Mat> blocks(gamma.data(), L, n);
    SpectralWeights out;
    out.w = spectrum.eigenvectors().transpose() * blocks * sigma.eigenvectors();
    out.sigma_eigenvalues = sigma.eigenvalues();
    out.support_eps = 1e-12 * norm;
    out.complete_support = (out.w.cwiseAbs().rowwise().sum().array() > out.support_eps).all();
    return out;
}

double HtConstraint::to_rho() const {
    if (mode == Mode::Acf) {
        if (!(std::abs(value) < 1.0)) {
            throw ValidationError("ACF constraint must lie in (-1, 1)");
        }
        return value;
    }
    if (!(value > 1.0) || !std::isfinite(value)) {
        throw ValidationError("holding-time constraint must exceed 1, got " + std::to_string(value));
    }
    return acf_from_ht(value);
}

Vec solve_b_of_nu(const Vec& gamma, double nu, const TridiagSpectrum& spectrum) {
    const int n = dimension_of(gamma, spectrum);
    check_nu(nu, spectrum);
    const int L = spectrum.length();
    const Eigen::Map<const Mat> blocks(gamma.data(), L, n);
    Mat x = tridiagonal_solve(blocks, nu, L);
    x *= -sign_of(nu);
    return Eigen::Map<const Vec>(x.data(), n * L);
}

double rho_of_nu(const SpectralWeights& weights, double nu, const TridiagSpectrum& spectrum) {
    if (weights.length() != spectrum.length()) {
        throw InvalidDimension("spectral weights and spectrum lengths differ");
    }
    check_nu(nu, spectrum);
    const SpectralSums s = spectral_sums(weights.weighted_squares(), nu, spectrum);
    return s.s2_lambda / s.s2;
}

double rho_mse(const Vec& gamma, const NoiseCovariance& sigma) {
    const double v = quad_form_I(gamma, sigma);
    if (!(v > 0.0)) {
        throw ValidationError("MSE weights must not vanish identically");
    }
    return quad_form_M(gamma, sigma) / v;
}

MssaSolution solve_mssa(const Vec& gamma, const NoiseCovariance& sigma,
                        const TridiagSpectrum& spectrum, const HtConstraint& constraint,
                        const SolveOptions& options) {
    check_length(constraint.l);
    const SpectralWeights weights = spectral_weights(gamma, sigma, spectrum);
    const double rho = constraint.to_rho();
    const double rho_max = spectrum.rho_max();
    if (std::abs(rho) >= rho_max) {
        throw NoSolution("constraint rho = " + std::to_string(rho) +
                         " is not an interior point: |rho| must stay below rho_max(L) = " +
                         std::to_string(rho_max) + "; the problem has no solution");
    }
    const double r_mse = rho_mse(gamma, sigma);
    if (std::abs(rho - r_mse) < 1e-12) {
        return degenerate_solution(gamma, sigma, constraint.l, options);
    }
    require_support(weights, options);

    // rho(1/u) increases in u on both outer branches.
    const Vec wsq = weights.weighted_squares();
    const double u_edge = 1.0 / (2.0 * rho_max);
    double lo = rho > r_mse ? 0.0 : -u_edge;
    double hi = rho > r_mse ? u_edge : 0.0;
    double u = 0.5 * (lo + hi);
    double err = kInf;
    for (int it = 0; it < options.max_iter; ++it) {
        u = 0.5 * (lo + hi);
        const SpectralSums s = spectral_sums(wsq, 1.0 / u, spectrum);
        const double value = s.s2_lambda / s.s2;
        err = value - rho;
        if (std::abs(err) < options.tol) {
            break;
        }
        (err > 0.0 ? hi : lo) = u;
    }
    if (!(std::abs(err) < std::max(options.tol, 1e-8))) {
        throw NoSolution("holding-time equation rho(nu) = " + std::to_string(rho) +
                         " has no root on the outer branch |nu| > 2 rho_max");
    }
    const double nu = 1.0 / u;
    MssaSolution sol = finalize(solve_b_of_nu(gamma, nu, spectrum), gamma, sigma, nu,
                                constraint.l, options);
    if (!(sol.objective > 1e-12)) {
        throw SingularSystem("objective gamma'I~b is not positive at the solution");
    }
    return sol;
}

std::vector<MssaSolution> solve_mssa(const std::vector<Vec>& gammas, const NoiseCovariance& sigma,
                                     const TridiagSpectrum& spectrum,
                                     const std::vector<HtConstraint>& constraints,
                                     const std::vector<SolveOptions>& options) {
    if (gammas.size() != constraints.size() || gammas.size() != options.size()) {
        throw InvalidDimension("one constraint and option set per target is required");
    }
    std::vector<std::future<MssaSolution>> jobs;
    jobs.reserve(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
            return solve_mssa(gammas[i], sigma, spectrum, constraints[i], options[i]);
        }));
    }
    std::vector<MssaSolution> out;
    out.reserve(jobs.size());
    for (auto& job : jobs) {
        out.push_back(job.get());
    }
    return out;
}

MssaSolution solve_boundary(const Vec& gamma, const NoiseCovariance& sigma,
                            const TridiagSpectrum& spectrum, Boundary which,
                            const SolveOptions& options, double l) {
    check_length(l);
    const SpectralWeights weights = spectral_weights(gamma, sigma, spectrum);
    const int L = spectrum.length();
    const int n = sigma.dim();
    const int k = which == Boundary::Top ? 0 : L - 1;
    if (!(weights.w.row(k).cwiseAbs().sum() > weights.support_eps)) {
        throw SingularSupport("boundary eigen-direction carries no weight of the MSE predictor");
    }
    const Vec coeff = sigma.eigenvectors() * weights.w.row(k).transpose();
    Vec raw(n * L);
    for (int j = 0; j < n; ++j) {
        raw.segment(j * L, L) = coeff(j) * spectrum.eigenvectors().col(k);
    }
    MssaSolution sol = finalize(raw, gamma, sigma, 2.0 * spectrum.eigenvalue(k), l, options);
    sol.is_boundary = true;
    return sol;
}

MssaSolution solve_dual(const Vec& gamma, const NoiseCovariance& sigma,
                        const TridiagSpectrum& spectrum, double rho_yz, DualSense sense,
                        const SolveOptions& options, double l) {
    check_length(l);
    const SpectralWeights weights = spectral_weights(gamma, sigma, spectrum);
    const Vec wsq = weights.weighted_squares();
    const double gamma_var = wsq.sum();
    const double factor =
        options.target_variance ? std::sqrt(gamma_var / *options.target_variance) : 1.0;

    const double corr_mse = factor;
    if (std::abs(rho_yz - corr_mse) < 1e-12) {
        return degenerate_solution(gamma, sigma, l, options);
    }
    const Boundary edge = sense == DualSense::Maximize ? Boundary::Top : Boundary::Bottom;
    const double corr_edge =
        solve_boundary(gamma, sigma, spectrum, edge, options, l).target_correlation;
    if (!(rho_yz > corr_edge && rho_yz < corr_mse)) {
        throw NoSolution("target correlation " + std::to_string(rho_yz) +
                         " is outside the attainable range (" + std::to_string(corr_edge) + ", " +
                         std::to_string(corr_mse) + ")");
    }
    require_support(weights, options);

    // Correlation decreases in u on the smoothing branch and increases on the other.
    const double u_edge = 1.0 / (2.0 * spectrum.rho_max());
    const bool smoothing = sense == DualSense::Maximize;
    double lo = smoothing ? 0.0 : -u_edge;
    double hi = smoothing ? u_edge : 0.0;
    double u = 0.5 * (lo + hi);
    double err = kInf;
    for (int it = 0; it < options.max_iter; ++it) {
        u = 0.5 * (lo + hi);
        err = factor * mse_correlation_of_nu(wsq, 1.0 / u, spectrum) - rho_yz;
        if (std::abs(err) < options.tol * 1e-2) {
            break;
        }
        const bool move_up = smoothing ? err > 0.0 : err < 0.0;
        (move_up ? lo : hi) = u;
    }
    if (!(std::abs(err) < std::max(options.tol, 1e-8))) {
        throw NoSolution("dual correlation equation has no root on the outer branch");
    }
    const double nu = 1.0 / u;
    return finalize(solve_b_of_nu(gamma, nu, spectrum), gamma, sigma, nu, l, options);
}

std::pair<Vec, Mat> estimator_distribution(const Vec& mu_gamma, const Mat& sigma_gamma, double nu,
                                           double D, const TridiagSpectrum& spectrum) {
    const int n = dimension_of(mu_gamma, spectrum);
    const int L = spectrum.length();
    const int size = n * L;
    if (sigma_gamma.rows() != size || sigma_gamma.cols() != size) {
        throw InvalidDimension("covariance of the MSE weights must be nL x nL");
    }
    check_nu(nu, spectrum);
    // P^{-1} = I (x) (2M - nu I)^{-1}: every block of every column is one tridiagonal rhs.
    auto apply_inverse = [&](const Mat& X) {
        Mat reshaped = Eigen::Map<const Mat>(X.data(), L, n * X.cols());
        Mat solved = tridiagonal_solve(reshaped, nu, L);
        return Mat(Eigen::Map<const Mat>(solved.data(), size, X.cols()));
    };
    Vec mean = D * apply_inverse(mu_gamma);
    const Mat half = apply_inverse(sigma_gamma);
    Mat cov = D * D * apply_inverse(Mat(half.transpose()));
    cov = 0.5 * (cov + cov.transpose()).eval();
    return {std::move(mean), std::move(cov)};
}

std::pair<Vec, Mat> estimator_distribution(const Vec& mu_gamma, const Mat& sigma_gamma, double nu,
                                           const TridiagSpectrum& spectrum) {
    return estimator_distribution(mu_gamma, sigma_gamma, nu, -nu, spectrum);
}

}  // namespace mssa
