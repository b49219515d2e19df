#pragma once

#include <Eigen/Dense>

namespace mssa {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Lag-one autocovariance generator M of a length-L filter together with its
/// closed-form eigen-structure.
///
/// M is symmetric tridiagonal with zero diagonal and 0.5 on both off-diagonals,
/// so that b'Mb = sum_k b_{k-1} b_k. Its eigenpairs are known analytically:
/// lambda_k = cos(k pi / (L+1)) with eigenvector components proportional to
/// sin(j k pi / (L+1)), k, j = 1..L. Eigenvalues are stored in decreasing order.
class TridiagSpectrum {
public:
    /// Throws InvalidDimension when L < 2.
    explicit TridiagSpectrum(int L);

    int length() const { return L_; }

    /// lambda_1 > lambda_2 > ... > lambda_L.
    const Vec& eigenvalues() const { return eigenvalues_; }
    double eigenvalue(int k) const { return eigenvalues_(k); }

    /// Column k holds the orthonormal eigenvector for eigenvalue(k).
    const Mat& eigenvectors() const { return eigenvectors_; }

    /// cos(pi / (L+1)); the largest attainable lag-one autocorrelation.
    double rho_max() const { return eigenvalues_(0); }

    /// M x using the tridiagonal stencil.
    Vec apply(const Vec& x) const;

    /// b'Mb = sum_k b_{k-1} b_k for a single length-L block.
    static double lag_one_product(const Vec& a, const Vec& b);

    /// Dense M; intended for tests and small-L oracles only.
    Mat dense() const;

private:
    int L_;
    Vec eigenvalues_;
    Mat eigenvectors_;
};

TridiagSpectrum build_spectrum(int L);

/// Innovation covariance Sigma with its eigen-decomposition.
///
/// The matrix must be symmetric and positive definite; rank-deficient designs
/// are expected to have been reduced beforehand.
class NoiseCovariance {
public:
    explicit NoiseCovariance(const Mat& sigma);

    static NoiseCovariance identity(int n) { return NoiseCovariance(Mat::Identity(n, n)); }

    int dim() const { return static_cast<int>(sigma_.rows()); }
    const Mat& matrix() const { return sigma_; }
    double operator()(int i, int j) const { return sigma_(i, j); }

    /// Eigenvalues sigma~_j (ascending) and matching orthonormal eigenvectors (columns).
    const Vec& eigenvalues() const { return eigenvalues_; }
    const Mat& eigenvectors() const { return eigenvectors_; }

    /// Symmetric square root Sigma^{1/2} = V diag(sqrt(sigma~)) V'.
    Mat symmetric_sqrt() const;

private:
    Mat sigma_;
    Vec eigenvalues_;
    Mat eigenvectors_;
};

/// b'(Sigma (x) M) b for stacked weights b = (b_1', ..., b_n')' of length n L.
/// Evaluated blockwise as sum_{j,l} sigma_jl * b_j' M b_l.
double quad_form_M(const Vec& b, const NoiseCovariance& sigma);

/// b'(Sigma (x) I) b = sum_{j,l} sigma_jl * b_j' b_l.
double quad_form_I(const Vec& b, const NoiseCovariance& sigma);

/// a'(Sigma (x) I) b.
double cross_form_I(const Vec& a, const Vec& b, const NoiseCovariance& sigma);

/// a'(Sigma (x) M) b.
double cross_form_M(const Vec& a, const Vec& b, const NoiseCovariance& sigma);

/// Block length of a stacked vector; throws InvalidDimension when size is not n * L.
int block_length(const Vec& b, int n);

}  // namespace mssa
