#include "mssa/spectrum.hpp"

#include "mssa/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace mssa {

TridiagSpectrum::TridiagSpectrum(int L) : L_(L) {
    if (L < 2) {
        throw InvalidDimension("filter length must be at least 2, got " + std::to_string(L));
    }
    eigenvalues_.resize(L);
    eigenvectors_.resize(L, L);
    const double step = std::numbers::pi / (L + 1);
    // sum_{j=1}^{L} sin^2(j k pi/(L+1)) = (L+1)/2 for every k.
    const double norm = std::sqrt(2.0 / (L + 1));
    for (int k = 0; k < L; ++k) {
        const double omega = (k + 1) * step;
        eigenvalues_(k) = std::cos(omega);
        for (int j = 0; j < L; ++j) {
            eigenvectors_(j, k) = norm * std::sin((j + 1) * omega);
        }
    }
}

Vec TridiagSpectrum::apply(const Vec& x) const {
    if (x.size() != L_) {
        throw InvalidDimension("vector length does not match filter length");
    }
    Vec y(L_);
    for (int k = 0; k < L_; ++k) {
        const double left = k > 0 ? x(k - 1) : 0.0;
        const double right = k + 1 < L_ ? x(k + 1) : 0.0;
        y(k) = 0.5 * (left + right);
    }
    return y;
}

double TridiagSpectrum::lag_one_product(const Vec& a, const Vec& b) {
    // a'Mb = 0.5 * sum_k (a_{k-1} b_k + a_k b_{k-1})
    double s = 0.0;
    for (Eigen::Index k = 1; k < a.size(); ++k) {
        s += a(k - 1) * b(k) + a(k) * b(k - 1);
    }
    return 0.5 * s;
}

Mat TridiagSpectrum::dense() const {
    Mat m = Mat::Zero(L_, L_);
    for (int k = 0; k + 1 < L_; ++k) {
        m(k, k + 1) = 0.5;
        m(k + 1, k) = 0.5;
    }
    return m;
}

TridiagSpectrum build_spectrum(int L) { return TridiagSpectrum(L); }

NoiseCovariance::NoiseCovariance(const Mat& sigma) : sigma_(sigma) {
    if (sigma.rows() == 0 || sigma.rows() != sigma.cols()) {
        throw InvalidDimension("noise covariance must be a non-empty square matrix");
    }
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ValidationError("noise covariance must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(sigma);
    eigenvalues_ = eig.eigenvalues();
    eigenvectors_ = eig.eigenvectors();
    if (eigenvalues_.minCoeff() <= 0.0) {
        throw ValidationError("noise covariance must be positive definite (full rank)");
    }
}

Mat NoiseCovariance::symmetric_sqrt() const {
    return eigenvectors_ * eigenvalues_.cwiseSqrt().asDiagonal() * eigenvectors_.transpose();
}

int block_length(const Vec& b, int n) {
    if (n <= 0 || b.size() == 0 || b.size() % n != 0) {
        throw InvalidDimension("stacked vector of length " + std::to_string(b.size()) +
                               " is not a multiple of dimension " + std::to_string(n));
    }
    return static_cast<int>(b.size() / n);
}

namespace {

template <typename BlockProduct>
double blockwise(const Vec& a, const Vec& b, const NoiseCovariance& sigma, BlockProduct product) {
    const int n = sigma.dim();
    const int L = block_length(a, n);
    if (b.size() != a.size()) {
        throw InvalidDimension("stacked vectors differ in length");
    }
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            const double w = sigma(j, l);
            if (w == 0.0) {
                continue;
            }
            s += w * product(a.segment(j * L, L), b.segment(l * L, L));
        }
    }
    return s;
}

}  // namespace

double cross_form_I(const Vec& a, const Vec& b, const NoiseCovariance& sigma) {
    return blockwise(a, b, sigma, [](const Vec& x, const Vec& y) { return x.dot(y); });
}

double cross_form_M(const Vec& a, const Vec& b, const NoiseCovariance& sigma) {
    return blockwise(a, b, sigma, [](const Vec& x, const Vec& y) {
        return TridiagSpectrum::lag_one_product(x, y);
    });
}

double quad_form_I(const Vec& b, const NoiseCovariance& sigma) { return cross_form_I(b, b, sigma); }

double quad_form_M(const Vec& b, const NoiseCovariance& sigma) { return cross_form_M(b, b, sigma); }

}  // namespace mssa
