#include "mssa/processes.hpp"

#include "mssa/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <random>
#include <string>

namespace mssa {

namespace {

void require_same_shape(const std::vector<Mat>& mats, const char* what) {
    for (const auto& m : mats) {
        if (m.rows() != mats.front().rows() || m.cols() != mats.front().cols()) {
            throw InvalidDimension(std::string(what) + ": coefficient shapes differ");
        }
    }
}

}  // namespace

Mat MatrixFilter::at(int lag) const {
    if (!has_lag(lag)) {
        return Mat::Zero(n_out(), n_in());
    }
    return coeffs[lag - first_lag];
}

MatrixFilter MatrixFilter::diagonal(int first_lag, const Vec& weights, int n) {
    MatrixFilter f;
    f.first_lag = first_lag;
    f.coeffs.reserve(weights.size());
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        f.coeffs.push_back(weights(k) * Mat::Identity(n, n));
    }
    return f;
}

double MAExpansion::tail_ratio() const {
    if (coeffs.empty()) {
        return 0.0;
    }
    const double head = coeffs.front().norm();
    return head > 0.0 ? coeffs.back().norm() / head : coeffs.back().norm();
}

Vec MAExpansion::stacked_row(int i) const {
    const int L = length();
    const int n = n_in();
    if (i < 0 || i >= n_out()) {
        throw InvalidDimension("row index out of range");
    }
    Vec out(n * L);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < L; ++k) {
            out(j * L + k) = coeffs[k](i, j);
        }
    }
    return out;
}

MAExpansion MAExpansion::from_stacked_row(const Vec& stacked, int n_in) {
    const int L = block_length(stacked, n_in);
    MAExpansion e;
    e.coeffs.assign(L, Mat::Zero(1, n_in));
    for (int j = 0; j < n_in; ++j) {
        for (int k = 0; k < L; ++k) {
            e.coeffs[k](0, j) = stacked(j * L + k);
        }
    }
    return e;
}

MAExpansion MAExpansion::identity(int n, int L) {
    MAExpansion e;
    e.coeffs.assign(L, Mat::Zero(n, n));
    e.coeffs[0] = Mat::Identity(n, n);
    return e;
}

MAExpansion MAExpansion::diagonal(const Vec& weights, int n) {
    return MAExpansion{MatrixFilter::diagonal(0, weights, n).coeffs};
}

MAExpansion MAExpansion::row(int i) const {
    MAExpansion e;
    e.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        e.coeffs.push_back(c.row(i));
    }
    return e;
}

VarmaModel::VarmaModel(std::vector<Mat> ar_coeffs, std::vector<Mat> ma_coeffs, Vec intercept_vec,
                       NoiseCovariance noise)
    : ar(std::move(ar_coeffs)), ma(std::move(ma_coeffs)), intercept(std::move(intercept_vec)),
      sigma(std::move(noise)) {
    const int n = sigma.dim();
    for (const auto* group : {&ar, &ma}) {
        for (const auto& m : *group) {
            if (m.rows() != n || m.cols() != n) {
                throw InvalidDimension("VARMA coefficient is not " + std::to_string(n) + "x" +
                                       std::to_string(n));
            }
        }
    }
    if (intercept.size() == 0) {
        intercept = Vec::Zero(n);
    }
    if (intercept.size() != n) {
        throw InvalidDimension("intercept length differs from process dimension");
    }
}

double VarmaModel::companion_spectral_radius() const {
    const int n = dim();
    const int p = static_cast<int>(ar.size());
    if (p == 0) {
        return 0.0;
    }
    Mat companion = Mat::Zero(n * p, n * p);
    for (int m = 0; m < p; ++m) {
        companion.block(0, m * n, n, n) = ar[m];
    }
    if (p > 1) {
        companion.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
    }
    Eigen::EigenSolver<Mat> eig(companion, false);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Vec VarmaModel::mean() const {
    Mat lhs = Mat::Identity(dim(), dim());
    for (const auto& a : ar) {
        lhs -= a;
    }
    return lhs.fullPivLu().solve(intercept);
}

VarmaModel VarmaModel::white_noise(const NoiseCovariance& sigma) {
    return VarmaModel({}, {}, Vec::Zero(sigma.dim()), sigma);
}

MAExpansion ma_inversion(const VarmaModel& model, int L) {
    if (L < 1) {
        throw InvalidDimension("MA inversion length must be positive");
    }
    const double radius = model.companion_spectral_radius();
    if (radius >= 1.0) {
        throw DivergenceError("MA inversion diverges: AR companion spectral radius " +
                              std::to_string(radius) + " >= 1 (non-stationary model)");
    }
    const int n = model.dim();
    MAExpansion xi;
    xi.coeffs.reserve(L);
    xi.coeffs.push_back(Mat::Identity(n, n));
    for (int k = 1; k < L; ++k) {
        Mat next = Mat::Zero(n, n);
        const int p = static_cast<int>(model.ar.size());
        for (int m = 1; m <= std::min(p, k); ++m) {
            next.noalias() += model.ar[m - 1] * xi.coeffs[k - m];
        }
        if (k <= static_cast<int>(model.ma.size())) {
            next += model.ma[k - 1];
        }
        xi.coeffs.push_back(std::move(next));
    }
    return xi;
}

MAExpansion convolve(const MatrixFilter& filter, const MAExpansion& xi, int delta, int L) {
    if (L < 1) {
        throw InvalidDimension("convolution length must be positive");
    }
    if (filter.coeffs.empty() || xi.coeffs.empty()) {
        throw InvalidDimension("empty filter or expansion");
    }
    require_same_shape(filter.coeffs, "filter");
    if (filter.n_in() != xi.n_out()) {
        throw InvalidDimension("filter input dimension differs from expansion output dimension");
    }
    MAExpansion out;
    out.coeffs.assign(L, Mat::Zero(filter.n_out(), xi.n_in()));
    for (int j = 0; j < L; ++j) {
        const int k = j + delta;
        // sum over m with 0 <= k - m < xi.length()
        const int m_lo = std::max(filter.first_lag, k - xi.length() + 1);
        const int m_hi = std::min(filter.last_lag(), k);
        for (int m = m_lo; m <= m_hi; ++m) {
            out.coeffs[j].noalias() += filter.coeffs[m - filter.first_lag] * xi.coeffs[k - m];
        }
    }
    return out;
}

MAExpansion convolve(const MAExpansion& filter, const MAExpansion& xi, int delta, int L) {
    return convolve(filter.as_filter(), xi, delta, L);
}

MatrixFilter convolve_range(const MatrixFilter& filter, const MAExpansion& xi, int k_min, int k_max) {
    if (k_max < k_min) {
        throw InvalidDimension("empty lag range");
    }
    MAExpansion part = convolve(filter, xi, k_min, k_max - k_min + 1);
    return MatrixFilter{k_min, std::move(part.coeffs)};
}

MAExpansion deconvolve(const MAExpansion& bxi, const MAExpansion& xi) {
    if (bxi.coeffs.empty() || xi.coeffs.empty()) {
        throw InvalidDimension("empty expansion");
    }
    if (bxi.n_in() != xi.n_in()) {
        throw InvalidDimension("deconvolution: input dimensions differ");
    }
    Eigen::FullPivLU<Mat> lead(xi.coeffs[0]);
    if (xi.coeffs[0].rows() != xi.coeffs[0].cols() || !lead.isInvertible()) {
        throw SingularSystem("deconvolution: leading MA coefficient is singular");
    }
    const Mat lead_inv = lead.inverse();
    const int L = bxi.length();
    MAExpansion b;
    b.coeffs.reserve(L);
    for (int k = 0; k < L; ++k) {
        Mat acc = bxi.coeffs[k];
        for (int m = std::max(0, k - xi.length() + 1); m < k; ++m) {
            acc.noalias() -= b.coeffs[m] * xi.coeffs[k - m];
        }
        b.coeffs.push_back(acc * lead_inv);
    }
    return b;
}

Mat simulate(const VarmaModel& model, int N, std::uint64_t seed, int burn_in, bool add_mean) {
    if (N < 1 || burn_in < 0) {
        throw ValidationError("simulation length must be positive and burn-in non-negative");
    }
    const int n = model.dim();
    const int p = static_cast<int>(model.ar.size());
    const int q = static_cast<int>(model.ma.size());
    const int total = N + burn_in;
    const Mat root = model.sigma.symmetric_sqrt();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat eps(total, n);
    Vec z(n);
    for (int t = 0; t < total; ++t) {
        for (int j = 0; j < n; ++j) {
            z(j) = normal(rng);
        }
        eps.row(t) = (root * z).transpose();
    }

    Mat x = Mat::Zero(total, n);
    for (int t = 0; t < total; ++t) {
        Vec v = eps.row(t).transpose();
        for (int m = 1; m <= std::min(p, t); ++m) {
            v.noalias() += model.ar[m - 1] * x.row(t - m).transpose();
        }
        for (int m = 1; m <= std::min(q, t); ++m) {
            v.noalias() += model.ma[m - 1] * eps.row(t - m).transpose();
        }
        x.row(t) = v.transpose();
    }
    Mat out = x.bottomRows(N);
    if (add_mean) {
        out.rowwise() += model.mean().transpose();
    }
    return out;
}

FilteredSeries apply_filter(const MatrixFilter& filter, const Mat& x) {
    if (filter.coeffs.empty()) {
        throw InvalidDimension("empty filter");
    }
    if (filter.n_in() != x.cols()) {
        throw InvalidDimension("filter input dimension differs from series dimension");
    }
    const int T = static_cast<int>(x.rows());
    // t - k must stay inside [0, T-1] for every lag k of the filter.
    const int first_t = std::max(0, filter.last_lag());
    const int last_t = T - 1 + std::min(0, filter.first_lag);
    FilteredSeries out;
    out.first_t = first_t;
    if (last_t < first_t) {
        out.values.resize(0, filter.n_out());
        return out;
    }
    const int rows = last_t - first_t + 1;
    out.values = Mat::Zero(rows, filter.n_out());
    // Column-major accumulation: for each lag add F_k * x_{t-k} over all t at once.
    for (int idx = 0; idx < filter.size(); ++idx) {
        const int k = filter.first_lag + idx;
        const Mat& f = filter.coeffs[idx];
        if (f.isZero(0.0)) {
            continue;
        }
        out.values.noalias() += x.middleRows(first_t - k, rows) * f.transpose();
    }
    return out;
}

FilteredSeries apply_filter(const MAExpansion& filter, const Mat& x) {
    return apply_filter(filter.as_filter(), x);
}

FilteredSeries filter_components(const MAExpansion& filter, const Mat& x, int i) {
    if (i < 0 || i >= filter.n_out()) {
        throw InvalidDimension("row index out of range");
    }
    const int n = filter.n_in();
    FilteredSeries out;
    for (int j = 0; j < n; ++j) {
        MatrixFilter part;
        part.first_lag = 0;
        for (const auto& c : filter.coeffs) {
            Mat m = Mat::Zero(1, n);
            m(0, j) = c(i, j);
            part.coeffs.push_back(std::move(m));
        }
        FilteredSeries comp = apply_filter(part, x);
        if (j == 0) {
            out.first_t = comp.first_t;
            out.values.resize(comp.size(), n);
        }
        out.values.col(j) = comp.values.col(0);
    }
    return out;
}

}  // namespace mssa
