// Reference implementations used only by tests. None of them go through the
// spectral solution path: they work on dense matrices or search the
// constraint set directly.
#pragma once

#include "mssa/processes.hpp"
#include "mssa/spectrum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using mssa::Mat;
using mssa::Vec;

inline Mat dense_M(int L) {
    Mat M = Mat::Zero(L, L);
    for (int i = 0; i + 1 < L; ++i) {
        M(i, i + 1) = 0.5;
        M(i + 1, i) = 0.5;
    }
    return M;
}

inline Mat kron(const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return K;
}

inline Mat I_tilde(const Mat& sigma, int L) { return kron(sigma, Mat::Identity(L, L)); }
inline Mat M_tilde(const Mat& sigma, int L) { return kron(sigma, dense_M(L)); }

// sign(D) (2 M~ - nu I~)^{-1} I~ gamma with sign(D) = -sign(nu).
inline Vec dense_b_of_nu(const Vec& gamma, double nu, const Mat& sigma, int L) {
    const Mat It = I_tilde(sigma, L);
    const Mat A = 2.0 * M_tilde(sigma, L) - nu * It;
    return (nu > 0 ? -1.0 : 1.0) * A.fullPivLu().solve(It * gamma);
}

inline Mat sym_sqrt(const Mat& S) {
    Eigen::SelfAdjointEigenSolver<Mat> es(S);
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

// (B xi)_j = sum_{m <= j} B_m Xi_{j-m}, straight double loop.
inline mssa::MAExpansion naive_convolve(const mssa::MAExpansion& B, const mssa::MAExpansion& xi, int L) {
    mssa::MAExpansion out;
    for (int j = 0; j < L; ++j) {
        Mat acc = Mat::Zero(B.n_out(), xi.n_in());
        for (int m = 0; m <= j && m < B.length(); ++m) {
            if (j - m < xi.length()) {
                acc += B.coeffs[m] * xi.coeffs[j - m];
            }
        }
        out.coeffs.push_back(acc);
    }
    return out;
}

// Feasible set of the primal problem in whitened coordinates c = I~^{1/2} b:
// |c| = 1, c'Kc = rho with K = I (x) M. Maximizes g'c, g = I~^{1/2} gamma, by
// Riemannian gradient ascent with a Newton retraction, from several random starts.
struct PrimalResult {
    Vec b;
    double objective = -1e300;  // gamma' I~ b
    bool converged = false;
};

class ConstraintManifold {
public:
    ConstraintManifold(Mat K, double rho) : K_(std::move(K)), rho_(rho) {}

    // Newton projection onto {c'c = 1, c'Kc = rho} moving along the constraint gradients.
    bool retract(Vec& c) const {
        for (int it = 0; it < 100; ++it) {
            const Vec Kc = K_ * c;
            const Eigen::Vector2d r(c.squaredNorm() - 1.0, c.dot(Kc) - rho_);
            if (r.cwiseAbs().maxCoeff() < 1e-15) {
                return true;
            }
            Mat J(2, c.size());
            J.row(0) = 2.0 * c.transpose();
            J.row(1) = 2.0 * Kc.transpose();
            const Mat JJt = J * J.transpose();
            if (std::abs(JJt.determinant()) < 1e-20) {
                return false;
            }
            c -= J.transpose() * JJt.ldlt().solve(r);
        }
        const Eigen::Vector2d r(c.squaredNorm() - 1.0, c.dot(K_ * c) - rho_);
        return r.cwiseAbs().maxCoeff() < 1e-12;
    }

    Vec tangent(const Vec& c, const Vec& v) const {
        Mat N(c.size(), 2);
        N.col(0) = c;
        N.col(1) = K_ * c;
        const Eigen::HouseholderQR<Mat> qr(N);
        const Mat Q = qr.householderQ() * Mat::Identity(c.size(), 2);
        return v - Q * (Q.transpose() * v);
    }

private:
    Mat K_;
    double rho_;
};

inline PrimalResult primal_search(const Vec& gamma, const Mat& sigma, int L, double rho, std::uint64_t seed,
                                  int starts = 24) {
    const int n = static_cast<int>(sigma.rows());
    const Mat root = kron(sym_sqrt(sigma), Mat::Identity(L, L));
    const Mat root_inv = root.inverse();
    const Vec g = root * gamma;
    const ConstraintManifold manifold(kron(Mat::Identity(n, n), dense_M(L)), rho);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    PrimalResult best;
    for (int s = 0; s < starts; ++s) {
        Vec c(n * L);
        for (int i = 0; i < c.size(); ++i) {
            c(i) = normal(rng);
        }
        c.normalize();
        if (!manifold.retract(c)) {
            continue;
        }
        double step = 0.1;
        double f = g.dot(c);
        bool done = false;
        for (int it = 0; it < 20000 && !done; ++it) {
            const Vec d = manifold.tangent(c, g);
            if (d.norm() < 1e-13) {
                done = true;
                break;
            }
            Vec trial = c + step * d;
            if (manifold.retract(trial) && g.dot(trial) > f) {
                c = trial;
                f = g.dot(c);
                step = std::min(step * 1.5, 1.0);
            } else {
                step *= 0.5;
                if (step < 1e-14) {
                    done = true;
                }
            }
        }
        if (f > best.objective) {
            best.objective = f;
            best.b = root_inv * c;
            best.converged = done;
        }
    }
    return best;
}

// Dual problem for n = 1 and Sigma = [1]: maximize b'Mb over |b| = 1 with
// gamma'b / |gamma| = r. The feasible set is r g^ + sqrt(1 - r^2) u with u a unit
// vector orthogonal to g^; u is searched on a grid over the sphere and refined by
// a compass pattern search.
inline Vec dual_search(const Vec& gamma, double r, int grid = 60) {
    const int L = static_cast<int>(gamma.size());
    const Mat M = dense_M(L);
    const Vec gh = gamma.normalized();
    Mat basis = Mat::Identity(L, L) - gh * gh.transpose();
    const Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeFullU);
    const Mat U = svd.matrixU().leftCols(L - 1);
    const double s = std::sqrt(1.0 - r * r);
    auto value = [&](const Vec& x) {
        const Vec b = r * gh + s * U * x.normalized();
        return b.dot(M * b);
    };
    // Spherical coordinates on S^{L-2}.
    auto from_angles = [&](const Vec& a) {
        Vec x(L - 1);
        double prod = 1.0;
        for (int i = 0; i < L - 2; ++i) {
            x(i) = prod * std::cos(a(i));
            prod *= std::sin(a(i));
        }
        x(L - 2) = prod;
        return x;
    };
    const int m = L - 2;
    Vec best_a = Vec::Zero(m);
    double best = -1e300;
    std::vector<int> idx(m, 0);
    const double pi = std::acos(-1.0);
    while (true) {
        Vec a(m);
        for (int i = 0; i < m; ++i) {
            const double span = (i == m - 1) ? 2.0 * pi : pi;
            a(i) = span * (idx[i] + 0.5) / grid;
        }
        const double v = value(from_angles(a));
        if (v > best) {
            best = v;
            best_a = a;
        }
        int k = 0;
        while (k < m && ++idx[k] == grid) {
            idx[k++] = 0;
        }
        if (k == m) {
            break;
        }
    }
    double h = pi / grid;
    while (h > 1e-12) {
        bool improved = false;
        for (int i = 0; i < m; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vec a = best_a;
                a(i) += sgn * h;
                const double v = value(from_angles(a));
                if (v > best) {
                    best = v;
                    best_a = a;
                    improved = true;
                }
            }
        }
        if (!improved) {
            h *= 0.5;
        }
    }
    return r * gh + s * U * from_angles(best_a).normalized();
}

inline double cosine(const Vec& a, const Vec& b) { return a.dot(b) / (a.norm() * b.norm()); }

inline Mat random_spd(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Mat A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            A(i, j) = normal(rng);
        }
    }
    return A * A.transpose() + 0.5 * Mat::Identity(n, n);
}

inline Vec random_vec(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vec v(d);
    for (int i = 0; i < d; ++i) {
        v(i) = normal(rng);
    }
    return v;
}

}  // namespace oracle
