#include "mssa/targets.hpp"

#include "mssa/error.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace mssa {

std::string to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::AllpassShift: return "allpass-shift";
        case TargetKind::HpTwoSided: return "hp-two-sided";
        case TargetKind::Identity: return "identity";
        case TargetKind::Custom: return "custom";
    }
    return "custom";
}

MatrixFilter TargetSpec::shifted_weights() const {
    return MatrixFilter{weights.first_lag - delta, weights.coeffs};
}

namespace {

// Binomial coefficients of the D-th difference with alternating sign.
std::vector<double> difference_stencil(int D) {
    std::vector<double> c{1.0};
    for (int d = 0; d < D; ++d) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] -= c[i];
            next[i + 1] += c[i];
        }
        c = std::move(next);
    }
    return c;
}

void require_lambda(double lambda) {
    if (!(lambda > 0.0)) {
        throw ValidationError("smoothing parameter lambda must be positive");
    }
}

}  // namespace

Vec whittaker_henderson_row(int W, double lambda, int D, int row) {
    require_lambda(lambda);
    if (D < 1 || W <= D) {
        throw InvalidDimension("window must exceed the difference order");
    }
    if (row < 0 || row >= W) {
        throw InvalidDimension("row outside the smoothing window");
    }
    const std::vector<double> stencil = difference_stencil(D);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(W - D) * stencil.size());
    for (int r = 0; r < W - D; ++r) {
        for (int i = 0; i <= D; ++i) {
            entries.emplace_back(r, r + i, stencil[i]);
        }
    }
    Eigen::SparseMatrix<double> K(W - D, W);
    K.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseMatrix<double> A(W, W);
    A.setIdentity();
    A += lambda * Eigen::SparseMatrix<double>(K.transpose() * K);

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) {
        throw SingularSystem("Whittaker-Henderson factorization failed");
    }
    // The smoother is symmetric, so its row equals the solution for a unit vector.
    Vec e = Vec::Zero(W);
    e(row) = 1.0;
    return solver.solve(e);
}

TargetSpec hp_two_sided(double lambda, int L, int window) {
    require_lambda(lambda);
    if (L < 1 || L % 2 == 0) {
        throw ValidationError("two-sided HP length must be odd, got " + std::to_string(L));
    }
    if (window < 3 || window % 2 == 0) {
        throw ValidationError("HP window must be odd and at least 3");
    }
    const int centre = window / 2;
    const Vec row = whittaker_henderson_row(window, lambda, 2, centre);
    const int half = (L - 1) / 2;
    const int reach = std::min(half, centre);
    Vec w = Vec::Zero(L);
    for (int k = -reach; k <= reach; ++k) {
        w(half + k) = row(centre + k);
    }
    w /= w.sum();
    // The smoother matrix is persymmetric; enforce exact symmetry against rounding.
    for (int k = 1; k <= half; ++k) {
        const double avg = 0.5 * (w(half + k) + w(half - k));
        w(half + k) = avg;
        w(half - k) = avg;
    }

    TargetSpec spec;
    spec.kind = TargetKind::HpTwoSided;
    spec.delta = 0;
    spec.weights = MatrixFilter::diagonal(-half, w, 1);
    spec.lambda = lambda;
    spec.diff_order = 2;
    return spec;
}

BenchmarkFilter hp_concurrent(double lambda, int L) {
    require_lambda(lambda);
    if (L < 3) {
        throw InvalidDimension("concurrent HP needs at least 3 points");
    }
    const Vec row = whittaker_henderson_row(L, lambda, 2, L - 1);
    Vec w = row.reverse();
    w /= w.sum();
    return BenchmarkFilter{"hp-concurrent", MAExpansion::diagonal(w, 1)};
}

TargetSpec diagonal_target(const TargetSpec& scalar, int n) {
    if (scalar.dim() != 1 || scalar.weights.n_in() != 1) {
        throw InvalidDimension("diagonal expansion needs a scalar target");
    }
    Vec w(scalar.weights.size());
    for (int k = 0; k < scalar.weights.size(); ++k) {
        w(k) = scalar.weights.coeffs[k](0, 0);
    }
    TargetSpec out = scalar;
    out.weights = MatrixFilter::diagonal(scalar.weights.first_lag, w, n);
    return out;
}

BenchmarkFilter diagonal_benchmark(const BenchmarkFilter& scalar, int n) {
    if (scalar.weights.n_out() != 1 || scalar.weights.n_in() != 1) {
        throw InvalidDimension("diagonal expansion needs a scalar filter");
    }
    Vec w(scalar.weights.length());
    for (int k = 0; k < scalar.weights.length(); ++k) {
        w(k) = scalar.weights.coeffs[k](0, 0);
    }
    return BenchmarkFilter{scalar.name, MAExpansion::diagonal(w, n)};
}

TargetSpec allpass_shift(int n, int h) {
    if (n < 1) {
        throw InvalidDimension("dimension must be positive");
    }
    TargetSpec spec;
    spec.kind = h == 0 ? TargetKind::Identity : TargetKind::AllpassShift;
    spec.delta = h;
    spec.weights = MatrixFilter{0, {Mat::Identity(n, n)}};
    return spec;
}

TargetSpec identity_target(int n) { return allpass_shift(n, 0); }

TargetSpec custom_target(MatrixFilter weights, int delta) {
    if (weights.coeffs.empty()) {
        throw InvalidDimension("empty target filter");
    }
    TargetSpec spec;
    spec.kind = TargetKind::Custom;
    spec.delta = delta;
    spec.weights = std::move(weights);
    return spec;
}

MAExpansion target_convolution(const TargetSpec& target, const MAExpansion& xi, int L) {
    return convolve(target.weights, xi, target.delta, L);
}

BenchmarkFilter mse_nowcast(const TargetSpec& target, const MAExpansion& xi, int L) {
    if (target.weights.n_in() != xi.n_out()) {
        throw InvalidDimension("target and model dimensions differ");
    }
    return BenchmarkFilter{"mse-nowcast", deconvolve(target_convolution(target, xi, L), xi)};
}

}  // namespace mssa
