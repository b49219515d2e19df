#include "mssa/metrics.hpp"

#include "mssa/error.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace mssa {

double ht_from_acf(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw ValidationError("holding time needs |rho| < 1, got " + std::to_string(rho));
    }
    return std::numbers::pi / std::acos(rho);
}

double acf_from_ht(double ht) {
    if (!(ht > 1.0)) {
        throw ValidationError("holding time must exceed 1, got " + std::to_string(ht));
    }
    return std::cos(std::numbers::pi / ht);
}

double sa_from_corr(double rho_yz) {
    if (!(std::abs(rho_yz) <= 1.0)) {
        throw ValidationError("correlation must lie in [-1, 1]");
    }
    return 0.5 + std::asin(rho_yz) / std::numbers::pi;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

template <typename T>
std::string opt(const std::optional<T>& v) {
    if (!v) {
        return "";
    }
    if constexpr (std::is_floating_point_v<T>) {
        return fmt(*v);
    } else {
        return std::to_string(*v);
    }
}

template <typename T>
nlohmann::json opt_json(const std::optional<T>& v) {
    if (!v) {
        return nullptr;
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(*v)) {
            return "inf";
        }
    }
    return *v;
}

Vec second_difference_padded(const Vec& b) {
    const Eigen::Index L = b.size();
    Vec padded = Vec::Zero(L + 4);
    padded.segment(2, L) = b;
    Vec d(L + 2);
    for (Eigen::Index k = 0; k < L + 2; ++k) {
        d(k) = padded(k + 2) - 2.0 * padded(k + 1) + padded(k);
    }
    return d;
}

}  // namespace

std::string MetricReport::csv_header() {
    return "acf1,holding_time,sign_accuracy,target_correlation,rms_second_diff,n_crossings,"
           "holding_time_gaps";
}

std::string MetricReport::csv_row() const {
    return fmt(acf1) + "," + fmt(holding_time) + "," + opt(sign_accuracy) + "," +
           opt(target_correlation) + "," + opt(rms_second_diff) + "," + opt(n_crossings) + "," +
           opt(holding_time_gaps);
}

std::string MetricReport::to_json() const {
    nlohmann::json j;
    j["acf1"] = acf1;
    j["holding_time"] = std::isfinite(holding_time) ? nlohmann::json(holding_time) : "inf";
    j["sign_accuracy"] = opt_json(sign_accuracy);
    j["target_correlation"] = opt_json(target_correlation);
    j["rms_second_diff"] = opt_json(rms_second_diff);
    j["n_crossings"] = opt_json(n_crossings);
    j["holding_time_gaps"] = opt_json(holding_time_gaps);
    return j.dump();
}

double target_variance(const MatrixFilter& gxi_row, const NoiseCovariance& sigma) {
    if (gxi_row.n_out() != 1 || gxi_row.n_in() != sigma.dim()) {
        throw InvalidDimension("target variance needs a single-row filter matching Sigma");
    }
    double v = 0.0;
    for (const auto& c : gxi_row.coeffs) {
        v += (c * sigma.matrix() * c.transpose())(0, 0);
    }
    return v;
}

MetricReport expected_metrics(const MAExpansion& bxi, const NoiseCovariance& sigma) {
    if (bxi.n_out() != 1 || bxi.n_in() != sigma.dim()) {
        throw InvalidDimension("predictor must be a single row matching Sigma");
    }
    const Vec b = bxi.stacked_row(0);
    const double var = quad_form_I(b, sigma);
    if (!(var > 0.0)) {
        throw ValidationError("predictor has zero variance");
    }
    MetricReport r;
    r.acf1 = quad_form_M(b, sigma) / var;
    r.holding_time = ht_from_acf(r.acf1);
    if (bxi.length() >= 3) {
        r.rms_second_diff = rms_second_diff(b, sigma);
    }
    return r;
}

MetricReport expected_metrics(const MAExpansion& bxi, const MAExpansion& gxi, double target_var,
                              const NoiseCovariance& sigma) {
    if (gxi.length() != bxi.length() || gxi.n_out() != 1 || gxi.n_in() != bxi.n_in()) {
        throw InvalidDimension("predictor and target expansions must have the same shape");
    }
    if (!(target_var > 0.0)) {
        throw ValidationError("target variance must be positive");
    }
    MetricReport r = expected_metrics(bxi, sigma);
    const Vec b = bxi.stacked_row(0);
    const Vec g = gxi.stacked_row(0);
    const double corr = cross_form_I(g, b, sigma) / std::sqrt(target_var * quad_form_I(b, sigma));
    r.target_correlation = corr;
    r.sign_accuracy = sa_from_corr(std::clamp(corr, -1.0, 1.0));
    return r;
}

double sample_acf1(const Vec& y) {
    if (y.size() < 3) {
        throw ValidationError("series too short for an autocorrelation");
    }
    const Vec c = y.array() - y.mean();
    const double denom = c.squaredNorm();
    if (!(denom > 0.0)) {
        throw ValidationError("constant series has no autocorrelation");
    }
    return c.head(c.size() - 1).dot(c.tail(c.size() - 1)) / denom;
}

double sample_correlation(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidDimension("correlation needs aligned series of length >= 2");
    }
    const Vec a = x.array() - x.mean();
    const Vec b = y.array() - y.mean();
    const double denom = std::sqrt(a.squaredNorm() * b.squaredNorm());
    if (!(denom > 0.0)) {
        throw ValidationError("correlation with a constant series");
    }
    return a.dot(b) / denom;
}

MetricReport empirical_metrics(const Vec& y_full, const std::optional<Vec>& z_full, int skip) {
    if (skip < 0 || skip >= y_full.size() - 2) {
        throw ValidationError("skip leaves fewer than 3 observations");
    }
    if (z_full && z_full->size() != y_full.size()) {
        throw InvalidDimension("predictor and target series are not aligned");
    }
    const Vec y = y_full.tail(y_full.size() - skip);
    const Eigen::Index N = y.size();

    long crossings = 0;
    Eigen::Index first = -1;
    Eigen::Index last = -1;
    double regime = 0.0;
    for (Eigen::Index t = 0; t < N; ++t) {
        if (y(t) == 0.0) {
            continue;
        }
        if (regime != 0.0 && regime * y(t) < 0.0) {
            ++crossings;
            if (first < 0) {
                first = t;
            }
            last = t;
        }
        regime = y(t);
    }

    MetricReport r;
    r.acf1 = sample_acf1(y);
    r.n_crossings = crossings;
    r.holding_time = crossings > 0 ? static_cast<double>(N) / crossings
                                   : std::numeric_limits<double>::infinity();
    if (crossings > 1) {
        r.holding_time_gaps = static_cast<double>(last - first) / (crossings - 1);
    }
    if (z_full) {
        const Vec z = z_full->tail(N);
        long same = 0;
        for (Eigen::Index t = 0; t < N; ++t) {
            same += (z(t) * y(t) > 0.0) ? 1 : 0;
        }
        r.sign_accuracy = static_cast<double>(same) / N;
        r.target_correlation = sample_correlation(y, z);
    }
    return r;
}

double rms_second_diff(const Vec& b) {
    if (b.size() < 3) {
        throw ValidationError("curvature needs a filter of length >= 3");
    }
    const double norm = b.norm();
    if (!(norm > 0.0)) {
        throw ValidationError("zero filter");
    }
    return second_difference_padded(b / norm).norm();
}

double rms_second_diff(const Vec& b, const NoiseCovariance& sigma) {
    const int n = sigma.dim();
    const int L = block_length(b, n);
    if (L < 3) {
        throw ValidationError("curvature needs a filter of length >= 3");
    }
    Vec d(n * (L + 2));
    for (int j = 0; j < n; ++j) {
        d.segment(j * (L + 2), L + 2) = second_difference_padded(b.segment(j * L, L));
    }
    const double q = quad_form_I(b, sigma);
    if (!(q > 0.0)) {
        throw ValidationError("zero filter");
    }
    return std::sqrt(quad_form_I(d, sigma) / q);
}

Vec cross_correlation(const Vec& x, const Vec& y, int max_lag) {
    if (x.size() != y.size()) {
        throw InvalidDimension("cross-correlation needs aligned series");
    }
    const Eigen::Index N = x.size();
    if (max_lag < 0 || max_lag >= N - 2) {
        throw ValidationError("maximum lag too large for the sample");
    }
    const Vec a = x.array() - x.mean();
    const Vec b = y.array() - y.mean();
    const double denom = std::sqrt(a.squaredNorm() * b.squaredNorm());
    if (!(denom > 0.0)) {
        throw ValidationError("cross-correlation with a constant series");
    }
    Vec out(2 * max_lag + 1);
    for (int k = -max_lag; k <= max_lag; ++k) {
        const Eigen::Index len = N - std::abs(k);
        const Eigen::Index xa = k >= 0 ? k : 0;
        const Eigen::Index ya = k >= 0 ? 0 : -k;
        out(k + max_lag) = a.segment(xa, len).dot(b.segment(ya, len)) / denom;
    }
    return out;
}

double block_bootstrap_se(const Vec& x, const Vec& y,
                          const std::function<double(const Vec&, const Vec&)>& stat, int block,
                          int replications, std::uint64_t seed) {
    const Eigen::Index N = x.size();
    if (y.size() != N) {
        throw InvalidDimension("bootstrap needs aligned series");
    }
    if (block < 1 || block > N || replications < 2) {
        throw ValidationError("invalid block length or replication count");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Eigen::Index> start(0, N - block);
    Vec bx(N);
    Vec by(N);
    std::vector<double> draws;
    draws.reserve(replications);
    for (int r = 0; r < replications; ++r) {
        Eigen::Index filled = 0;
        while (filled < N) {
            const Eigen::Index s = start(rng);
            const Eigen::Index len = std::min<Eigen::Index>(block, N - filled);
            bx.segment(filled, len) = x.segment(s, len);
            by.segment(filled, len) = y.segment(s, len);
            filled += len;
        }
        draws.push_back(stat(bx, by));
    }
    const Eigen::Map<const Vec> d(draws.data(), replications);
    const double mean = d.mean();
    return std::sqrt((d.array() - mean).square().sum() / (replications - 1));
}

}  // namespace mssa
