#include "oracles.hpp"

#include "mssa/error.hpp"
#include "mssa/metrics.hpp"

#include <json.hpp>
#include <doctest.h>

#include <numbers>
#include <random>

using namespace mssa;

TEST_CASE("holding-time map") {
    CHECK(ht_from_acf(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(ht_from_acf(1.0), ValidationError);
    CHECK_THROWS_AS(ht_from_acf(-1.0), ValidationError);
    CHECK_THROWS_AS(acf_from_ht(1.0), ValidationError);
    double prev = 1.0;
    for (double r = -0.99; r < 0.99; r += 0.01) {
        const double h = ht_from_acf(r);
        CHECK(h > prev);
        prev = h;
        CHECK(acf_from_ht(h) == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("printed holding times sit inside the rounding interval of the printed ACFs") {
    // 0.963 and 0.967 are rounded; the HTs 11.508 and 12.267 must come from ACFs within +-5e-4.
    CHECK(ht_from_acf(0.9625) < 11.508);
    CHECK(ht_from_acf(0.9635) > 11.508);
    CHECK(ht_from_acf(0.9665) < 12.267);
    CHECK(ht_from_acf(0.9675) > 12.267);
}

TEST_CASE("sign-accuracy map") {
    CHECK(sa_from_corr(0.0) == 0.5);
    CHECK(sa_from_corr(1.0) == doctest::Approx(1.0));
    CHECK(sa_from_corr(-1.0) == doctest::Approx(0.0));
    // two-digit correlations map into the rounding interval of the two-digit accuracies
    CHECK(sa_from_corr(0.685) < 0.745);
    CHECK(sa_from_corr(0.695) > 0.735);
    CHECK(sa_from_corr(0.985) < 0.965);
    CHECK(sa_from_corr(0.995) > 0.955);
    CHECK(sa_from_corr(0.475) < 0.665);
    CHECK(sa_from_corr(0.485) > 0.655);
    CHECK_THROWS_AS(sa_from_corr(1.01), ValidationError);
}

TEST_CASE("expected metrics of a causal target equal to the predictor") {
    std::mt19937_64 rng(1);
    const NoiseCovariance sigma(oracle::random_spd(2, rng));
    MAExpansion b;
    for (int k = 0; k < 8; ++k) {
        b.coeffs.push_back(oracle::random_vec(2, rng).transpose());
    }
    const double tv = quad_form_I(b.stacked_row(0), sigma);
    const MetricReport r = expected_metrics(b, b, tv, sigma);
    CHECK(*r.target_correlation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*r.sign_accuracy == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.holding_time == doctest::Approx(ht_from_acf(r.acf1)).epsilon(1e-14));
}

TEST_CASE("target variance of a filter row") {
    const Mat S = (Mat(2, 2) << 2.0, 0.5, 0.5, 1.0).finished();
    MatrixFilter f{-1, {(Mat(1, 2) << 1.0, 0.0).finished(), (Mat(1, 2) << 0.0, 1.0).finished()}};
    CHECK(target_variance(f, NoiseCovariance(S)) == doctest::Approx(3.0));
}

TEST_CASE("empirical crossings") {
    Vec alt(1000);
    for (int t = 0; t < 1000; ++t) {
        alt(t) = t % 2 == 0 ? 1.0 : -1.0;
    }
    const MetricReport a = empirical_metrics(alt);
    CHECK(*a.n_crossings == 999);
    CHECK(a.holding_time == doctest::Approx(1.0).epsilon(1.0 / 999));
    CHECK(*a.holding_time_gaps == 1.0);

    Vec touch(6);
    touch << 1, 0, 1, 0, -1, -2;  // zeros stay in the previous regime
    CHECK(*empirical_metrics(touch).n_crossings == 1);

    const MetricReport none = empirical_metrics(Vec::LinSpaced(50, 1.0, 2.0));
    CHECK(std::isinf(none.holding_time));
    CHECK(*none.n_crossings == 0);
}

TEST_CASE("empirical metrics are scale invariant") {
    std::mt19937_64 rng(3);
    const Vec y = oracle::random_vec(5000, rng);
    const Vec z = y + oracle::random_vec(5000, rng);
    const MetricReport a = empirical_metrics(y, z, 10);
    const MetricReport b = empirical_metrics(3.7 * y, z, 10);
    CHECK(a.holding_time == b.holding_time);
    CHECK(*a.n_crossings == *b.n_crossings);
    CHECK(*a.sign_accuracy == *b.sign_accuracy);
    CHECK(*a.target_correlation == doctest::Approx(*b.target_correlation).epsilon(1e-12));
}

TEST_CASE("crossing-rate estimators agree on long Gaussian paths") {
    // AR(1) with rho = 0.8: HT from the Gaussian map and both sample estimators
    const int N = 200000;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    Vec y(N);
    double prev = 0.0;
    for (int t = 0; t < N; ++t) {
        prev = 0.8 * prev + nd(rng);
        y(t) = prev;
    }
    const MetricReport r = empirical_metrics(y);
    const double expected = ht_from_acf(0.8);
    CHECK(std::abs(r.holding_time / expected - 1.0) < 0.03);
    CHECK(std::abs(*r.holding_time_gaps / r.holding_time - 1.0) < 0.01);
    CHECK(std::abs(r.acf1 - 0.8) < 0.01);
}

TEST_CASE("second differences") {
    const Vec c = Vec::Constant(10, 2.0);
    // padded sequence 0 0 c..c 0 0: only the two edges on each side contribute
    const Vec u = c / c.norm();
    const double expected = std::sqrt(2.0 * (u(0) * u(0) + u(0) * u(0)));
    CHECK(rms_second_diff(c) == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(rms_second_diff(Vec::Ones(2)), ValidationError);
    CHECK(rms_second_diff(c, NoiseCovariance::identity(1)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sample correlation and cross-correlation") {
    std::mt19937_64 rng(7);
    const Vec x = oracle::random_vec(3000, rng);
    Vec y = Vec::Zero(3000);
    y.tail(2997) = x.head(2997);  // y_t = x_{t-3}
    const Vec c = cross_correlation(x, y, 5);
    Eigen::Index arg = 0;
    c.maxCoeff(&arg);
    CHECK(arg - 5 == -3);
    CHECK(sample_correlation(x, x) == doctest::Approx(1.0));
    CHECK_THROWS_AS(sample_correlation(x, y.head(10)), InvalidDimension);
}

TEST_CASE("block bootstrap standard errors are positive and stable across seeds") {
    std::mt19937_64 rng(9);
    const Vec x = oracle::random_vec(600, rng);
    const Vec y = x + oracle::random_vec(600, rng);
    const auto stat = [](const Vec& a, const Vec& b) { return sample_correlation(a, b); };
    const double s1 = block_bootstrap_se(x, y, stat, 24, 400, 1);
    const double s2 = block_bootstrap_se(x, y, stat, 24, 400, 2);
    CHECK(s1 > 0.0);
    CHECK(std::abs(s1 / s2 - 1.0) < 0.2);
    CHECK(block_bootstrap_se(x, y, stat, 24, 400, 1) == s1);
}

TEST_CASE("metric report serialization") {
    MetricReport r;
    r.acf1 = 0.5;
    r.holding_time = 3.0;
    r.n_crossings = 12;
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["holding_time"].get<double>() == 3.0);
    CHECK(j["sign_accuracy"].is_null());
    CHECK(j["n_crossings"].get<long>() == 12);
    CHECK(r.csv_row() == "0.5,3,,,,12,");
    r.holding_time = std::numeric_limits<double>::infinity();
    CHECK(nlohmann::json::parse(r.to_json())["holding_time"] == "inf");
}
