#pragma once

#include "mssa/config.hpp"
#include "mssa/metrics.hpp"
#include "mssa/solver.hpp"
#include "mssa/targets.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mssa {

/// Rectangular text table, emitted as CSV.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(const std::filesystem::path& path) const;
    std::string to_text() const;
};

/// Fixed-point formatting used for every emitted number (deterministic output).
std::string fixed(double v, int digits = 6);

/// Writes lag-indexed weight columns.
void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                       const std::vector<Vec>& columns, int first_index = 0);

using OutDir = std::optional<std::filesystem::path>;

// --- VAR(1) one-step-ahead forecast ------------------------------------------------

struct Var1ForecastConfig {
    ModelConfig model;
    int L = 100;
    int delta = 1;
    std::vector<double> ht{3.0, 8.0};
    long samples = 100000;
    std::vector<int> seeds{1, 2, 3, 4, 5};
    int burn_in = 1000;

    static Var1ForecastConfig from_json(const Json& j);
};

struct Var1SeriesRow {
    double nu = 0.0;
    double true_crit = 0.0;
    double sample_crit = 0.0;
    double true_ht = 0.0;
    double sample_ht = 0.0;
    double true_ht_mse = 0.0;
    double sample_ht_mse = 0.0;
};

struct Var1ForecastResult {
    std::vector<Var1SeriesRow> rows;
    std::vector<MssaSolution> solutions;
    std::vector<Vec> mse_weights;  ///< stacked innovation-space MSE predictors
    Table table() const;
};

Var1ForecastResult run_var1_forecast(const Var1ForecastConfig& config, const OutDir& out = {});

// --- Whittaker-Henderson / HP smoothing versus SSA ----------------------------------

struct WhSmoothConfig {
    double lambda = 14400.0;
    int L = 201;
    int hp_window = 201;
    double ssa2_correlation = 0.205;
    int sweep_step = 10;
    bool allow_incomplete_support = true;

    static WhSmoothConfig from_json(const Json& j);
};

struct SmootherColumn {
    std::string name;
    double acf = 0.0;
    double ht = 0.0;
    double correlation = 0.0;
    double rms2 = 0.0;
    double nu = 0.0;
    Vec weights;
};

struct WhSmoothResult {
    SmootherColumn hp;
    SmootherColumn ssa1;
    SmootherColumn ssa2;
    /// SSA2 variant matched to the computed HP correlation instead of the configured level.
    SmootherColumn ssa2_own;
    std::vector<int> sweep_delta;
    std::vector<Vec> sweep_weights;
    Table table() const;
};

WhSmoothResult run_wh_smooth(const WhSmoothConfig& config, const OutDir& out = {});

// --- Three-dimensional VAR(1) endpoint smoothing ------------------------------------

struct Var3SmoothConfig {
    ModelConfig model;
    int L = 51;
    int delta = 0;
    std::vector<double> ht{8.0, 6.0, 10.0};
    long samples = 100000;
    int seed = 1;
    int burn_in = 1000;
    int tail_length = 2000;

    static Var3SmoothConfig from_json(const Json& j);
};

struct Var3Row {
    double nu = 0.0;
    double sign_accuracy = 0.0;
    double correlation = 0.0;
    double ht = 0.0;
    double data_ht = 0.0;
    double sample_sign_accuracy = 0.0;
    double sample_correlation = 0.0;
    double sample_ht = 0.0;
    double sample_data_ht = 0.0;
};

struct Var3SmoothResult {
    std::vector<Var3Row> rows;
    std::vector<MssaSolution> solutions;
    Table table() const;
};

Var3SmoothResult run_var3_smooth(const Var3SmoothConfig& config, const OutDir& out = {});

// --- INDPRO / CLI nowcast -------------------------------------------------------------

struct IndproNowcastConfig {
    ModelConfig arma;
    ModelConfig varma;
    int L = 201;
    double lambda = 14400.0;
    int hp_window = 2001;
    double ht = 17.26;
    int target_series = 0;
    int tail_length = 2000;
    long samples = 1000000;
    int seed = 1;
    int burn_in = 1000;
    bool simulate = true;
    // real data
    std::string indpro_csv = "data/INDPRO.csv";
    std::string cli_csv = "data/USALOLITOAASTSAM.csv";
    std::string date_column = "observation_date";
    std::string indpro_column = "INDPRO";
    std::string cli_column = "USALOLITOAASTSAM";
    double trim_k = 5.0;
    int left_tail = 30;
    int bootstrap_block = 24;
    int bootstrap_reps = 500;
    int ccf_max_lag = 12;

    static IndproNowcastConfig from_json(const Json& j);
};

/// One nowcast design: data-space weights (1 x n per lag) and its performance.
struct NowcastDesign {
    std::string name;
    MAExpansion data_weights;
    MAExpansion innovation_weights;
    MetricReport expected;
    std::optional<MetricReport> simulated;
    std::optional<MetricReport> sample;
    std::optional<double> se_correlation;
    std::optional<double> se_ht;
};

struct RealDataSummary {
    int raw_length = 0;   ///< observations after differencing
    int net_length = 0;   ///< T - L - left tail
    long clipped = 0;
    int ccf_peak_lag = 0;
    Vec ccf;
};

struct IndproNowcastResult {
    /// Univariate designs under the ARMA model: MSE, HP-C, SSA.
    NowcastDesign uni_mse;
    NowcastDesign uni_hpc;
    NowcastDesign uni_ssa;
    /// Bivariate designs under the VARMA model: HP-C, M-SSA, MSE.
    NowcastDesign hpc;
    NowcastDesign mssa;
    NowcastDesign mse;
    double nu_ssa = 0.0;
    double nu_mssa = 0.0;
    std::optional<RealDataSummary> real;
    std::string real_data_status;

    Table expected_table() const;
    Table univariate_table() const;
    std::optional<Table> simulation_table() const;
    std::optional<Table> real_correlation_table() const;
    std::optional<Table> real_ht_table() const;
};

IndproNowcastResult run_indpro_nowcast(const IndproNowcastConfig& config, const OutDir& out = {});

// --- Generic solve ---------------------------------------------------------------------

struct SolveConfig {
    ModelConfig model;
    Json target;  ///< {"kind": "allpass-shift"|"hp-two-sided"|"identity"|"custom", ...}
    int L = 50;
    int target_index = 0;
    HtConstraint constraint;
    bool allow_incomplete_support = false;
    int tail_length = 2000;

    static SolveConfig from_json(const Json& j);
};

struct SolveResult {
    MssaSolution solution;
    Vec mse_weights;
    double rho_mse = 0.0;
    MAExpansion innovation_weights;
    MAExpansion data_weights;
    MetricReport metrics;
};

SolveResult run_solve(const SolveConfig& config, const OutDir& out = {});

/// Builds the target described by a config object (n = process dimension).
TargetSpec target_from_json(const Json& j, int n);

// --- Replication summary ---------------------------------------------------------------

struct ReplicationCheck {
    std::string key;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ReplicationSummary {
    std::vector<ReplicationCheck> checks;
    bool all_pass() const;
    Table table() const;
};

/// Flat key -> value map of every reported number, keyed "<experiment>.<quantity>".
using ValueMap = std::map<std::string, double>;

ValueMap values_of(const Var1ForecastResult& r);
ValueMap values_of(const WhSmoothResult& r);
ValueMap values_of(const Var3SmoothResult& r);
ValueMap values_of(const IndproNowcastResult& r);

/// Compares computed values against {"key": {"value": v, "tol": t}} files.
ReplicationSummary compare_expected(const ValueMap& computed, const Json& expected);

struct ReplicateOptions {
    std::filesystem::path config_dir = "configs";
    std::optional<int> seed;
    std::optional<long> samples;
};

ReplicationSummary run_replicate_paper(const ReplicateOptions& options, const OutDir& out = {});

}  // namespace mssa
