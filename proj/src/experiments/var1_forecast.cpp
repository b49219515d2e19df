#include "common.hpp"

#include "mssa/error.hpp"
#include "mssa/plot.hpp"

#include <future>

namespace mssa {

namespace {

ModelConfig default_var1_model() {
    ModelConfig m;
    m.ar = {(Mat(2, 2) << 0.7, 0.4, -0.6, 0.9).finished()};
    m.sigma = (Mat(2, 2) << 1.09, -1.45, -1.45, 2.58).finished();
    m.intercept = Vec::Zero(2);
    return m;
}

struct SeedSample {
    std::vector<double> crit;
    std::vector<double> ht;
    std::vector<double> ht_mse;
};

}  // namespace

Var1ForecastConfig Var1ForecastConfig::from_json(const Json& j) {
    Var1ForecastConfig c;
    c.model = j.contains("model") ? ModelConfig::from_json(j.at("model")) : default_var1_model();
    c.L = value_or(j, "L", c.L);
    c.delta = value_or(j, "delta", c.delta);
    c.ht = value_or(j, "ht", c.ht);
    c.samples = value_or(j, "samples", c.samples);
    c.seeds = value_or(j, "seeds", c.seeds);
    c.burn_in = value_or(j, "burn_in", c.burn_in);
    if (c.L < 2 || c.delta < 0 || c.samples < 10 * c.L || c.seeds.empty()) {
        throw ValidationError("var1-forecast: need L >= 2, delta >= 0, samples >= 10 L, a seed");
    }
    if (static_cast<int>(c.ht.size()) != c.model.sigma.rows()) {
        throw ValidationError("var1-forecast: one holding time per series is required");
    }
    return c;
}

Table Var1ForecastResult::table() const {
    Table t;
    t.header = {"series", "nu", "sample_crit", "true_crit", "sample_ht_ssa", "true_ht_ssa",
                "sample_ht_mse", "true_ht_mse"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        t.rows.push_back({std::to_string(i + 1), fixed(r.nu, 4), fixed(r.sample_crit, 4),
                          fixed(r.true_crit, 4), fixed(r.sample_ht, 3), fixed(r.true_ht, 3),
                          fixed(r.sample_ht_mse, 3), fixed(r.true_ht_mse, 3)});
    }
    return t;
}

Var1ForecastResult run_var1_forecast(const Var1ForecastConfig& config, const OutDir& out) {
    const VarmaModel model = config.model.build();
    const int n = model.dim();
    const int L = config.L;
    const TridiagSpectrum spectrum(L);
    const MAExpansion xi = ma_inversion(model, L + config.delta);
    const MAExpansion gxi = target_convolution(allpass_shift(n, config.delta), xi, L);

    Var1ForecastResult result;
    std::vector<MAExpansion> ssa_data;
    std::vector<MAExpansion> mse_data;
    for (int i = 0; i < n; ++i) {
        const Vec gamma = gxi.stacked_row(i);
        const MssaSolution sol =
            solve_mssa(gamma, model.sigma, spectrum, HtConstraint::holding_time(config.ht[i]));
        Var1SeriesRow row;
        row.nu = sol.nu;
        row.true_crit = sol.mse_correlation;
        row.true_ht = sol.realized_ht;
        row.true_ht_mse = ht_from_acf(rho_mse(gamma, model.sigma));
        result.rows.push_back(row);
        result.solutions.push_back(sol);
        result.mse_weights.push_back(gamma);
        ssa_data.push_back(deconvolve(detail::row_expansion(sol.b, n), xi));
        mse_data.push_back(deconvolve(detail::row_expansion(gamma, n), xi));
    }

    // Replications are independent; each gets its own seed.
    std::vector<std::future<SeedSample>> jobs;
    for (int seed : config.seeds) {
        jobs.push_back(std::async(std::launch::async, [&, seed] {
            const Mat x = simulate(model, static_cast<int>(config.samples),
                                   static_cast<std::uint64_t>(seed), config.burn_in);
            SeedSample s;
            for (int i = 0; i < n; ++i) {
                const auto [y, m] =
                    detail::align(detail::run_filter(ssa_data[i], x), detail::run_filter(mse_data[i], x));
                s.crit.push_back(sample_correlation(y, m));
                s.ht.push_back(empirical_metrics(y).holding_time);
                s.ht_mse.push_back(empirical_metrics(m).holding_time);
            }
            return s;
        }));
    }
    const double reps = static_cast<double>(jobs.size());
    for (auto& job : jobs) {
        const SeedSample s = job.get();
        for (int i = 0; i < n; ++i) {
            result.rows[i].sample_crit += s.crit[i] / reps;
            result.rows[i].sample_ht += s.ht[i] / reps;
            result.rows[i].sample_ht_mse += s.ht_mse[i] / reps;
        }
    }

    if (out) {
        result.table().write_csv(detail::out_file(*out, "var1_forecast_table.csv"));
        std::vector<std::string> names;
        std::vector<Vec> cols;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const std::string tag = "target" + std::to_string(i + 1) + "_x" + std::to_string(j + 1);
                names.push_back("mssa_" + tag);
                cols.push_back(ssa_data[i].stacked_row(0).segment(j * L, L));
                names.push_back("mse_" + tag);
                cols.push_back(mse_data[i].stacked_row(0).segment(j * L, L));
            }
        }
        write_columns_csv(detail::out_file(*out, "var1_forecast_weights.csv"), names, cols);
        for (int i = 0; i < n; ++i) {
            std::vector<PlotSeries> lines;
            for (int j = 0; j < n; ++j) {
                lines.push_back({"M-SSA on x" + std::to_string(j + 1),
                                 ssa_data[i].stacked_row(0).segment(j * L, L)});
            }
            write_line_plot(detail::out_file(*out, "var1_forecast_weights_" + std::to_string(i + 1) + ".svg")
                                .string(),
                            "M-SSA forecast weights, target " + std::to_string(i + 1),
                            detail::index_axis(L), lines);
        }
        const Mat x = simulate(model, 10 * L, static_cast<std::uint64_t>(config.seeds.front()),
                               config.burn_in);
        std::vector<std::string> snames;
        std::vector<Vec> scols;
        for (int i = 0; i < n; ++i) {
            const auto [y, m] =
                detail::align(detail::run_filter(ssa_data[i], x), detail::run_filter(mse_data[i], x));
            snames.push_back("mssa_" + std::to_string(i + 1));
            scols.push_back(y);
            snames.push_back("mse_" + std::to_string(i + 1));
            scols.push_back(m);
            write_line_plot(detail::out_file(*out, "var1_forecast_output_" + std::to_string(i + 1) + ".svg")
                                .string(),
                            "Forecasts of series " + std::to_string(i + 1), detail::index_axis(y.size()),
                            {{"M-SSA", y}, {"MSE", m}});
        }
        write_columns_csv(detail::out_file(*out, "var1_forecast_series.csv"), snames, scols);
    }
    return result;
}

}  // namespace mssa
