#include "common.hpp"

#include "mssa/error.hpp"
#include "mssa/plot.hpp"

namespace mssa {

namespace {

ModelConfig default_var3_model() {
    ModelConfig m;
    m.ar = {(Mat(3, 3) << 0.7, 0.4, -0.2, -0.6, 0.9, 0.3, 0.5, 0.2, -0.3).finished()};
    m.sigma = (Mat(3, 3) << 3.17, 0.77, -0.5, 0.77, 0.69, 0.0, -0.5, 0.0, 1.7).finished();
    m.intercept = Vec::Zero(3);
    return m;
}

}  // namespace

Var3SmoothConfig Var3SmoothConfig::from_json(const Json& j) {
    Var3SmoothConfig c;
    c.model = j.contains("model") ? ModelConfig::from_json(j.at("model")) : default_var3_model();
    c.L = value_or(j, "L", c.L);
    c.delta = value_or(j, "delta", c.delta);
    c.ht = value_or(j, "ht", c.ht);
    c.samples = value_or(j, "samples", c.samples);
    c.seed = value_or(j, "seed", c.seed);
    c.burn_in = value_or(j, "burn_in", c.burn_in);
    c.tail_length = value_or(j, "tail_length", c.tail_length);
    if (c.L < 2 || c.samples < 10 * c.L || c.tail_length < c.L) {
        throw ValidationError("var3-smooth: need L >= 2, samples >= 10 L, tail_length >= L");
    }
    if (static_cast<int>(c.ht.size()) != c.model.sigma.rows()) {
        throw ValidationError("var3-smooth: one holding time per series is required");
    }
    return c;
}

Table Var3SmoothResult::table() const {
    Table t;
    t.header = {"series", "sign_accuracy", "sample_sign_accuracy", "cor_with_data",
                "sample_cor_with_data", "ht_mssa", "sample_ht_mssa", "ht_data", "sample_ht_data", "nu"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        t.rows.push_back({std::to_string(i + 1), fixed(r.sign_accuracy, 4),
                          fixed(r.sample_sign_accuracy, 4), fixed(r.correlation, 4),
                          fixed(r.sample_correlation, 4), fixed(r.ht, 3), fixed(r.sample_ht, 3),
                          fixed(r.data_ht, 3), fixed(r.sample_data_ht, 3), fixed(r.nu, 4)});
    }
    return t;
}

Var3SmoothResult run_var3_smooth(const Var3SmoothConfig& config, const OutDir& out) {
    const VarmaModel model = config.model.build();
    const int n = model.dim();
    const int L = config.L;
    const TridiagSpectrum spectrum(L);
    const MAExpansion xi_long = ma_inversion(model, std::max(config.tail_length, L + config.delta));
    if (xi_long.tail_ratio() > 1e-6) {
        throw ValidationError("var3-smooth: MA inversion has not decayed; raise tail_length");
    }
    const TargetSpec target = allpass_shift(n, config.delta);
    const MAExpansion gxi = target_convolution(target, xi_long, L);

    const Mat x = simulate(model, static_cast<int>(config.samples),
                           static_cast<std::uint64_t>(config.seed), config.burn_in);
    Var3SmoothResult r;
    std::vector<FilteredSeries> outputs;
    for (int i = 0; i < n; ++i) {
        const Vec gamma = gxi.stacked_row(i);
        MatrixFilter row_filter{target.weights.first_lag, {}};
        for (const auto& c : target.weights.coeffs) {
            row_filter.coeffs.push_back(c.row(i));
        }
        SolveOptions options;
        options.target_variance = detail::full_target_variance(row_filter, xi_long, model.sigma);
        const MssaSolution sol =
            solve_mssa(gamma, model.sigma, spectrum, HtConstraint::holding_time(config.ht[i]), options);

        Var3Row row;
        row.nu = sol.nu;
        row.correlation = sol.target_correlation;
        row.sign_accuracy = sa_from_corr(sol.target_correlation);
        row.ht = sol.realized_ht;
        row.data_ht = expected_metrics(xi_long.row(i), model.sigma).holding_time;

        const FilteredSeries y = detail::run_filter(deconvolve(detail::row_expansion(sol.b, n), xi_long), x);
        // Target z_t = x_{i, t + delta}.
        const int t0 = std::max(y.first_t, -config.delta);
        const int t1 = std::min(y.last_t(), static_cast<int>(x.rows()) - 1 - config.delta);
        const Vec yv = detail::slice(y, 0, t0, t1);
        const Vec zv = x.col(i).segment(t0 + config.delta, t1 - t0 + 1);
        const MetricReport emp = empirical_metrics(yv, zv);
        row.sample_sign_accuracy = *emp.sign_accuracy;
        row.sample_correlation = *emp.target_correlation;
        row.sample_ht = emp.holding_time;
        row.sample_data_ht = empirical_metrics(Vec(x.col(i)), std::nullopt, L).holding_time;

        r.rows.push_back(row);
        r.solutions.push_back(sol);
        outputs.push_back(y);
    }

    if (out) {
        r.table().write_csv(detail::out_file(*out, "var3_smooth_table.csv"));
        std::vector<std::string> names;
        std::vector<Vec> cols;
        for (int i = 0; i < n; ++i) {
            const MAExpansion B = deconvolve(detail::row_expansion(r.solutions[i].b, n), xi_long);
            std::vector<PlotSeries> lines;
            for (int j = 0; j < n; ++j) {
                names.push_back("target" + std::to_string(i + 1) + "_x" + std::to_string(j + 1));
                cols.push_back(B.stacked_row(0).segment(j * L, L));
                lines.push_back({"on x" + std::to_string(j + 1), cols.back()});
            }
            write_line_plot(
                detail::out_file(*out, "var3_smooth_weights_" + std::to_string(i + 1) + ".svg").string(),
                "M-SSA smoother, target " + std::to_string(i + 1), detail::index_axis(L), lines);
        }
        write_columns_csv(detail::out_file(*out, "var3_smooth_weights.csv"), names, cols);
        const int span = 300;
        std::vector<std::string> snames;
        std::vector<Vec> scols;
        for (int i = 0; i < n; ++i) {
            const int t0 = outputs[i].first_t;
            snames.push_back("x" + std::to_string(i + 1));
            scols.push_back(x.col(i).segment(t0, span));
            snames.push_back("y" + std::to_string(i + 1));
            scols.push_back(detail::slice(outputs[i], 0, t0, t0 + span - 1));
        }
        write_columns_csv(detail::out_file(*out, "var3_smooth_series.csv"), snames, scols);
        Vec ccf12 = cross_correlation(x.col(0), x.col(1), 10);
        Vec acf2 = cross_correlation(x.col(1), x.col(1), 10);
        Vec ccf32 = cross_correlation(x.col(2), x.col(1), 10);
        write_columns_csv(detail::out_file(*out, "var3_smooth_ccf.csv"),
                          {"ccf_x1_x2", "acf_x2", "ccf_x3_x2"}, {ccf12, acf2, ccf32}, -10);
    }
    return r;
}

}  // namespace mssa
