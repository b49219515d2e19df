#include "common.hpp"

#include "mssa/data.hpp"
#include "mssa/error.hpp"
#include "mssa/plot.hpp"

namespace mssa {

namespace {

ModelConfig default_arma() {
    ModelConfig m;
    m.ar = {Mat::Constant(1, 1, 0.96), Mat::Constant(1, 1, -0.16)};
    m.ma = {Mat::Constant(1, 1, -0.64)};
    m.intercept = Vec::Constant(1, 0.01);
    m.sigma = Mat::Identity(1, 1);
    return m;
}

// MA coefficient in the a_t - Theta a_{t-1} convention: the sign is flipped relative to the
// printed "+ Theta eps_{t-1}" form, which is the reading that reproduces the expected row.
ModelConfig default_varma() {
    ModelConfig m;
    m.ar = {(Mat(2, 2) << 0.63, 0.32, -0.28, 1.28).finished(),
            (Mat(2, 2) << -0.07, -0.44, -0.05, -0.36).finished(),
            (Mat(2, 2) << 0.02, 0.3, 0.0, 0.09).finished()};
    m.ma = {(Mat(2, 2) << -0.5, 0.43, 0.19, -0.2).finished()};
    m.intercept = Vec::Zero(2);
    m.sigma = (Mat(2, 2) << 0.562, 0.05414, 0.05414, 0.1494).finished();
    return m;
}

// Places a scalar-input filter on input `col` of an n-input row.
MAExpansion embed(const MAExpansion& scalar, int n, int col) {
    MAExpansion e;
    for (const auto& c : scalar.coeffs) {
        Mat m = Mat::Zero(1, n);
        m(0, col) = c(0, 0);
        e.coeffs.push_back(std::move(m));
    }
    return e;
}

MatrixFilter filter_row(const MatrixFilter& f, int i) {
    MatrixFilter out{f.first_lag, {}};
    for (const auto& c : f.coeffs) {
        out.coeffs.push_back(c.row(i));
    }
    return out;
}

// Drops lags below -left_tail and rescales to unit sum (sum over the target's own input).
MatrixFilter truncate_left(const MatrixFilter& f, int left_tail) {
    const int start = std::max(f.first_lag, -left_tail);
    MatrixFilter out{start, {}};
    double total = 0.0;
    for (int k = start; k <= f.last_lag(); ++k) {
        out.coeffs.push_back(f.at(k));
        total += f.at(k).sum();
    }
    for (auto& c : out.coeffs) {
        c /= total;
    }
    return out;
}

std::string fmt_opt(const std::optional<double>& v, int digits) {
    return v ? fixed(*v, digits) : "";
}

}  // namespace

IndproNowcastConfig IndproNowcastConfig::from_json(const Json& j) {
    IndproNowcastConfig c;
    c.arma = j.contains("arma") ? ModelConfig::from_json(j.at("arma")) : default_arma();
    c.varma = j.contains("varma") ? ModelConfig::from_json(j.at("varma")) : default_varma();
    c.L = value_or(j, "L", c.L);
    c.lambda = value_or(j, "lambda", c.lambda);
    c.hp_window = value_or(j, "hp_window", c.hp_window);
    c.ht = value_or(j, "ht", c.ht);
    c.target_series = value_or(j, "target_series", c.target_series);
    c.tail_length = value_or(j, "tail_length", c.tail_length);
    c.samples = value_or(j, "samples", c.samples);
    c.seed = value_or(j, "seed", c.seed);
    c.burn_in = value_or(j, "burn_in", c.burn_in);
    c.simulate = value_or(j, "simulate", c.simulate);
    const Json data = j.contains("data") ? j.at("data") : Json::object();
    c.indpro_csv = value_or(data, "indpro_csv", c.indpro_csv);
    c.cli_csv = value_or(data, "cli_csv", c.cli_csv);
    c.date_column = value_or(data, "date_column", c.date_column);
    c.indpro_column = value_or(data, "indpro_column", c.indpro_column);
    c.cli_column = value_or(data, "cli_column", c.cli_column);
    c.trim_k = value_or(data, "trim_k", c.trim_k);
    c.left_tail = value_or(data, "left_tail", c.left_tail);
    c.bootstrap_block = value_or(data, "bootstrap_block", c.bootstrap_block);
    c.bootstrap_reps = value_or(data, "bootstrap_reps", c.bootstrap_reps);
    c.ccf_max_lag = value_or(data, "ccf_max_lag", c.ccf_max_lag);
    if (c.L < 3 || c.tail_length < 2 * c.L || c.ht <= 1.0 || c.samples < 10 * c.L) {
        throw ValidationError("indpro-nowcast: need L >= 3, tail_length >= 2 L, ht > 1, samples >= 10 L");
    }
    if (c.arma.sigma.rows() != 1 || c.varma.sigma.rows() < 2) {
        throw ValidationError("indpro-nowcast: arma must be univariate and varma multivariate");
    }
    if (c.target_series < 0 || c.target_series >= c.varma.sigma.rows()) {
        throw ValidationError("indpro-nowcast: target_series out of range");
    }
    return c;
}

Table IndproNowcastResult::expected_table() const {
    Table t;
    t.header = {"row", "cor_hpc", "cor_mssa", "cor_mse", "ht_hpc", "ht_mssa", "ht_mse"};
    t.rows.push_back({"expected", fixed(*hpc.expected.target_correlation, 4),
                      fixed(*mssa.expected.target_correlation, 4),
                      fixed(*mse.expected.target_correlation, 4), fixed(hpc.expected.holding_time, 3),
                      fixed(mssa.expected.holding_time, 3), fixed(mse.expected.holding_time, 3)});
    return t;
}

Table IndproNowcastResult::univariate_table() const {
    Table t;
    t.header = {"design", "acf1", "holding_time", "target_correlation"};
    for (const auto* d : {&uni_mse, &uni_hpc, &uni_ssa}) {
        t.rows.push_back({d->name, fixed(d->expected.acf1, 5), fixed(d->expected.holding_time, 3),
                          fixed(*d->expected.target_correlation, 4)});
    }
    return t;
}

std::optional<Table> IndproNowcastResult::simulation_table() const {
    if (!mssa.simulated) {
        return std::nullopt;
    }
    Table t = expected_table();
    t.rows.push_back({"sample", fixed(*hpc.simulated->target_correlation, 4),
                      fixed(*mssa.simulated->target_correlation, 4),
                      fixed(*mse.simulated->target_correlation, 4),
                      fixed(hpc.simulated->holding_time, 3), fixed(mssa.simulated->holding_time, 3),
                      fixed(mse.simulated->holding_time, 3)});
    return t;
}

std::optional<Table> IndproNowcastResult::real_correlation_table() const {
    if (!real) {
        return std::nullopt;
    }
    Table t;
    t.header = {"row", "cor_hpc", "cor_ssa", "cor_mssa", "cor_mse"};
    const std::vector<const NowcastDesign*> ds{&hpc, &uni_ssa, &mssa, &mse};
    std::vector<std::string> e{"expected"}, s{"sample"}, se{"bootstrap_se"};
    for (const auto* d : ds) {
        e.push_back(fixed(*d->expected.target_correlation, 4));
        s.push_back(fixed(*d->sample->target_correlation, 4));
        se.push_back(fmt_opt(d->se_correlation, 4));
    }
    t.rows = {e, s, se};
    return t;
}

std::optional<Table> IndproNowcastResult::real_ht_table() const {
    if (!real) {
        return std::nullopt;
    }
    Table t;
    t.header = {"row", "ht_hpc", "ht_ssa", "ht_mssa", "ht_mse"};
    const std::vector<const NowcastDesign*> ds{&hpc, &uni_ssa, &mssa, &mse};
    std::vector<std::string> e{"expected"}, s{"sample"}, g{"sample_gap_estimator"}, se{"bootstrap_se"};
    for (const auto* d : ds) {
        e.push_back(fixed(d->expected.holding_time, 3));
        s.push_back(fixed(d->sample->holding_time, 3));
        g.push_back(fmt_opt(d->sample->holding_time_gaps, 3));
        se.push_back(fmt_opt(d->se_ht, 3));
    }
    t.rows = {e, s, g, se};
    return t;
}

IndproNowcastResult run_indpro_nowcast(const IndproNowcastConfig& config, const OutDir& out) {
    const int L = config.L;
    const TridiagSpectrum spectrum(L);
    const TargetSpec hp = hp_two_sided(config.lambda, 2 * L - 1, config.hp_window);
    const BenchmarkFilter hpc_scalar = hp_concurrent(config.lambda, L);
    IndproNowcastResult r;

    // Univariate designs under the ARMA model.
    const VarmaModel arma = config.arma.build();
    const MAExpansion xi_u = ma_inversion(arma, config.tail_length);
    const MAExpansion gxi_u = target_convolution(hp, xi_u, L);
    const double tv_u = detail::full_target_variance(hp.weights, xi_u, arma.sigma);
    {
        r.uni_mse = NowcastDesign{"MSE (univariate)", deconvolve(gxi_u, xi_u), gxi_u,
                                  expected_metrics(gxi_u, gxi_u, tv_u, arma.sigma), {}, {}, {}, {}};
        const MAExpansion hpc_xi = convolve(hpc_scalar.weights, xi_u, 0, L);
        r.uni_hpc = NowcastDesign{"HP-C (univariate)", hpc_scalar.weights, hpc_xi,
                                  expected_metrics(hpc_xi, gxi_u, tv_u, arma.sigma), {}, {}, {}, {}};
        SolveOptions opt;
        opt.target_variance = tv_u;
        const MssaSolution sol = solve_mssa(gxi_u.stacked_row(0), arma.sigma, spectrum,
                                            HtConstraint::holding_time(config.ht), opt);
        const MAExpansion b = detail::row_expansion(sol.b, 1);
        r.uni_ssa = NowcastDesign{"SSA", deconvolve(b, xi_u), b,
                                  expected_metrics(b, gxi_u, tv_u, arma.sigma), {}, {}, {}, {}};
        r.nu_ssa = sol.nu;
    }

    // Bivariate designs under the VARMA model.
    const VarmaModel varma = config.varma.build();
    const int n = varma.dim();
    const int i = config.target_series;
    const MAExpansion xi_b = ma_inversion(varma, config.tail_length);
    const TargetSpec hp_n = diagonal_target(hp, n);
    const MatrixFilter target_row = filter_row(hp_n.weights, i);
    const MAExpansion gxi_b = target_convolution(hp_n, xi_b, L).row(i);
    const double tv_b = detail::full_target_variance(target_row, xi_b, varma.sigma);
    {
        r.mse = NowcastDesign{"MSE", deconvolve(gxi_b, xi_b), gxi_b,
                              expected_metrics(gxi_b, gxi_b, tv_b, varma.sigma), {}, {}, {}, {}};
        const MAExpansion hpc_data = diagonal_benchmark(hpc_scalar, n).weights.row(i);
        const MAExpansion hpc_xi = convolve(hpc_data, xi_b, 0, L);
        r.hpc = NowcastDesign{"HP-C", hpc_data, hpc_xi,
                              expected_metrics(hpc_xi, gxi_b, tv_b, varma.sigma), {}, {}, {}, {}};
        SolveOptions opt;
        opt.target_variance = tv_b;
        const MssaSolution sol = solve_mssa(gxi_b.stacked_row(0), varma.sigma, spectrum,
                                            HtConstraint::holding_time(config.ht), opt);
        const MAExpansion b = detail::row_expansion(sol.b, n);
        r.mssa = NowcastDesign{"M-SSA", deconvolve(b, xi_b), b,
                               expected_metrics(b, gxi_b, tv_b, varma.sigma), {}, {}, {}, {}};
        r.nu_mssa = sol.nu;
    }

    if (config.simulate) {
        const Mat x = simulate(varma, static_cast<int>(config.samples),
                               static_cast<std::uint64_t>(config.seed), config.burn_in);
        const FilteredSeries z = apply_filter(target_row, x);
        for (auto* d : {&r.hpc, &r.mssa, &r.mse}) {
            const auto [y, zz] = detail::align(detail::run_filter(d->data_weights, x), z);
            d->simulated = empirical_metrics(y, zz);
        }
    }

    const bool have_data =
        std::filesystem::exists(config.indpro_csv) && std::filesystem::exists(config.cli_csv);
    if (!have_data) {
        r.real_data_status = "data fixtures not found (" + config.indpro_csv + ", " + config.cli_csv +
                             "); real-data tables skipped";
    } else {
        const SeriesFrame raw =
            join({load_csv(config.indpro_csv, config.date_column, {config.indpro_column}),
                  load_csv(config.cli_csv, config.date_column, {config.cli_column})});
        const TrimResult trimmed = trim_outliers(log_diff_standardize(raw), config.trim_k);
        const Mat& x = trimmed.frame.values;
        RealDataSummary s;
        s.raw_length = static_cast<int>(x.rows());
        s.clipped = trimmed.clipped;
        s.ccf = cross_correlation(x.col(0), x.col(1), config.ccf_max_lag);
        Eigen::Index peak = 0;
        s.ccf.maxCoeff(&peak);
        s.ccf_peak_lag = static_cast<int>(peak) - config.ccf_max_lag;

        // Sample target: HP row with the acausal side cut at left_tail leads.
        const FilteredSeries z = apply_filter(truncate_left(target_row, config.left_tail), x);
        const MAExpansion ssa_data = embed(r.uni_ssa.data_weights, n, i);
        const std::vector<std::pair<NowcastDesign*, MAExpansion>> designs{
            {&r.hpc, r.hpc.data_weights}, {&r.uni_ssa, ssa_data}, {&r.mssa, r.mssa.data_weights},
            {&r.mse, r.mse.data_weights}};
        for (const auto& [d, w] : designs) {
            const auto [y, zz] = detail::align(detail::run_filter(w, x), z);
            d->sample = empirical_metrics(y, zz);
            s.net_length = static_cast<int>(y.size());
            d->se_correlation = block_bootstrap_se(
                y, zz, [](const Vec& a, const Vec& b) { return sample_correlation(a, b); },
                config.bootstrap_block, config.bootstrap_reps, static_cast<std::uint64_t>(config.seed));
            d->se_ht = block_bootstrap_se(
                y, zz, [](const Vec& a, const Vec&) { return empirical_metrics(a).holding_time; },
                config.bootstrap_block, config.bootstrap_reps, static_cast<std::uint64_t>(config.seed));
        }
        r.real = s;
        r.real_data_status = "real data: T = " + std::to_string(s.raw_length) +
                             ", net sample = " + std::to_string(s.net_length);

        if (out) {
            write_csv(trimmed.frame, detail::out_file(*out, "indpro_cli_transformed.csv").string());
            write_columns_csv(detail::out_file(*out, "indpro_cli_ccf.csv"), {"ccf_indpro_cli"}, {s.ccf},
                              -config.ccf_max_lag);
            const FilteredSeries comp = filter_components(r.mssa.data_weights, x, 0);
            write_columns_csv(detail::out_file(*out, "indpro_mssa_components.csv"),
                              {"indpro_component", "cli_component"},
                              {Vec(comp.values.col(0)), Vec(comp.values.col(1))}, comp.first_t);
            std::vector<std::string> names{"target"};
            std::vector<Vec> cols{z.values.col(0)};
            for (const auto& [d, w] : designs) {
                const FilteredSeries y = detail::run_filter(w, x);
                names.push_back(d->name);
                cols.push_back(detail::slice(y, 0, z.first_t, std::min(z.last_t(), y.last_t())));
            }
            write_columns_csv(detail::out_file(*out, "indpro_nowcasts.csv"), names, cols, z.first_t);
        }
    }

    if (out) {
        r.expected_table().write_csv(detail::out_file(*out, "indpro_expected.csv"));
        r.univariate_table().write_csv(detail::out_file(*out, "indpro_univariate.csv"));
        if (auto t = r.simulation_table()) {
            t->write_csv(detail::out_file(*out, "indpro_simulation.csv"));
        }
        if (auto t = r.real_correlation_table()) {
            t->write_csv(detail::out_file(*out, "indpro_real_correlations.csv"));
        }
        if (auto t = r.real_ht_table()) {
            t->write_csv(detail::out_file(*out, "indpro_real_holding_times.csv"));
        }
        std::vector<Vec> xi_cols;
        std::vector<std::string> xi_names;
        for (int j = 0; j < n; ++j) {
            xi_names.push_back("xi_x" + std::to_string(i + 1) + "_eps" + std::to_string(j + 1));
            xi_cols.push_back(xi_b.row(i).stacked_row(0).segment(j * xi_b.length(), L));
        }
        write_columns_csv(detail::out_file(*out, "indpro_ma_inversion.csv"), xi_names, xi_cols);

        std::vector<std::string> names;
        std::vector<Vec> cols;
        for (const auto* d : {&r.mse, &r.mssa, &r.hpc}) {
            const Vec w = d->data_weights.stacked_row(0);
            for (int j = 0; j < n; ++j) {
                names.push_back(d->name + "_x" + std::to_string(j + 1));
                cols.push_back(w.segment(j * L, L));
            }
        }
        names.push_back("SSA_x1");
        cols.push_back(r.uni_ssa.data_weights.stacked_row(0));
        names.push_back("MSE_univariate_x1");
        cols.push_back(r.uni_mse.data_weights.stacked_row(0));
        Vec hp_w(hp.weights.size());
        for (int k = 0; k < hp.weights.size(); ++k) {
            hp_w(k) = hp.weights.coeffs[k](0, 0);
        }
        write_columns_csv(detail::out_file(*out, "indpro_filter_weights.csv"), names, cols);
        write_columns_csv(detail::out_file(*out, "indpro_hp_target.csv"), {"hp_two_sided"}, {hp_w},
                          hp.weights.first_lag);
        const int shown = std::min(L, 70);
        auto unit = [&](const Vec& v) { return Vec(v.head(shown) / v.norm()); };
        write_line_plot(detail::out_file(*out, "indpro_univariate_filters.svg").string(),
                        "Univariate nowcast filters (unit length)", detail::index_axis(shown),
                        {{"MSE", unit(r.uni_mse.data_weights.stacked_row(0))},
                         {"HP-C", unit(r.uni_hpc.data_weights.stacked_row(0))},
                         {"SSA", unit(r.uni_ssa.data_weights.stacked_row(0))}});
        const Vec mssa_w = r.mssa.data_weights.stacked_row(0);
        const Vec mse_w = r.mse.data_weights.stacked_row(0);
        write_line_plot(detail::out_file(*out, "indpro_bivariate_filters.svg").string(),
                        "Bivariate nowcast filters", detail::index_axis(50),
                        {{"M-SSA on INDPRO", mssa_w.segment(0, 50)},
                         {"M-SSA on CLI", mssa_w.segment(L, 50)},
                         {"MSE on INDPRO", mse_w.segment(0, 50)},
                         {"MSE on CLI", mse_w.segment(L, 50)}});
    }
    return r;
}

}  // namespace mssa
