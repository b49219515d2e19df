#include "common.hpp"

#include "mssa/error.hpp"
#include "mssa/plot.hpp"

#include <limits>

namespace mssa {

WhSmoothConfig WhSmoothConfig::from_json(const Json& j) {
    WhSmoothConfig c;
    c.lambda = value_or(j, "lambda", c.lambda);
    c.L = value_or(j, "L", c.L);
    c.hp_window = value_or(j, "hp_window", c.hp_window);
    c.ssa2_correlation = value_or(j, "ssa2_correlation", c.ssa2_correlation);
    c.sweep_step = value_or(j, "sweep_step", c.sweep_step);
    c.allow_incomplete_support = value_or(j, "allow_incomplete_support", c.allow_incomplete_support);
    if (c.L < 3 || c.L % 2 == 0 || c.sweep_step < 1) {
        throw ValidationError("wh-smooth: L must be odd and >= 3, sweep_step >= 1");
    }
    return c;
}

Table WhSmoothResult::table() const {
    Table t;
    t.header = {"measure", hp.name, ssa1.name, ssa2.name, ssa2_own.name};
    const std::vector<const SmootherColumn*> cols{&hp, &ssa1, &ssa2, &ssa2_own};
    auto row = [&](const std::string& label, auto get, int digits) {
        std::vector<std::string> r{label};
        for (const auto* c : cols) {
            r.push_back(fixed(get(*c), digits));
        }
        t.rows.push_back(std::move(r));
    };
    row("holding_time", [](const SmootherColumn& c) { return c.ht; }, 3);
    row("target_correlation", [](const SmootherColumn& c) { return c.correlation; }, 4);
    row("rms_second_diff", [](const SmootherColumn& c) { return c.rms2; }, 5);
    row("acf1", [](const SmootherColumn& c) { return c.acf; }, 6);
    row("nu", [](const SmootherColumn& c) { return c.nu; }, 6);
    return t;
}

namespace {

SmootherColumn column_of(const std::string& name, const Vec& b, int centre, double nu) {
    SmootherColumn c;
    c.name = name;
    c.weights = b / b.norm();
    c.acf = TridiagSpectrum::lag_one_product(b, b) / b.squaredNorm();
    c.ht = ht_from_acf(c.acf);
    c.correlation = c.weights(centre);
    c.rms2 = rms_second_diff(b);
    c.nu = nu;
    return c;
}

}  // namespace

WhSmoothResult run_wh_smooth(const WhSmoothConfig& config, const OutDir& out) {
    const int L = config.L;
    const int centre = (L - 1) / 2;
    const TridiagSpectrum spectrum(L);
    const NoiseCovariance white = NoiseCovariance::identity(1);
    SolveOptions options;
    options.allow_incomplete_support = config.allow_incomplete_support;

    const TargetSpec hp = hp_two_sided(config.lambda, L, config.hp_window);
    Vec hp_w(L);
    for (int k = 0; k < L; ++k) {
        hp_w(k) = hp.weights.coeffs[k](0, 0);
    }

    // White noise data and the symmetric backcast target z_t = x_{t - centre}.
    const MAExpansion xi = MAExpansion::identity(1, L);
    const Vec gamma = target_convolution(allpass_shift(1, -centre), xi, L).stacked_row(0);

    WhSmoothResult r;
    r.hp = column_of("HP", hp_w, centre, std::numeric_limits<double>::quiet_NaN());
    const MssaSolution s1 =
        solve_mssa(gamma, white, spectrum, HtConstraint::acf(r.hp.acf), options);
    r.ssa1 = column_of("SSA1", s1.b, centre, s1.nu);
    const MssaSolution s2 = solve_dual(gamma, white, spectrum, config.ssa2_correlation,
                                       DualSense::Maximize, options);
    r.ssa2 = column_of("SSA2", s2.b, centre, s2.nu);
    const MssaSolution s3 =
        solve_dual(gamma, white, spectrum, r.hp.correlation, DualSense::Maximize, options);
    r.ssa2_own = column_of("SSA2_hp_corr", s3.b, centre, s3.nu);

    for (int delta = -centre; delta <= 0; delta += config.sweep_step) {
        const Vec g = target_convolution(allpass_shift(1, delta), xi, L).stacked_row(0);
        const MssaSolution s = solve_mssa(g, white, spectrum, HtConstraint::acf(r.hp.acf), options);
        r.sweep_delta.push_back(delta);
        r.sweep_weights.push_back(s.b / s.b.norm());
    }
    if (r.sweep_delta.back() != 0) {
        const Vec g = target_convolution(allpass_shift(1, 0), xi, L).stacked_row(0);
        const MssaSolution s = solve_mssa(g, white, spectrum, HtConstraint::acf(r.hp.acf), options);
        r.sweep_delta.push_back(0);
        r.sweep_weights.push_back(s.b / s.b.norm());
    }

    if (out) {
        r.table().write_csv(detail::out_file(*out, "wh_smooth_table.csv"));
        write_columns_csv(detail::out_file(*out, "wh_smooth_weights.csv"),
                          {"hp", "ssa1", "ssa2", "ssa2_hp_corr"},
                          {r.hp.weights, r.ssa1.weights, r.ssa2.weights, r.ssa2_own.weights});
        write_line_plot(detail::out_file(*out, "wh_smooth_weights.svg").string(),
                        "Symmetric smoothers scaled to unit length", detail::index_axis(L),
                        {{"HP", r.hp.weights}, {"SSA1", r.ssa1.weights}, {"SSA2", r.ssa2.weights}});
        std::vector<std::string> names;
        for (int d : r.sweep_delta) {
            names.push_back("delta_" + std::to_string(d));
        }
        write_columns_csv(detail::out_file(*out, "wh_smooth_delta_sweep.csv"), names, r.sweep_weights);
        std::vector<PlotSeries> lines;
        for (std::size_t i = 0; i < r.sweep_delta.size(); i += std::max<std::size_t>(1, r.sweep_delta.size() / 5)) {
            lines.push_back({names[i], r.sweep_weights[i]});
        }
        write_line_plot(detail::out_file(*out, "wh_smooth_delta_sweep.svg").string(),
                        "SSA smoothers across delta", detail::index_axis(L), lines);
    }
    return r;
}

}  // namespace mssa
