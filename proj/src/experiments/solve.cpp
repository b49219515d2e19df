#include "common.hpp"

#include "mssa/error.hpp"

#include <fstream>

namespace mssa {

TargetSpec target_from_json(const Json& j, int n) {
    const std::string kind = value_or<std::string>(j, "kind", "allpass-shift");
    if (kind == "allpass-shift") {
        return allpass_shift(n, value_or(j, "h", 0));
    }
    if (kind == "identity") {
        return identity_target(n);
    }
    if (kind == "hp-two-sided") {
        TargetSpec t = hp_two_sided(value_or(j, "lambda", 14400.0), value_or(j, "length", 201),
                                    value_or(j, "window", 2001));
        t.delta = value_or(j, "delta", 0);
        return n == 1 ? t : diagonal_target(t, n);
    }
    if (kind == "custom") {
        if (!j.contains("weights") || !j.at("weights").is_array()) {
            throw ValidationError("custom target needs a 'weights' list");
        }
        MatrixFilter f{value_or(j, "first_lag", 0), {}};
        for (const auto& w : j.at("weights")) {
            Mat m = matrix_from_json(w, "target.weights");
            if (m.size() == 1 && n > 1) {
                m = m(0, 0) * Mat::Identity(n, n);
            }
            if (m.rows() != n || m.cols() != n) {
                throw ValidationError("custom target weights must be n x n");
            }
            f.coeffs.push_back(std::move(m));
        }
        return custom_target(std::move(f), value_or(j, "delta", 0));
    }
    throw ValidationError("unknown target kind '" + kind + "'");
}

SolveConfig SolveConfig::from_json(const Json& j) {
    SolveConfig c;
    if (!j.contains("model")) {
        throw ValidationError("solve: 'model' is required");
    }
    c.model = ModelConfig::from_json(j.at("model"));
    c.target = j.contains("target") ? j.at("target") : Json::object();
    c.L = value_or(j, "L", c.L);
    c.target_index = value_or(j, "target_index", c.target_index);
    c.allow_incomplete_support = value_or(j, "allow_incomplete_support", c.allow_incomplete_support);
    c.tail_length = value_or(j, "tail_length", c.tail_length);
    const Json cons = j.contains("constraint") ? j.at("constraint") : Json::object();
    if (cons.contains("acf")) {
        c.constraint = HtConstraint::acf(cons.at("acf").get<double>(), value_or(cons, "l", 1.0));
    } else if (cons.contains("ht")) {
        c.constraint = HtConstraint::holding_time(cons.at("ht").get<double>(), value_or(cons, "l", 1.0));
    } else {
        throw ValidationError("solve: constraint needs 'ht' or 'acf'");
    }
    if (c.L < 2 || c.tail_length < c.L) {
        throw ValidationError("solve: need L >= 2 and tail_length >= L");
    }
    if (c.target_index < 0 || c.target_index >= c.model.sigma.rows()) {
        throw ValidationError("solve: target_index out of range");
    }
    return c;
}

SolveResult run_solve(const SolveConfig& config, const OutDir& out) {
    const VarmaModel model = config.model.build();
    const int n = model.dim();
    const int L = config.L;
    const TargetSpec target = target_from_json(config.target, n);
    const int reach = std::max(0, target.weights.last_lag() - target.delta);
    const MAExpansion xi = ma_inversion(model, std::max(config.tail_length, L + reach));
    const MAExpansion gxi = target_convolution(target, xi, L).row(config.target_index);

    MatrixFilter row{target.weights.first_lag, {}};
    for (const auto& c : target.weights.coeffs) {
        row.coeffs.push_back(c.row(config.target_index));
    }
    SolveOptions options;
    options.allow_incomplete_support = config.allow_incomplete_support;
    options.target_variance = detail::full_target_variance(row, xi, model.sigma);

    SolveResult r;
    r.mse_weights = gxi.stacked_row(0);
    r.rho_mse = rho_mse(r.mse_weights, model.sigma);
    r.solution = solve_mssa(r.mse_weights, model.sigma, TridiagSpectrum(L), config.constraint, options);
    r.innovation_weights = detail::row_expansion(r.solution.b, n);
    r.data_weights = deconvolve(r.innovation_weights, xi);
    r.metrics = expected_metrics(r.innovation_weights, gxi, *options.target_variance, model.sigma);

    if (out) {
        std::vector<std::string> names;
        std::vector<Vec> cols;
        const Vec B = r.data_weights.stacked_row(0);
        for (int j = 0; j < n; ++j) {
            names.push_back("b_x" + std::to_string(j + 1));
            cols.push_back(B.segment(j * L, L));
            names.push_back("bxi_eps" + std::to_string(j + 1));
            cols.push_back(r.solution.b.segment(j * L, L));
            names.push_back("mse_xi_eps" + std::to_string(j + 1));
            cols.push_back(r.mse_weights.segment(j * L, L));
        }
        write_columns_csv(detail::out_file(*out, "solve_weights.csv"), names, cols);
        Json report = Json::parse(r.metrics.to_json());
        report["nu"] = std::isfinite(r.solution.nu) ? Json(r.solution.nu) : Json("inf");
        report["d_sign"] = r.solution.d_sign;
        report["scale"] = r.solution.scale;
        report["rho_mse"] = r.rho_mse;
        report["is_degenerate_mse"] = r.solution.is_degenerate_mse;
        report["correlation_with_mse"] = r.solution.mse_correlation;
        std::ofstream(detail::out_file(*out, "solve_report.json")) << report.dump(2) << "\n";
    }
    return r;
}

}  // namespace mssa
