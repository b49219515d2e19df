#include "common.hpp"

#include "mssa/error.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

namespace mssa {

bool ReplicationSummary::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

Table ReplicationSummary::table() const {
    Table t;
    t.header = {"key", "expected", "computed", "abs_diff", "tolerance", "status"};
    for (const auto& c : checks) {
        t.rows.push_back({c.key, fixed(c.expected, 4), fixed(c.computed, 4),
                          fixed(std::abs(c.computed - c.expected), 4), fixed(c.tolerance, 4),
                          c.pass ? "ok" : "MISMATCH"});
    }
    return t;
}

ValueMap values_of(const Var1ForecastResult& r) {
    ValueMap v;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const std::string s = "_" + std::to_string(i + 1);
        const auto& row = r.rows[i];
        v["var1.nu" + s] = row.nu;
        v["var1.true_crit" + s] = row.true_crit;
        v["var1.sample_crit" + s] = row.sample_crit;
        v["var1.true_ht" + s] = row.true_ht;
        v["var1.sample_ht" + s] = row.sample_ht;
        v["var1.true_ht_mse" + s] = row.true_ht_mse;
        v["var1.sample_ht_mse" + s] = row.sample_ht_mse;
    }
    return v;
}

ValueMap values_of(const WhSmoothResult& r) {
    ValueMap v;
    for (const auto* c : {&r.hp, &r.ssa1, &r.ssa2}) {
        std::string name = c->name;
        std::transform(name.begin(), name.end(), name.begin(), ::tolower);
        v["wh." + name + "_ht"] = c->ht;
        v["wh." + name + "_correlation"] = c->correlation;
        v["wh." + name + "_rms2"] = c->rms2;
    }
    v["wh.hp_acf"] = r.hp.acf;
    return v;
}

ValueMap values_of(const Var3SmoothResult& r) {
    ValueMap v;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const std::string s = "_" + std::to_string(i + 1);
        const auto& row = r.rows[i];
        v["var3.sign_accuracy" + s] = row.sign_accuracy;
        v["var3.correlation" + s] = row.correlation;
        v["var3.ht" + s] = row.ht;
        v["var3.data_ht" + s] = row.data_ht;
        v["var3.sample_sign_accuracy" + s] = row.sample_sign_accuracy;
        v["var3.sample_correlation" + s] = row.sample_correlation;
        v["var3.sample_ht" + s] = row.sample_ht;
        v["var3.sample_data_ht" + s] = row.sample_data_ht;
    }
    return v;
}

ValueMap values_of(const IndproNowcastResult& r) {
    ValueMap v;
    const std::vector<std::pair<std::string, const NowcastDesign*>> ds{
        {"hpc", &r.hpc}, {"mssa", &r.mssa}, {"mse", &r.mse}, {"ssa", &r.uni_ssa}};
    for (const auto& [key, d] : ds) {
        v["indpro.cor_" + key] = *d->expected.target_correlation;
        v["indpro.ht_" + key] = d->expected.holding_time;
        if (d->simulated) {
            v["indpro.sim_cor_" + key] = *d->simulated->target_correlation;
            v["indpro.sim_ht_" + key] = d->simulated->holding_time;
        }
        if (d->sample) {
            v["indpro.real_cor_" + key] = *d->sample->target_correlation;
            v["indpro.real_ht_" + key] = d->sample->holding_time;
        }
    }
    v["indpro.uni_mse_acf"] = r.uni_mse.expected.acf1;
    v["indpro.uni_mse_ht"] = r.uni_mse.expected.holding_time;
    v["indpro.uni_hpc_acf"] = r.uni_hpc.expected.acf1;
    v["indpro.uni_hpc_ht"] = r.uni_hpc.expected.holding_time;
    if (r.real) {
        v["indpro.real_T"] = r.real->raw_length;
        v["indpro.real_net_length"] = r.real->net_length;
        v["indpro.real_ccf_peak_lag"] = r.real->ccf_peak_lag;
    }
    return v;
}

ReplicationSummary compare_expected(const ValueMap& computed, const Json& expected) {
    ReplicationSummary s;
    for (const auto& [key, spec] : expected.items()) {
        ReplicationCheck c;
        c.key = key;
        c.expected = spec.at("value").get<double>();
        const bool relative = value_or(spec, "relative", false);
        const double tol = spec.at("tol").get<double>();
        c.tolerance = relative ? tol * std::abs(c.expected) : tol;
        const auto it = computed.find(key);
        if (it == computed.end()) {
            c.computed = std::numeric_limits<double>::quiet_NaN();
            c.pass = false;
        } else {
            c.computed = it->second;
            c.pass = std::abs(c.computed - c.expected) <= c.tolerance + 1e-12;
        }
        s.checks.push_back(c);
    }
    return s;
}

namespace {

Json config_or_empty(const std::filesystem::path& path) {
    return std::filesystem::exists(path) ? load_json(path.string()) : Json::object();
}

template <typename Config>
void apply_overrides(Config& c, const ReplicateOptions& o) {
    if (o.seed) {
        if constexpr (requires { c.seeds; }) {
            c.seeds = {*o.seed, *o.seed + 1, *o.seed + 2, *o.seed + 3, *o.seed + 4};
        } else {
            c.seed = *o.seed;
        }
    }
    if (o.samples) {
        c.samples = *o.samples;
    }
}

}  // namespace

ReplicationSummary run_replicate_paper(const ReplicateOptions& options, const OutDir& out) {
    const auto& dir = options.config_dir;
    auto sub = [&](const std::string& name) -> OutDir {
        return out ? OutDir(*out / name) : OutDir();
    };
    ValueMap all;

    auto var1 = Var1ForecastConfig::from_json(config_or_empty(dir / "var1_forecast.json"));
    apply_overrides(var1, options);
    all.merge(values_of(run_var1_forecast(var1, sub("var1-forecast"))));

    const auto wh = WhSmoothConfig::from_json(config_or_empty(dir / "wh_smooth.json"));
    all.merge(values_of(run_wh_smooth(wh, sub("wh-smooth"))));

    auto var3 = Var3SmoothConfig::from_json(config_or_empty(dir / "var3_smooth.json"));
    apply_overrides(var3, options);
    all.merge(values_of(run_var3_smooth(var3, sub("var3-smooth"))));

    auto indpro = IndproNowcastConfig::from_json(config_or_empty(dir / "indpro_nowcast.json"));
    apply_overrides(indpro, options);
    all.merge(values_of(run_indpro_nowcast(indpro, sub("indpro-nowcast"))));

    ReplicationSummary summary;
    const std::filesystem::path expected_dir = dir / "expected";
    if (std::filesystem::exists(expected_dir)) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(expected_dir)) {
            if (e.path().extension() == ".json") {
                files.push_back(e.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const ReplicationSummary part = compare_expected(all, load_json(f.string()));
            summary.checks.insert(summary.checks.end(), part.checks.begin(), part.checks.end());
        }
    }
    if (out) {
        summary.table().write_csv(detail::out_file(*out, "replication_summary.csv"));
        Table values;
        values.header = {"key", "value"};
        for (const auto& [k, v] : all) {
            values.rows.push_back({k, fixed(v, 6)});
        }
        values.write_csv(detail::out_file(*out, "replication_values.csv"));
    }
    return summary;
}

}  // namespace mssa
