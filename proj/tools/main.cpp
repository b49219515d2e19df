#include "mssa/data.hpp"
#include "mssa/error.hpp"
#include "mssa/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kNoSolution = 3, kData = 4 };

struct Common {
    std::string config;
    std::optional<int> seed;
    std::optional<long> samples;
    std::string out;
    bool fetch_data = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON config file (defaults reproduce the published setup)");
    cmd->add_option("--seed", c.seed, "Simulation seed");
    cmd->add_option("--samples", c.samples, "Simulation length");
    cmd->add_option("--out", c.out, "Output directory for tables, weights, series and plots");
}

mssa::Json config_json(const Common& c) {
    return c.config.empty() ? mssa::Json::object() : mssa::load_json(c.config);
}

mssa::OutDir out_dir(const Common& c) {
    return c.out.empty() ? mssa::OutDir() : mssa::OutDir(c.out);
}

void print_report(const mssa::SolveResult& r) {
    std::cout << "nu = " << r.solution.nu << ", correlation with MSE = " << r.solution.mse_correlation
              << (r.solution.is_degenerate_mse ? " (MSE embedding)" : "") << "\n"
              << mssa::MetricReport::csv_header() << "\n"
              << r.metrics.csv_row() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smooth sign accuracy predictors: solver and experiments"};
    app.require_subcommand(1);
    Common common;

    auto* solve = app.add_subcommand("solve", "Solve one constrained predictor from a config");
    auto* var1 = app.add_subcommand("var1-forecast", "Bivariate VAR(1) one-step-ahead forecast");
    auto* wh = app.add_subcommand("wh-smooth", "HP smoother versus SSA smoothers on white noise");
    auto* var3 = app.add_subcommand("var3-smooth", "Three-dimensional VAR(1) endpoint smoothing");
    auto* indpro = app.add_subcommand("indpro-nowcast", "INDPRO/CLI nowcast: expected, simulated, real data");
    auto* replicate = app.add_subcommand("replicate-paper", "Run every experiment and diff against expected values");
    for (auto* cmd : {solve, var1, wh, var3, indpro, replicate}) {
        add_common(cmd, common);
    }
    indpro->add_flag("--fetch-data", common.fetch_data, "Download INDPRO and CLI from FRED first");
    std::string config_dir = "configs";
    replicate->add_option("--config-dir", config_dir, "Directory with experiment configs and expected/");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            if (common.config.empty()) {
                throw mssa::ValidationError("solve requires --config");
            }
            print_report(mssa::run_solve(mssa::SolveConfig::from_json(config_json(common)), out_dir(common)));
        } else if (*var1) {
            auto c = mssa::Var1ForecastConfig::from_json(config_json(common));
            if (common.seed) {
                c.seeds = {*common.seed, *common.seed + 1, *common.seed + 2, *common.seed + 3, *common.seed + 4};
            }
            if (common.samples) {
                c.samples = *common.samples;
            }
            std::cout << mssa::run_var1_forecast(c, out_dir(common)).table().to_text();
        } else if (*wh) {
            const auto c = mssa::WhSmoothConfig::from_json(config_json(common));
            std::cout << mssa::run_wh_smooth(c, out_dir(common)).table().to_text();
        } else if (*var3) {
            auto c = mssa::Var3SmoothConfig::from_json(config_json(common));
            if (common.seed) {
                c.seed = *common.seed;
            }
            if (common.samples) {
                c.samples = *common.samples;
            }
            std::cout << mssa::run_var3_smooth(c, out_dir(common)).table().to_text();
        } else if (*indpro) {
            auto c = mssa::IndproNowcastConfig::from_json(config_json(common));
            if (common.seed) {
                c.seed = *common.seed;
            }
            if (common.samples) {
                c.samples = *common.samples;
            }
            if (common.fetch_data) {
                std::filesystem::create_directories(std::filesystem::path(c.indpro_csv).parent_path());
                mssa::fetch_fred_series(c.indpro_column, c.indpro_csv);
                mssa::fetch_fred_series(c.cli_column, c.cli_csv);
            }
            const auto r = mssa::run_indpro_nowcast(c, out_dir(common));
            std::cout << r.univariate_table().to_text() << "\n";
            if (auto t = r.simulation_table()) {
                std::cout << t->to_text();
            } else {
                std::cout << r.expected_table().to_text();
            }
            std::cout << "\n" << r.real_data_status << "\n";
            if (auto t = r.real_correlation_table()) {
                std::cout << t->to_text() << "\n" << r.real_ht_table()->to_text();
            }
        } else if (*replicate) {
            mssa::ReplicateOptions o;
            o.config_dir = config_dir;
            o.seed = common.seed;
            o.samples = common.samples;
            const auto s = mssa::run_replicate_paper(o, out_dir(common));
            std::cout << s.table().to_text();
            std::cout << (s.all_pass() ? "all values within tolerance\n" : "some values differ, see MISMATCH rows\n");
        }
    } catch (const mssa::NoSolution& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return kNoSolution;
    } catch (const mssa::SingularSupport& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return kNoSolution;
    } catch (const mssa::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const mssa::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const mssa::InvalidDimension& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const mssa::DivergenceError& e) {
        std::cerr << "invalid model: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
