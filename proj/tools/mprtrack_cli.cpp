#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mprtrack/mprtrack.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* cmd, CommonArgs* args) {
    cmd->add_option("--config", args->config_path, "JSON configuration file");
    cmd->add_option("--out", args->out_path, "output CSV path (default: stdout)");
    cmd->add_option("--seed", args->seed, "override sim.seed from the config");
}

mprtrack::ExperimentConfig load(const CommonArgs& args, mprtrack::ExperimentKind kind) {
    auto cfg = args.config_path.empty() ? mprtrack::ExperimentConfig{}
                                        : mprtrack::load_config(args.config_path);
    if (cfg.experiment && *cfg.experiment != kind) {
        throw mprtrack::ConfigError("config is for experiment \"" +
                                    mprtrack::to_string(*cfg.experiment) +
                                    "\" but subcommand is \"" +
                                    mprtrack::to_string(kind) + "\"");
    }
    if (args.seed) {
        cfg.sim.seed = *args.seed;
    }
    return cfg;
}

void emit(const mprtrack::CsvTable& table, const std::string& out_path) {
    const auto text = mprtrack::to_csv(table);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        mprtrack::write_text_file(out_path, text);
        std::cout << "wrote " << table.rows.size() << " rows to " << out_path << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RTE/CAE analysis for two Markov sources on a shared MPR channel"};
    app.require_subcommand(1);

    CommonArgs rte_args, gamma_args, weight_args, validate_args, solve_args;
    auto* rte_cmd = app.add_subcommand(
        "rte-curves", "closed-form reconstruction error vs update probability");
    add_common_options(rte_cmd, &rte_args);
    auto* gamma_cmd = app.add_subcommand(
        "gamma-sweep", "policy comparison vs symmetric sampling budget");
    add_common_options(gamma_cmd, &gamma_args);
    auto* weight_cmd = app.add_subcommand(
        "weight-sweep", "policy comparison vs source weight split");
    add_common_options(weight_cmd, &weight_args);
    auto* validate_cmd = app.add_subcommand(
        "validate", "closed forms vs Monte Carlo simulation with z-scores");
    add_common_options(validate_cmd, &validate_args);
    auto* solve_cmd = app.add_subcommand(
        "solve", "vertex candidate table and optimized policy for one scenario");
    add_common_options(solve_cmd, &solve_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (rte_cmd->parsed()) {
            const auto cfg = load(rte_args, mprtrack::ExperimentKind::RteCurves);
            emit(mprtrack::run_rte_curves(cfg), rte_args.out_path);
        } else if (gamma_cmd->parsed()) {
            const auto cfg = load(gamma_args, mprtrack::ExperimentKind::GammaSweep);
            emit(mprtrack::run_gamma_sweep(cfg), gamma_args.out_path);
        } else if (weight_cmd->parsed()) {
            const auto cfg = load(weight_args, mprtrack::ExperimentKind::WeightSweep);
            emit(mprtrack::run_weight_sweep(cfg), weight_args.out_path);
        } else if (validate_cmd->parsed()) {
            const auto cfg = load(validate_args, mprtrack::ExperimentKind::Validate);
            const auto report = mprtrack::run_validate(cfg);
            emit(report.table, validate_args.out_path);
            std::cout << report.summary;
            if (!report.passed) {
                return kExitValidationFailure;
            }
        } else if (solve_cmd->parsed()) {
            const auto cfg = load(solve_args, mprtrack::ExperimentKind::Solve);
            const auto report = mprtrack::run_solve_table(cfg);
            emit(report.table, solve_args.out_path);
            std::cout << report.summary;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitSuccess;
}
