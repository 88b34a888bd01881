// corrperf: CSS-code performance under correlated dephasing baths and
// faulty-control-field fidelities, driven by JSON experiment configs.
#include <CLI11.hpp>
#include <iostream>

#include "corrperf/config.hpp"
#include "corrperf/evaluator.hpp"
#include "corrperf/runner.hpp"
#include "corrperf/version.hpp"

namespace {

int dispatch(const corrperf::ExperimentConfig& config) {
    const corrperf::RunResult result = corrperf::run_experiment(config, std::cout);
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSS-code performance under correlated noise"};
    app.set_version_flag("--version", corrperf::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    CLI::App* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("--set", overrides,
                    "override a config value (dotted.path=value), repeatable");

    CLI::App* validate =
        app.add_subcommand("validate", "cross-validate the evaluation paths");

    corrperf::ExperimentConfig gate_config;
    gate_config.experiment = corrperf::Experiment::FaultyGate;
    gate_config.output = "faulty_gate.csv";
    std::string gate_distribution = "gaussian";
    std::string gate_moment_mode = "plain";
    CLI::App* gate =
        app.add_subcommand("faulty-gate", "local vs global control-field fidelities");
    gate->add_option("--qubits", gate_config.gate.n, "qubit count")
        ->check(CLI::PositiveNumber);
    gate->add_option("--distribution", gate_distribution,
                     "noise distribution: gaussian | uniform");
    gate->add_option("--scale-start", gate_config.gate.scale_start,
                     "first distribution scale");
    gate->add_option("--scale-stop", gate_config.gate.scale_stop,
                     "last distribution scale");
    gate->add_option("--scale-points", gate_config.gate.scale_points,
                     "number of scales")
        ->check(CLI::PositiveNumber);
    gate->add_option("--moment-mode", gate_moment_mode,
                     "cosine moment convention: plain | squared");
    gate->add_option("--output", gate_config.output, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;  // bad invocation is a config problem
    }

    try {
        if (run->parsed())
            return dispatch(corrperf::load_config(config_path, overrides));
        if (validate->parsed()) {
            corrperf::ExperimentConfig config;
            config.experiment = corrperf::Experiment::Validate;
            return dispatch(config);
        }
        // faulty-gate: translate the flag spellings through the strict parser.
        if (gate_distribution == "gaussian")
            gate_config.gate.distribution =
                corrperf::NoiseDistribution::Kind::Gaussian;
        else if (gate_distribution == "uniform")
            gate_config.gate.distribution =
                corrperf::NoiseDistribution::Kind::Uniform;
        else
            throw corrperf::ConfigError("unknown distribution '" +
                                        gate_distribution + "'");
        if (gate_moment_mode == "plain")
            gate_config.gate.moment_mode = corrperf::MomentMode::Plain;
        else if (gate_moment_mode == "squared")
            gate_config.gate.moment_mode = corrperf::MomentMode::Squared;
        else
            throw corrperf::ConfigError("unknown moment mode '" +
                                        gate_moment_mode + "'");
        return dispatch(gate_config);
    } catch (const corrperf::ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const corrperf::InfeasibleError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
