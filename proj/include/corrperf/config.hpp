// JSON experiment configuration: strict schema (unknown keys rejected),
// defaults, and dotted-path overrides.
#ifndef CORRPERF_CONFIG_HPP
#define CORRPERF_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "corrperf/evaluator.hpp"
#include "corrperf/gate_fidelity.hpp"
#include "corrperf/models.hpp"
#include "corrperf/pauli.hpp"

namespace corrperf {

// Configuration problems map to CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Experiment {
    LocalVsNonlocal,  // per-qubit-local vs shared-nonlocal, same N
    SameSize,         // local-split vs shared-nonlocal, same total N
    ThreeBody,        // two-body vs three-body on one topology
    FaultyGate,       // local vs global control-field fidelities
    Validate,         // oracle-equivalence suite
};

std::string experiment_name(Experiment e);

struct GateConfig {
    int n = 7;
    NoiseDistribution::Kind distribution = NoiseDistribution::Kind::Gaussian;
    double scale_start = 0.05;
    double scale_stop = 2.0;
    int scale_points = 20;
    MomentMode moment_mode = MomentMode::Plain;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::LocalVsNonlocal;
    CodeParams code = CodeParams::make(7, 1, 3);
    int bath_N = 7;
    double beta_omega = 0.01;
    Topology topology = Topology::SharedNonlocal;  // three-body experiment only
    double gprime_ratio = 0.1;                     // three-body experiment only
    Grid grid;
    WeightMode mode = WeightMode::TotalWeight;
    std::string output = "out.csv";
    GateConfig gate;
};

// Parses and validates a JSON document (text form).  Unknown keys at any
// level raise ConfigError.
ExperimentConfig parse_config_text(const std::string& json_text);

// Loads a config file and applies --set overrides ("dotted.path=value",
// value parsed as JSON scalar with plain-string fallback) before parsing.
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides);

// The fully resolved configuration as canonical JSON (used for manifests).
std::string resolved_config_json(const ExperimentConfig& config);

}  // namespace corrperf

#endif  // CORRPERF_CONFIG_HPP
