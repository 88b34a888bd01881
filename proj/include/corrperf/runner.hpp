// Experiment driver: builds models from a validated config, runs the
// appropriate sweep, and emits CSV + run-manifest artifacts.
#ifndef CORRPERF_RUNNER_HPP
#define CORRPERF_RUNNER_HPP

#include <ostream>
#include <string>

#include "corrperf/config.hpp"

namespace corrperf {

struct RunResult {
    int exit_code = 0;
    std::string summary;
};

// Executes one experiment; writes config.output (CSV) and
// config.output + ".manifest.json" for curve-producing experiments.
// Throws ConfigError / InfeasibleError for the corresponding CLI exits.
RunResult run_experiment(const ExperimentConfig& config, std::ostream& log);

// Cross-path validation suite: magnetization-sector vs. literal
// partial-trace vs. chi-route evaluation over a catalog of small instances
// covering every topology and both interaction families.  Returns the
// maximum absolute deviation; `threshold` decides the reported pass/fail.
struct ValidationReport {
    double max_deviation = 0.0;
    size_t instances = 0;
    size_t comparisons = 0;
    bool passed(double threshold = 1e-9) const { return max_deviation < threshold; }
};

ValidationReport validation_suite(std::ostream& log, int grid_points = 16);

}  // namespace corrperf

#endif  // CORRPERF_RUNNER_HPP
