#include "corrperf/runner.hpp"

#include <cmath>
#include <json.hpp>

#include "corrperf/csv.hpp"
#include "corrperf/evaluator.hpp"
#include "corrperf/gate_fidelity.hpp"
#include "corrperf/version.hpp"

namespace corrperf {

namespace {

using nlohmann::json;

void write_manifest(const ExperimentConfig& config,
                    const std::vector<std::pair<std::string, std::string>>& columns) {
    json doc;
    doc["version"] = kVersion;
    doc["config"] = json::parse(resolved_config_json(config));
    json legend = json::object();
    for (const auto& [column, meaning] : columns) legend[column] = meaning;
    doc["columns"] = legend;
    write_text_atomic(config.output + ".manifest.json", doc.dump(2) + "\n");
}

BathSpec bath_for(Topology topology, int N, double beta_omega) {
    BathSpec bath;
    bath.topology = topology;
    bath.N = N;
    bath.omega = 1.0;
    bath.beta = beta_omega;  // only the product enters anywhere
    bath.g = 1.0;
    return bath;
}

RunResult run_two_curve_experiment(const ExperimentConfig& config,
                                   const NoiseModel& first,
                                   const NoiseModel& second,
                                   const std::string& first_meaning,
                                   const std::string& second_meaning,
                                   std::ostream& log) {
    const auto curves = sweep({first, second}, config.mode, config.grid);
    const auto& a = curves[0];
    const auto& b = curves[1];
    std::vector<std::vector<double>> rows;
    rows.reserve(a.grid.size());
    for (size_t i = 0; i < a.grid.size(); ++i)
        rows.push_back({a.grid[i], a.values[i], b.values[i],
                        a.values[i] - b.values[i]});
    write_csv_atomic(config.output, {"g_tau", "p_N", "p_N_second", "diff"}, rows);
    write_manifest(config, {{"g_tau", "dimensionless time g*tau_d"},
                            {"p_N", first_meaning + " (" + a.method + " path)"},
                            {"p_N_second", second_meaning + " (" + b.method + " path)"},
                            {"diff", "p_N - p_N_second"}});
    RunResult result;
    result.summary = "wrote " + config.output + " (" +
                     std::to_string(a.grid.size()) + " rows)";
    log << result.summary << "\n";
    return result;
}

RunResult run_faulty_gate(const ExperimentConfig& config, std::ostream& log) {
    const GateConfig& gate = config.gate;
    std::vector<double> scales(static_cast<size_t>(gate.scale_points));
    if (gate.scale_points == 1) {
        scales[0] = gate.scale_start;
    } else {
        const double step = (gate.scale_stop - gate.scale_start) /
                            static_cast<double>(gate.scale_points - 1);
        for (int i = 0; i < gate.scale_points; ++i)
            scales[static_cast<size_t>(i)] = gate.scale_start + step * i;
        scales.back() = gate.scale_stop;
    }
    const auto rows = faulty_gate_sweep(scales, gate.n, gate.distribution,
                                        gate.moment_mode);
    std::vector<std::vector<double>> cells;
    cells.reserve(rows.size());
    for (const auto& row : rows)
        cells.push_back({row.scale, row.f_local, row.f_global});
    write_csv_atomic(config.output, {"a", "f_local", "f_global"}, cells);
    write_manifest(config,
                   {{"a", "distribution scale times tau_r*g"},
                    {"f_local", "independent per-qubit control noise"},
                    {"f_global", "one shared control-noise variable"}});
    RunResult result;
    result.summary = "wrote " + config.output + " (" +
                     std::to_string(cells.size()) + " rows)";
    log << result.summary << "\n";
    return result;
}

}  // namespace

ValidationReport validation_suite(std::ostream& log, int grid_points) {
    struct Instance {
        int n, k, d;
        Topology topology;
        int N;
        double gprime;
    };
    // Every topology and both families on codes small enough for the
    // literal partial-trace and chi routes (joint space <= 2^6).
    std::vector<Instance> instances;
    const std::vector<std::tuple<int, int, int>> codes = {
        {1, 0, 1}, {2, 1, 1}, {3, 1, 1}, {3, 1, 3}};
    for (const auto& [n, k, d] : codes)
        for (const Topology topology :
             {Topology::PerQubitLocal, Topology::SharedNonlocal,
              Topology::LocalSplit})
            for (const double gprime : {0.0, 0.1}) {
                const int N = topology == Topology::SharedNonlocal ? 3
                              : topology == Topology::PerQubitLocal ? 1
                                                                    : n;
                instances.push_back({n, k, d, topology, N, gprime});
            }

    const double beta_omega = 0.3;
    Grid grid;
    grid.points = grid_points;

    ValidationReport report;
    for (const Instance& inst : instances) {
        const CodeParams code = CodeParams::make(inst.n, inst.k, inst.d);
        const NoiseModel model = make_noise_model(
            code, bath_for(inst.topology, inst.N, beta_omega), inst.gprime);
        const Eigen::VectorXd h = hamiltonian_diagonal(model);
        const auto weights =
            per_state_bath_weights(total_bath_spins(model), beta_omega);
        const Eigen::Index dim = h.size();

        for (const double tau : grid.values()) {
            const double sector =
                performance_sector_at(model, WeightMode::TotalWeight, tau);
            // Literal propagator matrix for the partial-trace and chi routes.
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
            const Eigen::VectorXcd phases = propagator_diagonal(h, tau);
            for (Eigen::Index i = 0; i < dim; ++i) u(i, i) = phases[i];

            const double direct =
                performance_direct(u, weights, code, WeightMode::TotalWeight);
            const ChiMatrix chi =
                chi_from_kraus(kraus_from_propagator(u, code.n, weights));
            const double via_chi =
                performance_from_chi(chi, code, WeightMode::TotalWeight);

            report.max_deviation =
                std::max({report.max_deviation, std::abs(sector - direct),
                          std::abs(via_chi - direct)});
            report.comparisons += 2;
        }
        ++report.instances;
    }
    log << "validation: " << report.instances << " instances, "
        << report.comparisons << " comparisons, max deviation "
        << format_double(report.max_deviation) << "\n";
    return report;
}

RunResult run_experiment(const ExperimentConfig& config, std::ostream& log) {
    switch (config.experiment) {
        case Experiment::LocalVsNonlocal: {
            const NoiseModel local = make_noise_model(
                config.code,
                bath_for(Topology::PerQubitLocal, config.bath_N, config.beta_omega),
                0.0, "per-qubit-local");
            const NoiseModel nonlocal = make_noise_model(
                config.code,
                bath_for(Topology::SharedNonlocal, config.bath_N, config.beta_omega),
                0.0, "shared-nonlocal");
            return run_two_curve_experiment(
                config, local, nonlocal,
                "p_N, per-qubit-local baths of " + std::to_string(config.bath_N),
                "p_N, one shared bath of " + std::to_string(config.bath_N), log);
        }
        case Experiment::SameSize: {
            const NoiseModel split = make_noise_model(
                config.code,
                bath_for(Topology::LocalSplit, config.bath_N, config.beta_omega),
                0.0, "local-split");
            const NoiseModel shared = make_noise_model(
                config.code,
                bath_for(Topology::SharedNonlocal, config.bath_N, config.beta_omega),
                0.0, "shared-nonlocal");
            return run_two_curve_experiment(
                config, split, shared,
                "p_N, bath split into " + std::to_string(config.code.n) + " parts",
                "p_N, one shared bath of " + std::to_string(config.bath_N), log);
        }
        case Experiment::ThreeBody: {
            const NoiseModel two_body = make_noise_model(
                config.code,
                bath_for(config.topology, config.bath_N, config.beta_omega), 0.0,
                "two-body");
            const NoiseModel three_body = make_noise_model(
                config.code,
                bath_for(config.topology, config.bath_N, config.beta_omega),
                config.gprime_ratio * 1.0, "three-body");
            return run_two_curve_experiment(config, two_body, three_body,
                                            "p_N, two-body couplings only",
                                            "p_N, added pair couplings g' = " +
                                                format_double(config.gprime_ratio) +
                                                " * g",
                                            log);
        }
        case Experiment::FaultyGate:
            return run_faulty_gate(config, log);
        case Experiment::Validate: {
            const ValidationReport report = validation_suite(log);
            RunResult result;
            if (report.passed()) {
                result.summary = "max deviation " +
                                 format_double(report.max_deviation) + " < 1e-09";
                result.exit_code = 0;
            } else {
                result.summary = "VALIDATION FAILURE: max deviation " +
                                 format_double(report.max_deviation) + " >= 1e-09";
                result.exit_code = 1;
            }
            log << result.summary << "\n";
            return result;
        }
    }
    throw std::logic_error("run_experiment: unreachable");
}

}  // namespace corrperf
