#include "corrperf/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace corrperf {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& where,
                         const std::set<std::string>& allowed) {
    if (!object.is_object())
        throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& item : object.items())
        if (!allowed.count(item.key()))
            throw ConfigError("config: unknown key '" + where + item.key() + "'");
}

template <typename T>
T get_or(const json& object, const std::string& key, const std::string& where,
         T fallback) {
    if (!object.contains(key)) return fallback;
    try {
        return object.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for '" + where + key + "'");
    }
}

Experiment parse_experiment(const std::string& name) {
    if (name == "local-vs-nonlocal") return Experiment::LocalVsNonlocal;
    if (name == "same-size") return Experiment::SameSize;
    if (name == "three-body") return Experiment::ThreeBody;
    if (name == "faulty-gate") return Experiment::FaultyGate;
    if (name == "validate") return Experiment::Validate;
    throw ConfigError("config: unknown experiment '" + name + "'");
}

Topology parse_topology(const std::string& name) {
    if (name == "per-qubit-local") return Topology::PerQubitLocal;
    if (name == "shared-nonlocal") return Topology::SharedNonlocal;
    if (name == "local-split") return Topology::LocalSplit;
    throw ConfigError("config: unknown topology '" + name + "'");
}

WeightMode parse_mode(const std::string& name) {
    if (name == "total-weight") return WeightMode::TotalWeight;
    if (name == "css-split") return WeightMode::CssSplit;
    throw ConfigError("config: unknown mode '" + name + "'");
}

NoiseDistribution::Kind parse_distribution(const std::string& name) {
    if (name == "gaussian") return NoiseDistribution::Kind::Gaussian;
    if (name == "uniform") return NoiseDistribution::Kind::Uniform;
    throw ConfigError("config: unknown gate distribution '" + name + "'");
}

MomentMode parse_moment_mode(const std::string& name) {
    if (name == "plain") return MomentMode::Plain;
    if (name == "squared") return MomentMode::Squared;
    throw ConfigError("config: unknown moment mode '" + name + "'");
}

ExperimentConfig parse_config_json(const json& doc) {
    reject_unknown_keys(doc, "",
                        {"experiment", "code", "bath", "couplings", "grid",
                         "mode", "output", "gate"});
    if (!doc.contains("experiment"))
        throw ConfigError("config: missing required key 'experiment'");

    ExperimentConfig config;
    config.experiment =
        parse_experiment(get_or<std::string>(doc, "experiment", "", ""));

    if (doc.contains("code")) {
        const json& code = doc.at("code");
        reject_unknown_keys(code, "code.", {"n", "k", "d"});
        try {
            config.code = CodeParams::make(get_or<int>(code, "n", "code.", 7),
                                           get_or<int>(code, "k", "code.", 1),
                                           get_or<int>(code, "d", "code.", 3));
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("config: ") + err.what());
        }
    }
    if (doc.contains("bath")) {
        const json& bath = doc.at("bath");
        reject_unknown_keys(bath, "bath.", {"N", "beta_omega", "topology"});
        config.bath_N = get_or<int>(bath, "N", "bath.", config.bath_N);
        config.beta_omega =
            get_or<double>(bath, "beta_omega", "bath.", config.beta_omega);
        if (bath.contains("topology"))
            config.topology =
                parse_topology(get_or<std::string>(bath, "topology", "bath.", ""));
        if (config.bath_N < 0) throw ConfigError("config: bath.N must be >= 0");
        if (config.beta_omega < 0.0)
            throw ConfigError("config: bath.beta_omega must be >= 0");
    }
    if (doc.contains("couplings")) {
        const json& couplings = doc.at("couplings");
        reject_unknown_keys(couplings, "couplings.", {"gprime_ratio"});
        config.gprime_ratio = get_or<double>(couplings, "gprime_ratio",
                                             "couplings.", config.gprime_ratio);
    }
    if (doc.contains("grid")) {
        const json& grid = doc.at("grid");
        reject_unknown_keys(grid, "grid.", {"start", "stop", "points"});
        config.grid.start = get_or<double>(grid, "start", "grid.", config.grid.start);
        config.grid.stop = get_or<double>(grid, "stop", "grid.", config.grid.stop);
        config.grid.points = get_or<int>(grid, "points", "grid.", config.grid.points);
        if (config.grid.points < 1)
            throw ConfigError("config: grid.points must be >= 1");
        if (!(config.grid.stop >= config.grid.start))
            throw ConfigError("config: grid.stop must be >= grid.start");
    }
    if (doc.contains("mode"))
        config.mode = parse_mode(get_or<std::string>(doc, "mode", "", ""));
    config.output = get_or<std::string>(doc, "output", "", config.output);
    if (config.output.empty()) throw ConfigError("config: output path is empty");

    if (doc.contains("gate")) {
        if (config.experiment != Experiment::FaultyGate)
            throw ConfigError("config: 'gate' is only valid for the faulty-gate experiment");
        const json& gate = doc.at("gate");
        reject_unknown_keys(gate, "gate.",
                            {"n", "distribution", "scale_start", "scale_stop",
                             "scale_points", "moment_mode"});
        config.gate.n = get_or<int>(gate, "n", "gate.", config.gate.n);
        if (gate.contains("distribution"))
            config.gate.distribution = parse_distribution(
                get_or<std::string>(gate, "distribution", "gate.", ""));
        config.gate.scale_start =
            get_or<double>(gate, "scale_start", "gate.", config.gate.scale_start);
        config.gate.scale_stop =
            get_or<double>(gate, "scale_stop", "gate.", config.gate.scale_stop);
        config.gate.scale_points =
            get_or<int>(gate, "scale_points", "gate.", config.gate.scale_points);
        if (gate.contains("moment_mode"))
            config.gate.moment_mode = parse_moment_mode(
                get_or<std::string>(gate, "moment_mode", "gate.", ""));
        if (config.gate.n < 1) throw ConfigError("config: gate.n must be >= 1");
        if (config.gate.scale_points < 1)
            throw ConfigError("config: gate.scale_points must be >= 1");
        if (config.gate.scale_stop < config.gate.scale_start)
            throw ConfigError("config: gate.scale_stop must be >= gate.scale_start");
    }

    // Experiment-specific coherence checks.
    if (config.experiment == Experiment::SameSize &&
        config.bath_N % config.code.n != 0)
        throw ConfigError("config: same-size needs code n to divide bath.N");
    if (config.experiment == Experiment::ThreeBody &&
        config.topology == Topology::LocalSplit &&
        config.bath_N % config.code.n != 0)
        throw ConfigError("config: local-split needs code n to divide bath.N");
    if (config.gprime_ratio < 0.0)
        throw ConfigError("config: couplings.gprime_ratio must be >= 0");
    return config;
}

}  // namespace

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::LocalVsNonlocal: return "local-vs-nonlocal";
        case Experiment::SameSize: return "same-size";
        case Experiment::ThreeBody: return "three-body";
        case Experiment::FaultyGate: return "faulty-gate";
        case Experiment::Validate: return "validate";
    }
    throw std::logic_error("experiment_name: unreachable");
}

ExperimentConfig parse_config_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& err) {
        throw ConfigError(std::string("config: JSON parse error: ") + err.what());
    }
    return parse_config_json(doc);
}

ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();

    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::exception& err) {
        throw ConfigError(std::string("config: JSON parse error: ") + err.what());
    }
    for (const std::string& assignment : overrides) {
        const size_t eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("config: --set expects dotted.path=value, got '" +
                              assignment + "'");
        const std::string value_text = assignment.substr(eq + 1);
        json value;
        try {
            value = json::parse(value_text);
        } catch (const json::exception&) {
            value = value_text;  // plain string
        }
        // Walk/create the dotted path, then assign the leaf.
        json* node = &doc;
        std::string path_part = assignment.substr(0, eq);
        size_t start = 0;
        while (true) {
            const size_t dot = path_part.find('.', start);
            const std::string key = path_part.substr(
                start, dot == std::string::npos ? std::string::npos : dot - start);
            if (key.empty())
                throw ConfigError("config: empty key in --set path '" + path_part + "'");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            start = dot + 1;
        }
    }
    return parse_config_json(doc);
}

std::string resolved_config_json(const ExperimentConfig& config) {
    json doc;
    doc["experiment"] = experiment_name(config.experiment);
    doc["code"] = {{"n", config.code.n}, {"k", config.code.k}, {"d", config.code.d}};
    doc["bath"] = {{"N", config.bath_N},
                   {"beta_omega", config.beta_omega},
                   {"topology", topology_name(config.topology)}};
    doc["couplings"] = {{"gprime_ratio", config.gprime_ratio}};
    doc["grid"] = {{"start", config.grid.start},
                   {"stop", config.grid.stop},
                   {"points", config.grid.points}};
    doc["mode"] = config.mode == WeightMode::TotalWeight ? "total-weight" : "css-split";
    doc["output"] = config.output;
    if (config.experiment == Experiment::FaultyGate) {
        doc["gate"] = {
            {"n", config.gate.n},
            {"distribution",
             config.gate.distribution == NoiseDistribution::Kind::Gaussian
                 ? "gaussian"
                 : "uniform"},
            {"scale_start", config.gate.scale_start},
            {"scale_stop", config.gate.scale_stop},
            {"scale_points", config.gate.scale_points},
            {"moment_mode",
             config.gate.moment_mode == MomentMode::Plain ? "plain" : "squared"}};
    }
    return doc.dump(2) + "\n";
}

}  // namespace corrperf
