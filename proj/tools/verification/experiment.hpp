#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixagg/aa_engine.hpp"

namespace mixagg::tools {

/// Raised for anything wrong with a config file; carries the offending
/// field path when known. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
    std::string name;
    nlohmann::json params;  // generator-specific knobs
};

struct ExperimentConfig {
    GameConfig game;
    GeneratorSpec expert_pool;
    GeneratorSpec outcome_stream;  // name "file" reads one value per line
    std::string output = "out";
    std::vector<std::string> formats{"csv", "json"};

    static ExperimentConfig parse(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
};

struct ExperimentResult {
    GameTrace trace;
    RegretReport report;
    double eta = 0.0;
};

/// Runs the configured game in memory. Supported loss kinds: CRPS, KL,
/// BETA2, OT1D (the kinds whose substitution rules act on serializable
/// forecast types). Mid-game infinite losses surface as runtime_error
/// naming the round and expert.
ExperimentResult run_experiment_in_memory(const ExperimentConfig& cfg);

/// Runs the game and writes trace.csv / trace.json / summary.json under
/// cfg.output. Returns the process exit code.
int run_experiment(const ExperimentConfig& cfg);

std::string summary_json(const ExperimentConfig& cfg, const ExperimentResult& result);

}  // namespace mixagg::tools
