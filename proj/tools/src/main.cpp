#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "../verification/certification.hpp"
#include "../verification/experiment.hpp"

namespace {

using namespace mixagg;
using namespace mixagg::tools;

int cmd_run(const std::string& config_path, const std::string& out_override) {
    ExperimentConfig cfg;
    try {
        cfg = ExperimentConfig::from_file(config_path);
        if (!out_override.empty()) cfg.output = out_override;
        if (const char* env_seed = std::getenv("MIXAGG_SEED"))
            cfg.game.seed = std::stoull(env_seed);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        const int rc = run_experiment(cfg);
        std::cout << "wrote " << cfg.output << "/summary.json\n";
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_verify(const std::vector<std::string>& scope_names, std::size_t trials,
               std::uint64_t seed, const std::string& out_dir, bool sharpness) {
    std::vector<LossKind> scope;
    for (const auto& name : scope_names) scope.push_back(loss_kind_from_name(name));

    if (trials == 0) {
        std::cout << "no trials requested; empty report\n";
        return 0;
    }
    const auto rows = run_certification_matrix(scope, trials, seed);
    bool all_pass = true;
    std::printf("%-28s %-14s %12s %10s %14s %8s\n", "rule", "loss", "eta", "trials",
                "worst_slack", "result");
    for (const auto& r : rows) {
        std::printf("%-28s %-14s %12.6g %10zu %14.3e %8s\n", r.rule.c_str(),
                    loss_kind_name(r.kind).c_str(), r.eta, r.trials, r.worst_slack,
                    r.pass ? "pass" : "FAIL");
        all_pass = all_pass && r.pass;
    }
    if (sharpness) {
        const auto probe = eta_sharpness_probe(trials, seed);
        std::printf("sharpness probe: %s after %zu trials (worst slack %.3e)\n",
                    probe.violation_found ? "violation found" : "no violation",
                    probe.trials_used, probe.worst_slack);
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream((std::filesystem::path(out_dir) / "certification.json").string())
            << matrix_to_json(rows) << '\n';
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online aggregation of functional and probabilistic forecasts"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "run a configured expert-advice game");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory override");

    std::vector<std::string> scope;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::string verify_out;
    bool sharpness = false;
    auto* verify = app.add_subcommand("verify", "certify aggregation rules on random instances");
    verify->add_option("--scope", scope, "loss kinds to certify (default: all)");
    verify->add_option("--trials", trials, "instances per rule");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--out", verify_out, "directory for the JSON report");
    verify->add_flag("--sharpness", sharpness, "also probe the rate at 4x");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir);
        return cmd_verify(scope, trials, seed, verify_out, sharpness);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
