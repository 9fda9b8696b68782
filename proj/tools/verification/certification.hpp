#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mixagg/losses.hpp"

namespace mixagg::tools {

/// One row of the rate certification matrix: an (aggregation rule, eta)
/// pair checked on randomized instances.
struct MatrixRow {
    std::string rule;
    LossKind kind;
    double eta = 0.0;
    std::size_t trials = 0;
    double worst_slack = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

/// Runs the certification matrix. `trials` is the instance count for
/// deterministic rows; rows whose loss is a frozen-sample discretization
/// of a sphere or frequency integral use trials/10. Empty scope means all
/// kinds. Rows run in parallel; each draws from its own seed stream.
std::vector<MatrixRow> run_certification_matrix(std::span<const LossKind> scope,
                                                std::size_t trials,
                                                std::uint64_t seed);

std::string matrix_to_json(const std::vector<MatrixRow>& rows);

/// Counterexample search for the substitution rule run at four times its
/// certified rate. A found violation is the expected outcome.
struct SharpnessReport {
    bool violation_found = false;
    std::size_t trials_used = 0;
    double worst_slack = 0.0;
    std::string detail;
};

SharpnessReport eta_sharpness_probe(std::size_t max_trials, std::uint64_t seed);

}  // namespace mixagg::tools
