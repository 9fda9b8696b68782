#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mixagg/rng.hpp"
#include "mixagg/weights.hpp"

namespace mixagg {

struct MixabilityReport {
    bool pass = false;
    double worst_slack = 0.0;
    std::size_t worst_outcome = 0;

    std::string to_json() const;
};

/// Brute-force check of the mixability inequality
///   exp(-eta * loss(aggregate, omega)) >= sum_n w^n exp(-eta * loss(n, omega))
/// over a finite outcome set. `aggregate_loss(i)` is the learner's loss on
/// outcome i; `expert_loss(n, i)` the n-th expert's.
MixabilityReport check_mixability(
    std::size_t n_outcomes, const WeightVector& w, double eta,
    const std::function<double(std::size_t)>& aggregate_loss,
    const std::function<double(std::size_t, std::size_t)>& expert_loss,
    double tol = 1e-9);

struct HolderReport {
    bool pass = false;
    double gap = 0.0;  // RHS - LHS of the discretized inequality

    std::string to_json() const;
};

/// Discrete generalized Hölder inequality: f is a strictly positive
/// n_x x n_y matrix (row-major), u the X-weights (sum 1), v and nu the
/// Y-weight function and Y-measure.
HolderReport check_holder(std::span<const double> f, std::size_t n_x, std::size_t n_y,
                          std::span<const double> u, std::span<const double> v,
                          std::span<const double> nu, double tol = 1e-9);

/// Exact optimal transport between equal-weight empirical distributions by
/// enumerating all assignments; n <= 8.
double discrete_ot_bruteforce(std::span<const double> xs, std::span<const double> ys,
                              const std::function<double(double, double)>& cost);

/// Exact optimal transport LP between weighted discrete distributions
/// (transportation simplex); supports <= 64 points each.
double discrete_ot_lp(std::span<const double> xs, std::span<const double> ws,
                      std::span<const double> ys, std::span<const double> vs,
                      const std::function<double(double, double)>& cost);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error of fn over `samples` seeded draws; fn
/// consumes the generator and returns one sample value.
McEstimate mc_integrate(const std::function<double(Rng&)>& fn, std::size_t samples,
                        std::uint64_t seed);

}  // namespace mixagg
