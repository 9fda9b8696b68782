#pragma once

#include <string>
#include <vector>

#include "mixagg/weights.hpp"

namespace mixagg {

/// Per-round record of an aggregating-algorithm game.
struct GameRound {
    std::vector<double> expert_losses;
    double learner_loss = 0.0;
    double mixloss = 0.0;
    std::vector<double> weights_before;
};

struct GameTrace {
    std::vector<GameRound> rounds;

    std::size_t n_experts() const {
        return rounds.empty() ? 0 : rounds.front().expert_losses.size();
    }

    std::vector<double> cumulative_expert_losses() const;
    double cumulative_learner_loss() const;
    double best_expert_loss() const;
    double regret() const;

    /// Every round must satisfy learner_loss <= mixloss + 1e-9.
    void validate() const;

    /// One row per round: t, h_t, m_t, l_t^1..N, w_t^1..N.
    std::string to_csv() const;
    std::string to_json() const;
};

}  // namespace mixagg
