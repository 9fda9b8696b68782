#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mixagg/game_trace.hpp"
#include "mixagg/losses.hpp"
#include "mixagg/weights.hpp"

namespace mixagg {

enum class AggregationMode { mixable, expconcave };

struct GameConfig {
    LossSpec loss;
    AggregationMode mode = AggregationMode::expconcave;
    int n_experts = 1;
    int horizon = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Exponential-weights update w^n <- w^n exp(-eta l^n), normalized.
/// Computed in log space.
WeightVector aa_update_weights(const WeightVector& w, std::span<const double> losses,
                               double eta);

/// Mixloss m = -(1/eta) log sum_n w^n exp(-eta l^n).
double mixloss(const WeightVector& w, std::span<const double> losses, double eta);

/// One aggregating-algorithm game over typed forecast/outcome streams.
/// `forecasts(t)` supplies N forecasts for round t (1-based), `outcome(t)`
/// the revealed outcome; `aggregate` is the substitution rule and `loss`
/// the per-round loss. Throws on stream exhaustion naming the round.
template <typename Forecast, typename Outcome>
GameTrace aa_run(int n_experts, int horizon, double eta,
                 const std::function<std::vector<Forecast>(int)>& forecasts,
                 const std::function<Outcome(int)>& outcome,
                 const std::function<Forecast(std::span<const Forecast>,
                                              const WeightVector&)>& aggregate,
                 const std::function<double(const Forecast&, const Outcome&)>& loss,
                 const WeightVector* prior = nullptr) {
    if (n_experts < 1 || horizon < 1)
        throw std::invalid_argument("aa_run: need n_experts >= 1 and horizon >= 1");
    WeightVector w = prior ? *prior : WeightVector::uniform(static_cast<std::size_t>(n_experts));
    GameTrace trace;
    trace.rounds.reserve(static_cast<std::size_t>(horizon));
    for (int t = 1; t <= horizon; ++t) {
        std::vector<Forecast> gs = forecasts(t);
        if (gs.size() != static_cast<std::size_t>(n_experts))
            throw std::runtime_error("aa_run: forecast stream exhausted at round " +
                                     std::to_string(t));
        const Forecast agg = aggregate(gs, w);
        const Outcome om = outcome(t);
        GameRound round;
        round.weights_before = w.values();
        round.expert_losses.resize(gs.size());
        for (std::size_t n = 0; n < gs.size(); ++n)
            round.expert_losses[n] = loss(gs[n], om);
        round.learner_loss = loss(agg, om);
        round.mixloss = mixloss(w, round.expert_losses, eta);
        w = aa_update_weights(w, round.expert_losses, eta);
        trace.rounds.push_back(std::move(round));
    }
    return trace;
}

struct RegretReport {
    bool substitution_ok = false;   // h_t <= m_t every round
    bool telescoping_ok = false;    // sum m_t recovers the cumulative mixloss
    bool bound_ok = false;          // H_T <= ln(N)/eta + min_n L_T^n
    double regret = 0.0;
    double bound = 0.0;
    int first_bad_round = 0;  // 0 when everything passes
    std::string message;

    bool pass() const { return substitution_ok && telescoping_ok && bound_ok; }
};

/// Certifies the Aggregating Algorithm regret chain on a finished trace.
RegretReport verify_regret_chain(const GameTrace& trace, double eta, double tol = 1e-8);

}  // namespace mixagg
