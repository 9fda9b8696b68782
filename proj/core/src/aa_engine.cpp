#include "mixagg/aa_engine.hpp"

#include <cmath>

#include "mixagg/numeric.hpp"

namespace mixagg {

void GameConfig::validate() const {
    if (n_experts < 1 || horizon < 1)
        throw std::invalid_argument("GameConfig: need n_experts >= 1 and horizon >= 1");
    if (mode == AggregationMode::mixable) {
        switch (loss.kind) {
            case LossKind::CRPS:
            case LossKind::KL:
            case LossKind::BETA2:
            case LossKind::OT1D:
                break;
            default:
                throw std::invalid_argument(
                    "GameConfig: no closed-form mixable aggregation for " +
                    loss_kind_name(loss.kind));
        }
    }
}

WeightVector aa_update_weights(const WeightVector& w, std::span<const double> losses,
                               double eta) {
    if (w.size() != losses.size())
        throw std::invalid_argument("aa_update_weights: size mismatch");
    std::vector<double> logw(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) {
        if (!std::isfinite(losses[n]))
            throw std::invalid_argument("aa_update_weights: non-finite loss");
        logw[n] = (w[n] > 0.0 ? std::log(w[n]) : -std::numeric_limits<double>::infinity()) -
                  eta * losses[n];
    }
    const double norm = log_sum_exp(logw);
    if (!std::isfinite(norm))
        throw std::runtime_error("aa_update_weights: degenerate weight normalizer");
    std::vector<double> out(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) out[n] = std::exp(logw[n] - norm);
    return WeightVector(std::move(out));
}

double mixloss(const WeightVector& w, std::span<const double> losses, double eta) {
    if (w.size() != losses.size()) throw std::invalid_argument("mixloss: size mismatch");
    std::vector<double> terms(w.size());
    for (std::size_t n = 0; n < w.size(); ++n)
        terms[n] = (w[n] > 0.0 ? std::log(w[n]) : -std::numeric_limits<double>::infinity()) -
                   eta * losses[n];
    return -log_sum_exp(terms) / eta;
}

RegretReport verify_regret_chain(const GameTrace& trace, double eta, double tol) {
    RegretReport report;
    const std::size_t n = trace.n_experts();
    if (n == 0) {
        report.message = "empty trace";
        return report;
    }

    report.substitution_ok = true;
    double sum_mixloss = 0.0;
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
        const auto& r = trace.rounds[t];
        sum_mixloss += r.mixloss;
        if (r.learner_loss > r.mixloss + tol && report.substitution_ok) {
            report.substitution_ok = false;
            report.first_bad_round = static_cast<int>(t + 1);
            report.message = "h_t > m_t at round " + std::to_string(t + 1);
        }
    }

    // telescoping: sum_t m_t must equal the cumulative mixloss computed
    // from the final cumulative losses and the initial weights
    const auto cum = trace.cumulative_expert_losses();
    const WeightVector w1(trace.rounds.front().weights_before);
    const double total_mixloss = mixloss(w1, cum, eta);
    report.telescoping_ok = std::abs(sum_mixloss - total_mixloss) <= tol;
    if (!report.telescoping_ok && report.message.empty())
        report.message = "telescoping identity violated";

    report.regret = trace.regret();
    report.bound = std::log(static_cast<double>(n)) / eta;
    report.bound_ok =
        trace.cumulative_learner_loss() <= report.bound + trace.best_expert_loss() + tol;
    if (!report.bound_ok && report.message.empty()) report.message = "regret bound violated";
    if (report.pass()) report.message = "ok";
    return report;
}

}  // namespace mixagg
