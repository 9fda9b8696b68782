#include "mixagg/game_trace.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mixagg {

namespace {
std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}
}  // namespace

std::vector<double> GameTrace::cumulative_expert_losses() const {
    std::vector<double> cum(n_experts(), 0.0);
    for (const auto& r : rounds)
        for (std::size_t n = 0; n < cum.size(); ++n) cum[n] += r.expert_losses[n];
    return cum;
}

double GameTrace::cumulative_learner_loss() const {
    double h = 0.0;
    for (const auto& r : rounds) h += r.learner_loss;
    return h;
}

double GameTrace::best_expert_loss() const {
    const auto cum = cumulative_expert_losses();
    double best = cum.empty() ? 0.0 : cum.front();
    for (double c : cum)
        if (c < best) best = c;
    return best;
}

double GameTrace::regret() const { return cumulative_learner_loss() - best_expert_loss(); }

void GameTrace::validate() const {
    for (std::size_t t = 0; t < rounds.size(); ++t)
        if (rounds[t].learner_loss > rounds[t].mixloss + 1e-9)
            throw std::logic_error("GameTrace: learner loss exceeds mixloss at round " +
                                   std::to_string(t + 1));
}

std::string GameTrace::to_csv() const {
    const std::size_t n = n_experts();
    std::string out = "t,h_t,m_t";
    for (std::size_t i = 1; i <= n; ++i) out += ",l_t^" + std::to_string(i);
    for (std::size_t i = 1; i <= n; ++i) out += ",w_t^" + std::to_string(i);
    out += "\n";
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        const auto& r = rounds[t];
        out += std::to_string(t + 1) + "," + fmt_double(r.learner_loss) + "," +
               fmt_double(r.mixloss);
        for (double l : r.expert_losses) out += "," + fmt_double(l);
        for (double w : r.weights_before) out += "," + fmt_double(w);
        out += "\n";
    }
    return out;
}

std::string GameTrace::to_json() const {
    nlohmann::json j;
    j["schema"] = "mixagg-trace-v1";
    j["rounds"] = nlohmann::json::array();
    for (const auto& r : rounds) {
        j["rounds"].push_back({{"expert_losses", r.expert_losses},
                               {"learner_loss", r.learner_loss},
                               {"mixloss", r.mixloss},
                               {"weights_before", r.weights_before}});
    }
    return j.dump(2);
}

}  // namespace mixagg
