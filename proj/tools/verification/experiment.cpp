#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mixagg/aggregation.hpp"
#include "mixagg/rng.hpp"

namespace mixagg::tools {

namespace {

double clip(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double param(const nlohmann::json& p, const char* key, double fallback) {
    if (!p.contains(key)) return fallback;
    if (!p[key].is_number())
        throw ConfigError(std::string("parameter '") + key + "' must be a number");
    return p[key].get<double>();
}

std::vector<double> read_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("outcome_stream.file: cannot open " + path);
    std::vector<double> values;
    double x = 0.0;
    while (in >> x) values.push_back(x);
    if (values.empty()) throw ConfigError("outcome_stream.file: no values in " + path);
    return values;
}

/// Per-expert location bias; expert 1 stays unbiased so the regret bound
/// is informative.
std::vector<double> expert_biases(int n, double scale) {
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        b[static_cast<std::size_t>(i)] =
            scale * static_cast<double>(i) / std::max(1, n - 1);
    return b;
}

struct ScalarRounds {
    std::vector<std::vector<GridDistribution1D>> forecasts;  // T x N
    std::vector<GridDistribution1D> outcomes;                // T
};

/// Builds forecast/outcome streams for the 1D games (CRPS, OT1D). Each
/// round has a latent truth center observed by every expert.
ScalarRounds build_scalar_rounds(const ExperimentConfig& cfg, const BoundedInterval& iv,
                                 bool empirical_outcomes) {
    const int n = cfg.game.n_experts, horizon = cfg.game.horizon;
    const double width = iv.width();
    const auto& pool = cfg.expert_pool;
    const auto& stream = cfg.outcome_stream;

    const double sigma = param(pool.params, "sigma", 0.1 * width);
    const double bias_scale = param(pool.params, "bias_scale", 0.3 * width);
    const int samples = static_cast<int>(param(pool.params, "samples", 16));
    if (samples < 1) throw ConfigError("expert_pool.samples must be >= 1");
    const double truth_sigma = param(stream.params, "sigma", 0.05 * width);
    const int outcome_samples = static_cast<int>(param(stream.params, "samples", 8));

    std::vector<double> file_values;
    if (stream.name == "file")
        file_values = read_value_file(stream.params.at("path").get<std::string>());

    std::optional<std::vector<double>> biases;
    std::optional<double> shift_scale;
    if (pool.name == "biased-gaussian") {
        biases = expert_biases(n, bias_scale);
    } else if (pool.name == "adversarial-pair") {
        if (n != 2) throw ConfigError("adversarial-pair requires n_experts = 2");
        biases = std::vector<double>{0.0, bias_scale};
    } else if (pool.name == "shifted-empirical") {
        shift_scale = param(pool.params, "shift_scale", 0.2 * width);
    } else {
        throw ConfigError("unknown expert_pool generator: " + pool.name);
    }

    Rng truth_rng = Rng::stream(cfg.game.seed, 1);
    Rng expert_rng = Rng::stream(cfg.game.seed, 2);
    ScalarRounds rounds;
    rounds.forecasts.reserve(static_cast<std::size_t>(horizon));
    rounds.outcomes.reserve(static_cast<std::size_t>(horizon));

    for (int t = 1; t <= horizon; ++t) {
        const double center = truth_rng.uniform(iv.l + 0.25 * width, iv.l + 0.75 * width);

        std::vector<GridDistribution1D> gs;
        gs.reserve(static_cast<std::size_t>(n));
        if (biases) {
            auto b = *biases;
            if (pool.name == "adversarial-pair" && t > horizon / 2) std::swap(b[0], b[1]);
            for (int e = 0; e < n; ++e) {
                std::vector<double> vals(static_cast<std::size_t>(samples));
                for (auto& v : vals)
                    v = clip(center + b[static_cast<std::size_t>(e)] +
                                 sigma * expert_rng.normal(),
                             iv.l, iv.r);
                gs.push_back(GridDistribution1D::empirical(
                    std::move(vals),
                    std::vector<double>(static_cast<std::size_t>(samples),
                                        1.0 / samples),
                    iv.l, iv.r));
            }
        } else {
            std::vector<double> base(static_cast<std::size_t>(samples));
            for (auto& v : base) v = center + sigma * expert_rng.normal();
            for (int e = 0; e < n; ++e) {
                const double shift =
                    *shift_scale * static_cast<double>(e) / std::max(1, n - 1);
                std::vector<double> vals = base;
                for (auto& v : vals) v = clip(v + shift, iv.l, iv.r);
                gs.push_back(GridDistribution1D::empirical(
                    std::move(vals),
                    std::vector<double>(static_cast<std::size_t>(samples),
                                        1.0 / samples),
                    iv.l, iv.r));
            }
        }
        rounds.forecasts.push_back(std::move(gs));

        if (stream.name == "file") {
            const double x = file_values[static_cast<std::size_t>(t - 1) % file_values.size()];
            if (!iv.contains(x))
                throw ConfigError("outcome_stream.file: value outside the loss domain");
            rounds.outcomes.push_back(GridDistribution1D::dirac(x, iv.l, iv.r));
        } else if (stream.name == "gaussian-truth") {
            if (empirical_outcomes) {
                std::vector<double> vals(static_cast<std::size_t>(outcome_samples));
                for (auto& v : vals)
                    v = clip(center + truth_sigma * truth_rng.normal(), iv.l, iv.r);
                rounds.outcomes.push_back(GridDistribution1D::empirical(
                    std::move(vals),
                    std::vector<double>(static_cast<std::size_t>(outcome_samples),
                                        1.0 / outcome_samples),
                    iv.l, iv.r));
            } else {
                const double x = clip(center + truth_sigma * truth_rng.normal(), iv.l, iv.r);
                rounds.outcomes.push_back(GridDistribution1D::dirac(x, iv.l, iv.r));
            }
        } else {
            throw ConfigError("unknown outcome_stream generator: " + stream.name);
        }
    }
    return rounds;
}

struct CategoricalRounds {
    std::vector<std::vector<DensityGrid>> forecasts;
    std::vector<DensityGrid> outcomes;
};

/// Fixed per-expert categorical forecasts; outcomes sampled from a hidden
/// truth vector. Expert 1 is closest to the truth.
CategoricalRounds build_categorical_rounds(const ExperimentConfig& cfg, double bound) {
    const auto& pool = cfg.expert_pool;
    if (pool.name != "categorical")
        throw ConfigError("expert_pool generator '" + pool.name +
                          "' does not produce categorical forecasts");
    const int n = cfg.game.n_experts, horizon = cfg.game.horizon;
    const int classes = static_cast<int>(param(pool.params, "classes", 10));
    if (classes < 2) throw ConfigError("expert_pool.classes must be >= 2");
    if (bound < 1.0)
        throw ConfigError("density_bound must be >= 1 for one-hot outcomes");

    Rng rng = Rng::stream(cfg.game.seed, 3);
    auto positive_simplex = [&] {
        auto p = rng.simplex_point(classes);
        for (auto& x : p) x = 0.9 * x + 0.1 / static_cast<double>(classes);
        return p;
    };
    const auto truth = positive_simplex();

    std::vector<DensityGrid> experts;
    for (int e = 0; e < n; ++e) {
        const double drift =
            0.8 * static_cast<double>(e) / std::max(1, n - 1);
        auto noise = positive_simplex();
        std::vector<double> q(truth.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            q[i] = (1.0 - drift) * truth[i] + drift * noise[i];
        experts.push_back(DensityGrid::finite(std::move(q), bound));
    }

    std::vector<double> file_values;
    if (cfg.outcome_stream.name == "file")
        file_values = read_value_file(cfg.outcome_stream.params.at("path").get<std::string>());
    else if (cfg.outcome_stream.name != "sampled-class")
        throw ConfigError("unknown outcome_stream generator: " + cfg.outcome_stream.name);

    CategoricalRounds rounds;
    for (int t = 1; t <= horizon; ++t) {
        rounds.forecasts.emplace_back(experts);
        std::size_t k = 0;
        if (!file_values.empty()) {
            const double raw = file_values[static_cast<std::size_t>(t - 1) % file_values.size()];
            if (raw < 0 || raw >= classes || raw != std::floor(raw))
                throw ConfigError("outcome_stream.file: value is not a class index");
            k = static_cast<std::size_t>(raw);
        } else {
            const double u = rng.uniform();
            double acc = 0.0;
            for (; k + 1 < truth.size(); ++k) {
                acc += truth[k];
                if (u < acc) break;
            }
        }
        std::vector<double> onehot(truth.size(), 0.0);
        onehot[k] = 1.0;
        rounds.outcomes.push_back(DensityGrid::finite(std::move(onehot), bound));
    }
    return rounds;
}

template <typename F>
ExperimentResult run_game(
    int n, int horizon, double eta, std::vector<std::vector<F>> forecasts,
    std::vector<F> outcomes,
    const std::function<F(std::span<const F>, const WeightVector&)>& aggregate,
    const std::function<double(const F&, const F&)>& loss) {
    int current_round = 0;
    std::size_t call_index = 0;
    const std::function<std::vector<F>(int)> fstream = [&](int t) {
        current_round = t;
        call_index = 0;
        return forecasts[static_cast<std::size_t>(t - 1)];
    };
    const std::function<F(int)> ostream = [&](int t) {
        return outcomes[static_cast<std::size_t>(t - 1)];
    };
    const std::function<double(const F&, const F&)> wrapped =
        [&](const F& g, const F& o) {
            const std::size_t idx = call_index++;
            try {
                return loss(g, o);
            } catch (const InfiniteLossError& e) {
                const std::string who =
                    idx < static_cast<std::size_t>(n)
                        ? "expert " + std::to_string(idx + 1)
                        : std::string("aggregated forecast");
                throw std::runtime_error("round " + std::to_string(current_round) +
                                         ", " + who + ": " + e.what());
            }
        };
    ExperimentResult result;
    result.eta = eta;
    result.trace = aa_run<F, F>(n, horizon, eta, fstream, ostream, aggregate, wrapped);
    result.report = verify_regret_chain(result.trace, eta);
    return result;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const nlohmann::json& j) {
    try {
        ExperimentConfig cfg;
        const auto& game = j.at("game");
        cfg.game.loss = LossSpec::from_json(game.at("loss").dump());
        const std::string mode = game.value("mode", "expconcave");
        if (mode == "mixable")
            cfg.game.mode = AggregationMode::mixable;
        else if (mode == "expconcave")
            cfg.game.mode = AggregationMode::expconcave;
        else
            throw ConfigError("game.mode must be 'mixable' or 'expconcave'");
        cfg.game.n_experts = game.at("n_experts").get<int>();
        cfg.game.horizon = game.at("horizon").get<int>();
        cfg.game.seed = game.at("seed").get<std::uint64_t>();
        cfg.game.validate();

        const auto& pool = j.at("expert_pool");
        cfg.expert_pool.name = pool.at("generator").get<std::string>();
        cfg.expert_pool.params = pool.value("params", nlohmann::json::object());

        const auto& stream = j.at("outcome_stream");
        if (stream.contains("file")) {
            cfg.outcome_stream.name = "file";
            cfg.outcome_stream.params = {{"path", stream.at("file").get<std::string>()}};
            if (!std::filesystem::exists(stream.at("file").get<std::string>()))
                throw ConfigError("outcome_stream.file does not exist: " +
                                  stream.at("file").get<std::string>());
        } else {
            cfg.outcome_stream.name = stream.at("generator").get<std::string>();
            cfg.outcome_stream.params = stream.value("params", nlohmann::json::object());
        }

        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
        if (j.contains("formats")) {
            cfg.formats = j.at("formats").get<std::vector<std::string>>();
            for (const auto& f : cfg.formats)
                if (f != "csv" && f != "json")
                    throw ConfigError("formats entries must be 'csv' or 'json'");
        }
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse(j);
}

ExperimentResult run_experiment_in_memory(const ExperimentConfig& cfg) {
    const LossSpec& spec = cfg.game.loss;
    const double eta = cfg.game.mode == AggregationMode::mixable
                           ? spec.eta().eta_mixable
                           : spec.eta().eta_expconcave;
    const bool mixable = cfg.game.mode == AggregationMode::mixable;

    switch (spec.kind) {
        case LossKind::CRPS: {
            const BoundedInterval iv = *spec.domain;
            auto rounds = build_scalar_rounds(cfg, iv, false);
            return run_game<GridDistribution1D>(
                cfg.game.n_experts, cfg.game.horizon, eta,
                std::move(rounds.forecasts), std::move(rounds.outcomes),
                [mixable](std::span<const GridDistribution1D> gs, const WeightVector& w) {
                    return mixable ? aggregate_crps_mixable(gs, w)
                                   : aggregate_mixture(gs, w);
                },
                [iv](const GridDistribution1D& g, const GridDistribution1D& o) {
                    return crps(g, o, iv);
                });
        }
        case LossKind::OT1D: {
            const TransportCost cost = *spec.transport_cost;
            auto rounds = build_scalar_rounds(cfg, cost.domain, true);
            return run_game<GridDistribution1D>(
                cfg.game.n_experts, cfg.game.horizon, eta,
                std::move(rounds.forecasts), std::move(rounds.outcomes),
                [mixable, cost](std::span<const GridDistribution1D> gs,
                                const WeightVector& w) {
                    return mixable
                               ? ImplicitQuantileAggregate(
                                     std::vector<GridDistribution1D>(gs.begin(), gs.end()),
                                     w, cost)
                                     .pushforward_exact()
                               : aggregate_w2_barycenter(gs, w);
                },
                [cost](const GridDistribution1D& g, const GridDistribution1D& o) {
                    return ot1d_cost(g, o, cost);
                });
        }
        case LossKind::KL: {
            auto rounds = build_categorical_rounds(cfg, 1.0);
            return run_game<DensityGrid>(
                cfg.game.n_experts, cfg.game.horizon, eta,
                std::move(rounds.forecasts), std::move(rounds.outcomes),
                [](std::span<const DensityGrid> gs, const WeightVector& w) {
                    return aggregate_mixture(gs, w);
                },
                [](const DensityGrid& g, const DensityGrid& o) {
                    return kl_divergence(o, g);
                });
        }
        case LossKind::BETA2: {
            const double bound = *spec.density_bound;
            auto rounds = build_categorical_rounds(cfg, bound);
            return run_game<DensityGrid>(
                cfg.game.n_experts, cfg.game.horizon, eta,
                std::move(rounds.forecasts), std::move(rounds.outcomes),
                [mixable, bound](std::span<const DensityGrid> gs, const WeightVector& w) {
                    return mixable ? aggregate_beta2_mixable(gs, w, bound)
                                   : aggregate_mixture(gs, w);
                },
                [bound](const DensityGrid& g, const DensityGrid& o) {
                    return beta2_divergence(g, o, bound);
                });
        }
        default:
            throw ConfigError("experiment runner supports CRPS, KL, BETA2 and OT1D games; "
                              "got " + loss_kind_name(spec.kind));
    }
}

std::string summary_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    const auto& trace = result.trace;
    nlohmann::json j;
    j["schema"] = "mixagg-summary-v1";
    j["loss"] = loss_kind_name(cfg.game.loss.kind);
    j["mode"] = cfg.game.mode == AggregationMode::mixable ? "mixable" : "expconcave";
    j["n_experts"] = cfg.game.n_experts;
    j["horizon"] = cfg.game.horizon;
    j["seed"] = cfg.game.seed;
    j["eta"] = result.eta;
    j["R_T"] = trace.regret();
    j["bound"] = std::log(static_cast<double>(cfg.game.n_experts)) / result.eta;
    j["bound_satisfied"] = trace.regret() <= j["bound"].get<double>() + 1e-12;
    j["learner_cumulative_loss"] = trace.cumulative_learner_loss();
    j["expert_cumulative_losses"] = trace.cumulative_expert_losses();
    j["regret_chain"] = {{"substitution_ok", result.report.substitution_ok},
                         {"telescoping_ok", result.report.telescoping_ok},
                         {"bound_ok", result.report.bound_ok},
                         {"regret", result.report.regret},
                         {"bound", result.report.bound},
                         {"first_bad_round", result.report.first_bad_round},
                         {"message", result.report.message}};
    return j.dump(2);
}

int run_experiment(const ExperimentConfig& cfg) {
    const ExperimentResult result = run_experiment_in_memory(cfg);

    std::filesystem::create_directories(cfg.output);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(cfg.output) / name).string();
    };
    const auto has_format = [&](const char* f) {
        return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end();
    };
    if (has_format("csv")) std::ofstream(path("trace.csv")) << result.trace.to_csv();
    if (has_format("json")) std::ofstream(path("trace.json")) << result.trace.to_json();
    std::ofstream(path("summary.json")) << summary_json(cfg, result) << '\n';
    return 0;
}

}  // namespace mixagg::tools
