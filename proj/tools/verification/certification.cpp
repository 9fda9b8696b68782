#include "certification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>

#include <nlohmann/json.hpp>

#include "mixagg/aggregation.hpp"
#include "mixagg/oracle.hpp"
#include "mixagg/pointwise.hpp"
#include "mixagg/rng.hpp"

namespace mixagg::tools {

namespace {

GridDistribution1D random_step_cdf(Rng& rng, double a, double b) {
    const int k = 2 + static_cast<int>(rng.uniform_index(4));
    std::vector<double> vals(static_cast<std::size_t>(k));
    for (auto& v : vals) v = rng.uniform(a, b);
    auto w = rng.simplex_point(k);
    return GridDistribution1D::empirical(std::move(vals), std::move(w), a, b);
}

ParticleDistributionND random_particles(Rng& rng, int dim, double radius,
                                        int max_points = 4) {
    const int k = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_points)));
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(k * dim));
    for (int i = 0; i < k; ++i) {
        const auto dir = rng.sphere_direction(dim);
        const double r = radius * rng.uniform();
        for (double d : dir) pts.push_back(r * d);
    }
    return ParticleDistributionND(std::move(pts), rng.simplex_point(k), dim, radius);
}

/// Strictly positive probability vector with every entry below `bound`.
DensityGrid random_density(Rng& rng, int k, double bound) {
    auto p = rng.simplex_point(k);
    for (auto& x : p) x = 0.9 * x + 0.1 / static_cast<double>(k);
    return DensityGrid::finite(std::move(p), bound);
}

int random_n_experts(Rng& rng) { return 2 + static_cast<int>(rng.uniform_index(3)); }

/// Worst slack over `trials` randomized instances; `instance` returns the
/// minimum mixability slack of one instance.
MatrixRow run_row(std::string rule, LossKind kind, double eta, std::size_t trials,
                  std::uint64_t seed, std::uint64_t stream_id,
                  const std::function<double(Rng&, double)>& instance) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng = Rng::stream(seed, stream_id);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials; ++i)
        worst = std::min(worst, instance(rng, eta));
    MatrixRow row;
    row.rule = std::move(rule);
    row.kind = kind;
    row.eta = eta;
    row.trials = trials;
    row.worst_slack = trials == 0 ? 0.0 : worst;
    row.pass = row.worst_slack >= -1e-9;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

double slack_crps(Rng& rng, double eta, bool mixable) {
    const BoundedInterval iv(0.0, 1.0);
    const int n = random_n_experts(rng);
    std::vector<GridDistribution1D> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_step_cdf(rng, 0.0, 1.0));
    const WeightVector w(rng.simplex_point(n));
    const GridDistribution1D agg =
        mixable ? aggregate_crps_mixable(gs, w) : aggregate_mixture(gs, w);
    std::vector<GridDistribution1D> outcomes;
    for (int i = 0; i < 3; ++i)
        outcomes.push_back(GridDistribution1D::dirac(rng.uniform(), 0.0, 1.0));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return crps(agg, outcomes[i], iv); },
               [&](std::size_t k, std::size_t i) { return crps(gs[k], outcomes[i], iv); })
        .worst_slack;
}

double slack_scrps(Rng& rng, double eta) {
    constexpr int dim = 2;
    constexpr double radius = 1.0;
    const auto dirs = sphere_directions(dim, 8, rng.next_u64());
    const int n = random_n_experts(rng);
    std::vector<ParticleDistributionND> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_particles(rng, dim, radius));
    const WeightVector w(rng.simplex_point(n));
    const auto agg = aggregate_mixture(gs, w);
    std::vector<ParticleDistributionND> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_particles(rng, dim, radius));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return scrps(agg, outcomes[i], radius, dirs); },
               [&](std::size_t k, std::size_t i) { return scrps(gs[k], outcomes[i], radius, dirs); })
        .worst_slack;
}

double slack_energy(Rng& rng, double eta) {
    constexpr int dim = 3;
    constexpr double radius = 1.0;
    const int n = random_n_experts(rng);
    std::vector<ParticleDistributionND> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_particles(rng, dim, radius));
    const WeightVector w(rng.simplex_point(n));
    const auto agg = aggregate_mixture(gs, w);
    std::vector<ParticleDistributionND> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_particles(rng, dim, radius));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return energy_distance(agg, outcomes[i]); },
               [&](std::size_t k, std::size_t i) { return energy_distance(gs[k], outcomes[i]); })
        .worst_slack;
}

double slack_kl(Rng& rng, double eta) {
    constexpr int k_atoms = 4;
    const int n = random_n_experts(rng);
    std::vector<DensityGrid> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_density(rng, k_atoms, 1.0));
    const WeightVector w(rng.simplex_point(n));
    const auto agg = aggregate_mixture(gs, w);
    std::vector<DensityGrid> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_density(rng, k_atoms, 1.0));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return kl_divergence(outcomes[i], agg); },
               [&](std::size_t k, std::size_t i) { return kl_divergence(outcomes[i], gs[k]); })
        .worst_slack;
}

double slack_beta2(Rng& rng, double eta, bool mixable) {
    constexpr int k_atoms = 4;
    constexpr double bound = 2.0;
    const int n = random_n_experts(rng);
    std::vector<DensityGrid> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_density(rng, k_atoms, bound));
    const WeightVector w(rng.simplex_point(n));
    const DensityGrid agg =
        mixable ? aggregate_beta2_mixable(gs, w, bound) : aggregate_mixture(gs, w);
    std::vector<DensityGrid> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_density(rng, k_atoms, bound));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return beta2_divergence(agg, outcomes[i], bound); },
               [&](std::size_t k, std::size_t i) {
                   return beta2_divergence(gs[k], outcomes[i], bound);
               })
        .worst_slack;
}

double slack_cfd(Rng& rng, double eta) {
    constexpr int dim = 2;
    const auto freqs = gaussian_frequency_weighting(dim, 8, rng.next_u64());
    const int n = random_n_experts(rng);
    std::vector<ParticleDistributionND> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_particles(rng, dim, 1.0));
    const WeightVector w(rng.simplex_point(n));
    const auto agg = aggregate_mixture(gs, w);
    std::vector<ParticleDistributionND> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_particles(rng, dim, 1.0));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return cfd(agg, outcomes[i], freqs); },
               [&](std::size_t k, std::size_t i) { return cfd(gs[k], outcomes[i], freqs); })
        .worst_slack;
}

double slack_mmd(Rng& rng, double eta) {
    constexpr int dim = 2;
    const Kernel kernel = Kernel::gaussian(dim);
    const int n = random_n_experts(rng);
    std::vector<ParticleDistributionND> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_particles(rng, dim, 1.0));
    const WeightVector w(rng.simplex_point(n));
    const auto agg = aggregate_mixture(gs, w);
    std::vector<ParticleDistributionND> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_particles(rng, dim, 1.0));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return mmd_squared(agg, outcomes[i], kernel); },
               [&](std::size_t k, std::size_t i) { return mmd_squared(gs[k], outcomes[i], kernel); })
        .worst_slack;
}

double slack_ot1d(Rng& rng, double eta, bool quantile_substitution) {
    const BoundedInterval iv(0.0, 1.0);
    const TransportCost cost = TransportCost::square(iv);
    const int n = random_n_experts(rng);
    std::vector<GridDistribution1D> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_step_cdf(rng, 0.0, 1.0));
    const WeightVector w(rng.simplex_point(n));
    const GridDistribution1D agg =
        quantile_substitution
            ? ImplicitQuantileAggregate(gs, w, cost).pushforward_exact()
            : aggregate_w2_barycenter(gs, w);
    std::vector<GridDistribution1D> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_step_cdf(rng, 0.0, 1.0));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return ot1d_cost(agg, outcomes[i], cost); },
               [&](std::size_t k, std::size_t i) { return ot1d_cost(gs[k], outcomes[i], cost); })
        .worst_slack;
}

double slack_sw2(Rng& rng, double eta) {
    constexpr int dim = 2;
    constexpr double radius = 1.0;
    const auto dirs = sphere_directions(dim, 8, rng.next_u64());
    const auto reference = random_particles(rng, dim, 0.25, 3);
    const int n = random_n_experts(rng);
    std::vector<ScaleShift> transforms;
    std::vector<ParticleDistributionND> gs;
    for (int i = 0; i < n; ++i) {
        ScaleShift t;
        t.scale = rng.uniform(0.8, 1.25);
        auto dir = rng.sphere_direction(dim);
        const double len = 0.3 * rng.uniform();
        for (auto& d : dir) d *= len;
        t.shift = std::move(dir);
        gs.push_back(reference.scaled_translated(t.scale, t.shift));
        transforms.push_back(std::move(t));
    }
    const WeightVector w(rng.simplex_point(n));
    const ScaleShift bary = aggregate_sw2_barycenter(transforms, w);
    const auto agg = reference.scaled_translated(bary.scale, bary.shift);
    std::vector<ParticleDistributionND> outcomes;
    for (int i = 0; i < 2; ++i) outcomes.push_back(random_particles(rng, dim, 0.8));
    return check_mixability(
               outcomes.size(), w, eta,
               [&](std::size_t i) { return sw2_squared(agg, outcomes[i], radius, dirs); },
               [&](std::size_t k, std::size_t i) {
                   return sw2_squared(gs[k], outcomes[i], radius, dirs);
               })
        .worst_slack;
}

}  // namespace

std::vector<MatrixRow> run_certification_matrix(std::span<const LossKind> scope,
                                                std::size_t trials,
                                                std::uint64_t seed) {
    const auto in_scope = [&](LossKind k) {
        return scope.empty() || std::find(scope.begin(), scope.end(), k) != scope.end();
    };
    const std::size_t mc_trials = std::max<std::size_t>(trials / 10, trials > 0 ? 1 : 0);

    struct RowSpec {
        std::string rule;
        LossKind kind;
        double eta;
        std::size_t trials;
        std::function<double(Rng&, double)> instance;
    };

    const double eta_crps_mix = LossSpec{.kind = LossKind::CRPS,
                                         .domain = BoundedInterval(0.0, 1.0)}
                                    .eta()
                                    .eta_mixable;
    const double eta_crps_exp = LossSpec{.kind = LossKind::CRPS,
                                         .domain = BoundedInterval(0.0, 1.0)}
                                    .eta()
                                    .eta_expconcave;
    const double eta_scrps = LossSpec{.kind = LossKind::SCRPS, .radius = 1.0, .dim = 2}
                                 .eta()
                                 .eta_expconcave;
    const double eta_energy = LossSpec{.kind = LossKind::ENERGY, .radius = 1.0, .dim = 3}
                                  .eta()
                                  .eta_expconcave;
    const double eta_kl =
        LossSpec{.kind = LossKind::KL}.eta().eta_expconcave;
    const LossSpec beta2_spec{.kind = LossKind::BETA2, .density_bound = 2.0, .base_mass = 4.0};
    const TransportCost square_cost = TransportCost::square(BoundedInterval(0.0, 1.0));
    const double eta_mmd =
        LossSpec{.kind = LossKind::MMD, .spectral_mass = 1.0}.eta().eta_expconcave;
    const double eta_cfd = LossSpec{.kind = LossKind::CFD}.eta().eta_expconcave;
    const double eta_sw2 = LossSpec{.kind = LossKind::SW2, .radius = 1.0, .dim = 2}
                               .eta()
                               .eta_expconcave;

    std::vector<RowSpec> specs;
    specs.push_back({"crps/substitution", LossKind::CRPS, eta_crps_mix, trials,
                     [](Rng& r, double e) { return slack_crps(r, e, true); }});
    specs.push_back({"crps/mixture", LossKind::CRPS, eta_crps_exp, trials,
                     [](Rng& r, double e) { return slack_crps(r, e, false); }});
    specs.push_back({"scrps/mixture", LossKind::SCRPS, eta_scrps, mc_trials,
                     [](Rng& r, double e) { return slack_scrps(r, e); }});
    specs.push_back({"energy/mixture", LossKind::ENERGY, eta_energy, trials,
                     [](Rng& r, double e) { return slack_energy(r, e); }});
    specs.push_back({"kl/mixture", LossKind::KL, eta_kl, trials,
                     [](Rng& r, double e) { return slack_kl(r, e); }});
    specs.push_back({"beta2/mixture", LossKind::BETA2, beta2_spec.eta().eta_expconcave, trials,
                     [](Rng& r, double e) { return slack_beta2(r, e, false); }});
    specs.push_back({"beta2/substitution", LossKind::BETA2, beta2_spec.eta().eta_mixable,
                     trials, [](Rng& r, double e) { return slack_beta2(r, e, true); }});
    specs.push_back({"cfd/mixture", LossKind::CFD, eta_cfd, trials,
                     [](Rng& r, double e) { return slack_cfd(r, e); }});
    specs.push_back({"mmd/mixture", LossKind::MMD, eta_mmd, trials,
                     [](Rng& r, double e) { return slack_mmd(r, e); }});
    specs.push_back({"ot1d/quantile-substitution", LossKind::OT1D,
                     square_cost.eta.eta_mixable, trials,
                     [](Rng& r, double e) { return slack_ot1d(r, e, true); }});
    specs.push_back({"ot1d/w2-barycenter", LossKind::OT1D, square_cost.eta.eta_expconcave,
                     trials, [](Rng& r, double e) { return slack_ot1d(r, e, false); }});
    specs.push_back({"sw2/barycenter", LossKind::SW2, eta_sw2, mc_trials,
                     [](Rng& r, double e) { return slack_sw2(r, e); }});

    std::vector<std::future<MatrixRow>> futures;
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (!in_scope(specs[i].kind)) continue;
        picked.push_back(i);
        futures.push_back(std::async(std::launch::async, [&, i] {
            const auto& s = specs[i];
            return run_row(s.rule, s.kind, s.eta, s.trials, seed, i, s.instance);
        }));
    }
    std::vector<MatrixRow> rows;
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

std::string matrix_to_json(const std::vector<MatrixRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
        j.push_back({{"rule", r.rule},
                     {"loss", loss_kind_name(r.kind)},
                     {"eta", r.eta},
                     {"trials", r.trials},
                     {"worst_slack", r.worst_slack},
                     {"pass", r.pass},
                     {"seconds", r.seconds}});
    return j.dump(2);
}

SharpnessReport eta_sharpness_probe(std::size_t max_trials, std::uint64_t seed) {
    const BoundedInterval iv(0.0, 1.0);
    const double eta4 = 4.0 * LossSpec{.kind = LossKind::CRPS, .domain = iv}.eta().eta_mixable;
    Rng rng = Rng::stream(seed, 0xe7a);
    SharpnessReport report;
    report.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t trial = 0; trial < max_trials; ++trial) {
        ++report.trials_used;
        const double slack = slack_crps(rng, eta4, true);
        report.worst_slack = std::min(report.worst_slack, slack);
        if (slack < -1e-9) {
            report.violation_found = true;
            report.detail = "substitution run at 4x the certified rate violates the "
                            "inequality; worst slack " + std::to_string(slack);
            return report;
        }
    }
    report.detail = "no violation found within the trial budget";
    return report;
}

}  // namespace mixagg::tools
