// Acceptance gate: every release-blocking property checked end to end,
// one pass/fail line per criterion. All tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mixagg/aggregation.hpp"
#include "mixagg/oracle.hpp"
#include "mixagg/pointwise.hpp"
#include "verification/certification.hpp"
#include "verification/experiment.hpp"

using namespace mixagg;
using namespace mixagg::tools;

namespace {

constexpr std::uint64_t kSeed = 20240915;

struct Criterion {
    int id = 0;
    bool pass = false;
    std::string detail;
};

struct Fingerprint {
    std::ostringstream out;
    Fingerprint() { out << std::setprecision(17); }
    void add(double x) { out << x << ';'; }
    void add(std::size_t x) { out << x << ';'; }
};

GridDistribution1D random_step_cdf(Rng& rng, int max_atoms = 6) {
    const int k = 2 + static_cast<int>(rng.uniform_index(
                          static_cast<std::uint64_t>(max_atoms - 1)));
    std::vector<double> vals(static_cast<std::size_t>(k));
    for (auto& v : vals) v = rng.uniform();
    return GridDistribution1D::empirical(std::move(vals), rng.simplex_point(k), 0.0, 1.0);
}

ParticleDistributionND random_particles(Rng& rng, int dim, double radius, int max_points) {
    const int k = 2 + static_cast<int>(rng.uniform_index(
                          static_cast<std::uint64_t>(max_points - 1)));
    std::vector<double> pts;
    for (int i = 0; i < k; ++i) {
        const auto dir = rng.sphere_direction(dim);
        const double r = radius * rng.uniform();
        for (double d : dir) pts.push_back(r * d);
    }
    return ParticleDistributionND(std::move(pts), rng.simplex_point(k), dim, radius);
}

// -- criterion 1: rate certification matrix ---------------------------

Criterion certification_matrix(Fingerprint& fp) {
    const auto start = std::chrono::steady_clock::now();
    const auto rows = run_certification_matrix({}, 10000, kSeed);
    bool pass = rows.size() == 12;
    double worst = 1e300;
    for (const auto& r : rows) {
        pass = pass && r.pass;
        worst = std::min(worst, r.worst_slack);
        fp.add(r.worst_slack);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && secs < 600.0;
    std::ostringstream d;
    d << rows.size() << " rules, worst slack " << std::scientific << std::setprecision(2)
      << worst << " (tol -1e-9), " << std::fixed << std::setprecision(1) << secs << " s";
    return {1, pass, d.str()};
}

// -- criterion 2: regret bounds over repeated games -------------------

Criterion regret_bounds(Fingerprint& fp) {
    bool pass = true;
    double worst_margin = 1e300;

    nlohmann::json crps_cfg = {
        {"game",
         {{"loss", {{"kind", "CRPS"}, {"domain", {0.0, 1.0}}}},
          {"mode", "mixable"},
          {"n_experts", 10},
          {"horizon", 1000},
          {"seed", 0}}},
        {"expert_pool",
         {{"generator", "biased-gaussian"},
          {"params", {{"sigma", 0.08}, {"bias_scale", 0.35}, {"samples", 16}}}}},
        {"outcome_stream", {{"generator", "gaussian-truth"}, {"params", {{"sigma", 0.05}}}}},
    };
    const double crps_bound = std::log(10.0) / 2.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        crps_cfg["game"]["seed"] = seed;
        const auto result = run_experiment_in_memory(ExperimentConfig::parse(crps_cfg));
        const double regret = result.trace.regret();
        fp.add(regret);
        pass = pass && regret <= crps_bound + 1e-12 && result.report.pass();
        worst_margin = std::min(worst_margin, crps_bound - regret);
    }

    // the shipped demo config regenerates the documented bound value
    const auto demo = ExperimentConfig::from_file(std::string(MIXAGG_CONFIG_DIR) +
                                                  "/crps_demo.json");
    const auto demo_result = run_experiment_in_memory(demo);
    pass = pass && std::abs(std::log(10.0) / demo_result.eta - 1.1513) < 1e-3 &&
           demo_result.trace.regret() <= std::log(10.0) / demo_result.eta + 1e-12;
    fp.add(demo_result.trace.regret());

    nlohmann::json log_cfg = {
        {"game",
         {{"loss", {{"kind", "KL"}}},
          {"mode", "mixable"},
          {"n_experts", 10},
          {"horizon", 1000},
          {"seed", 0}}},
        {"expert_pool", {{"generator", "categorical"}, {"params", {{"classes", 10}}}}},
        {"outcome_stream", {{"generator", "sampled-class"}}},
    };
    const double log_bound = std::log(10.0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        log_cfg["game"]["seed"] = seed;
        const auto result = run_experiment_in_memory(ExperimentConfig::parse(log_cfg));
        const double regret = result.trace.regret();
        fp.add(regret);
        pass = pass && regret <= log_bound + 1e-12 && result.report.pass();
        worst_margin = std::min(worst_margin, log_bound - regret);
    }

    std::ostringstream d;
    d << "40 games (bounds ln(10)/2 and ln(10)), smallest margin " << std::setprecision(4)
      << worst_margin;
    return {2, pass, d.str()};
}

// -- criterion 3: energy distance vs sliced score identity ------------

Criterion energy_scrps_identity(Fingerprint& fp) {
    bool pass = true;
    double worst_rel = 0.0;
    for (int dim : {2, 3}) {
        const double constant = static_cast<double>(dim - 1) *
                                sphere_surface_area(dim) / sphere_surface_area(dim - 1);
        const auto dirs = sphere_directions(dim, 100000, kSeed + dim);
        Rng rng = Rng::stream(kSeed, 0x300 + static_cast<std::uint64_t>(dim));
        for (int pair = 0; pair < 50; ++pair) {
            const auto g = random_particles(rng, dim, 1.0, 6);
            const auto o = random_particles(rng, dim, 1.0, 6);
            const double energy = energy_distance(g, o);
            const double sliced = constant * scrps(g, o, 1.0, dirs);
            const double rel = std::abs(energy - sliced) / std::max(energy, 1e-12);
            worst_rel = std::max(worst_rel, rel);
            fp.add(sliced);
            pass = pass && rel <= 0.01;
        }
    }
    std::ostringstream d;
    d << "100 pairs (dims 2,3), worst relative error " << std::setprecision(3)
      << worst_rel * 100.0 << "% (tol 1%)";
    return {3, pass, d.str()};
}

// -- criterion 4: kernel discrepancy vs spectral form -----------------

Criterion mmd_cfd_identity(Fingerprint& fp) {
    const Kernel kernel = Kernel::gaussian(2);
    const std::size_t n_freq = 100000;
    // spectral nodes with the radius stratified over its quantiles and a
    // random angle per node; same law as plain sampling, far less variance
    Rng freq_rng = Rng::stream(kSeed, 0x400);
    std::vector<double> nodes;
    nodes.reserve(n_freq * 2);
    for (std::size_t i = 0; i < n_freq; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n_freq);
        const double r = std::sqrt(-2.0 * std::log1p(-u));
        const double phi = freq_rng.uniform(0.0, 2.0 * std::numbers::pi);
        nodes.push_back(r * std::cos(phi));
        nodes.push_back(r * std::sin(phi));
    }
    const IntegralWeighting weighting(std::move(nodes),
                                      std::vector<double>(n_freq, 1.0 / n_freq), 2);

    bool pass = true;
    double worst_rel = 0.0;
    Rng rng = Rng::stream(kSeed, 0x401);
    for (int pair = 0; pair < 50; ++pair) {
        const auto g = random_particles(rng, 2, 1.0, 8);
        const auto o = random_particles(rng, 2, 1.0, 8);
        const double mmd = mmd_squared(g, o, kernel);
        const double spectral = kernel.spectral_mass * cfd(g, o, weighting);
        const double rel = std::abs(mmd - spectral) / std::max(mmd, 1e-12);
        worst_rel = std::max(worst_rel, rel);
        fp.add(spectral);
        pass = pass && rel <= 0.01;
    }
    std::ostringstream d;
    d << "50 pairs, Gaussian kernel, worst relative error " << std::setprecision(3)
      << worst_rel * 100.0 << "% (tol 1%)";
    return {4, pass, d.str()};
}

// -- criterion 5: quantile transport vs assignment/LP oracles ---------

Criterion transport_oracles(Fingerprint& fp) {
    const TransportCost cost = TransportCost::square(BoundedInterval(0.0, 1.0));
    const auto square = [](double a, double b) { return (a - b) * (a - b); };
    bool pass = true;
    double worst = 0.0;

    Rng rng = Rng::stream(kSeed, 0x500);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(7);  // up to 8
        std::vector<double> xs(n), ys(n);
        for (auto& v : xs) v = rng.uniform();
        for (auto& v : ys) v = rng.uniform();
        const std::vector<double> w(n, 1.0 / static_cast<double>(n));
        const double quantile =
            ot1d_cost(GridDistribution1D::empirical(xs, w, 0.0, 1.0),
                      GridDistribution1D::empirical(ys, w, 0.0, 1.0), cost);
        const double brute = discrete_ot_bruteforce(xs, ys, square);
        worst = std::max(worst, std::abs(quantile - brute));
        pass = pass && std::abs(quantile - brute) <= 1e-8;
    }
    fp.add(worst);

    double worst_lp = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(5), m = 2 + rng.uniform_index(5);
        std::vector<double> xs(n), ys(m);
        for (auto& v : xs) v = rng.uniform();
        for (auto& v : ys) v = rng.uniform();
        const auto ws = rng.simplex_point(static_cast<int>(n));
        const auto vs = rng.simplex_point(static_cast<int>(m));
        const double quantile =
            ot1d_cost(GridDistribution1D::empirical(xs, ws, 0.0, 1.0),
                      GridDistribution1D::empirical(ys, vs, 0.0, 1.0), cost);
        const double lp = discrete_ot_lp(xs, ws, ys, vs, square);
        worst_lp = std::max(worst_lp, std::abs(quantile - lp));
        pass = pass && std::abs(quantile - lp) <= 1e-8;
    }
    fp.add(worst_lp);

    std::ostringstream d;
    d << "2000 instances, max |quantile - oracle| " << std::scientific
      << std::setprecision(2) << std::max(worst, worst_lp) << " (tol 1e-8)";
    return {5, pass, d.str()};
}

// -- criterion 6: substitution output is always a valid CDF -----------

Criterion substitution_validity(Fingerprint& fp) {
    Rng rng = Rng::stream(kSeed, 0x600);
    std::size_t failures = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(4));
        std::vector<GridDistribution1D> gs;
        for (int i = 0; i < n; ++i) gs.push_back(random_step_cdf(rng));
        const WeightVector w(rng.simplex_point(n));
        try {
            const auto agg = aggregate_crps_mixable(gs, w);
            const auto& cdf = agg.cdf();
            bool ok = std::abs(cdf.back() - 1.0) <= 1e-10;
            for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
                ok = ok && cdf[i] <= cdf[i + 1] + 1e-12 && cdf[i] >= -1e-12;
            if (!ok) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    fp.add(failures);
    std::ostringstream d;
    d << "10000 instances, " << failures << " invalid outputs (tol 0)";
    return {6, failures == 0, d.str()};
}

// -- criterion 7: generalized Hoelder inequality ----------------------

Criterion holder_inequality(Fingerprint& fp) {
    Rng rng = Rng::stream(kSeed, 0x700);
    bool pass = true;
    double worst = 1e300;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t nx = 2 + rng.uniform_index(15), ny = 2 + rng.uniform_index(15);
        std::vector<double> f(nx * ny), v(ny), nu(ny);
        for (auto& x : f) x = std::exp(rng.uniform(-2.0, 2.0));
        for (auto& x : v) x = std::exp(rng.uniform(-1.0, 1.0));
        for (auto& x : nu) x = rng.uniform(0.01, 1.0);
        const auto u = rng.simplex_point(static_cast<int>(nx));
        const auto report = check_holder(f, nx, ny, u, v, nu);
        worst = std::min(worst, report.gap);
        pass = pass && report.gap >= -1e-9;
    }
    fp.add(worst);
    std::ostringstream d;
    d << "10000 instances, smallest gap " << std::scientific << std::setprecision(2)
      << worst << " (tol -1e-9)";
    return {7, pass, d.str()};
}

// -- criterion 8: complex square loss rates ---------------------------

Criterion complex_loss_rates(Fingerprint& fp) {
    Rng rng = Rng::stream(kSeed, 0x800);
    bool pass = true;

    std::size_t hessian_fails = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double ro = 0.95 * rng.uniform(), po = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double ox = ro * std::cos(po), oy = ro * std::sin(po);
        const auto loss = [ox, oy](std::span<const double> g) {
            return (g[0] - ox) * (g[0] - ox) + (g[1] - oy) * (g[1] - oy);
        };
        const double rg = 0.95 * rng.uniform(), pg = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const std::vector<double> at{rg * std::cos(pg), rg * std::sin(pg)};
        if (!expconcavity_hessian_check(loss, 0.125, at)) ++hessian_fails;
    }
    fp.add(hessian_fails);
    pass = pass && hessian_fails == 0;

    std::size_t mix_fails = 0;
    double worst = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(3));
        std::vector<std::complex<double>> gs;
        for (int i = 0; i < n; ++i) {
            const double r = rng.uniform(), p = rng.uniform(0.0, 2.0 * std::numbers::pi);
            gs.emplace_back(r * std::cos(p), r * std::sin(p));
        }
        const WeightVector w(rng.simplex_point(n));
        const auto agg = complex_square_substitution(gs, w);
        for (int k = 0; k < 50; ++k) {
            const double r = rng.uniform(), p = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const std::complex<double> o(r * std::cos(p), r * std::sin(p));
            const double lhs = std::exp(-0.25 * std::norm(agg - o));
            double rhs = 0.0;
            for (std::size_t i = 0; i < gs.size(); ++i)
                rhs += w[i] * std::exp(-0.25 * std::norm(gs[i] - o));
            worst = std::min(worst, lhs - rhs);
            if (lhs - rhs < -1e-9) ++mix_fails;
        }
    }
    fp.add(worst);
    pass = pass && mix_fails == 0;

    std::ostringstream d;
    d << "1000 Hessian points at eta=1/8 (" << hessian_fails
      << " fails), 1000 substitution instances at eta=1/4, worst slack " << std::scientific
      << std::setprecision(2) << worst;
    return {8, pass, d.str()};
}

// -- criterion 9: rate sharpness probe (soft) -------------------------

Criterion sharpness_probe(Fingerprint& fp) {
    try {
        const auto report = eta_sharpness_probe(100000, kSeed);
        fp.add(report.trials_used);
        fp.add(report.worst_slack);
        std::ostringstream d;
        if (report.violation_found)
            d << "violation found after " << report.trials_used << " trials (slack "
              << std::scientific << std::setprecision(2) << report.worst_slack << ")";
        else
            d << "no violation within " << report.trials_used
              << " trials; documented absence, not a failure";
        return {9, true, d.str()};
    } catch (const std::exception& e) {
        return {9, false, std::string("probe errored: ") + e.what()};
    }
}

std::string run_all(std::vector<Criterion>& criteria) {
    Fingerprint fp;
    criteria.push_back(certification_matrix(fp));
    criteria.push_back(regret_bounds(fp));
    criteria.push_back(energy_scrps_identity(fp));
    criteria.push_back(mmd_cfd_identity(fp));
    criteria.push_back(transport_oracles(fp));
    criteria.push_back(substitution_validity(fp));
    criteria.push_back(holder_inequality(fp));
    criteria.push_back(complex_loss_rates(fp));
    criteria.push_back(sharpness_probe(fp));
    return fp.out.str();
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;
    const std::string first = run_all(criteria);

    std::vector<Criterion> repeat;
    const std::string second = run_all(repeat);
    criteria.push_back({10, first == second,
                        first == second
                            ? "criteria 1-9 re-run bit-identically under the fixed seed"
                            : "re-run diverged: results are not reproducible"});

    bool all_pass = true;
    for (const auto& c : criteria) {
        std::printf("CRITERION %2d: %s - %s\n", c.id, c.pass ? "PASS" : "FAIL",
                    c.detail.c_str());
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}
