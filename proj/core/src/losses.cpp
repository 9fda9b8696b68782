#include "mixagg/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "mixagg/numeric.hpp"

namespace mixagg {

std::string loss_kind_name(LossKind kind) {
    switch (kind) {
        case LossKind::CRPS: return "CRPS";
        case LossKind::MULTIDIM_CRPS: return "MULTIDIM_CRPS";
        case LossKind::SCRPS: return "SCRPS";
        case LossKind::ENERGY: return "ENERGY";
        case LossKind::KL: return "KL";
        case LossKind::BETA2: return "BETA2";
        case LossKind::CFD: return "CFD";
        case LossKind::MMD: return "MMD";
        case LossKind::OT1D: return "OT1D";
        case LossKind::SW2: return "SW2";
    }
    throw std::logic_error("loss_kind_name: bad kind");
}

LossKind loss_kind_from_name(const std::string& name) {
    static const std::pair<const char*, LossKind> table[] = {
        {"CRPS", LossKind::CRPS},   {"MULTIDIM_CRPS", LossKind::MULTIDIM_CRPS},
        {"SCRPS", LossKind::SCRPS}, {"ENERGY", LossKind::ENERGY},
        {"KL", LossKind::KL},       {"BETA2", LossKind::BETA2},
        {"CFD", LossKind::CFD},     {"MMD", LossKind::MMD},
        {"OT1D", LossKind::OT1D},   {"SW2", LossKind::SW2},
    };
    for (const auto& [n, k] : table)
        if (name == n) return k;
    throw std::invalid_argument("unknown loss kind: " + name);
}

double sphere_surface_area(int dim) {
    if (dim < 1) throw std::invalid_argument("sphere_surface_area: dim < 1");
    const double d = static_cast<double>(dim);
    return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

IntegralWeighting::IntegralWeighting(std::vector<double> nodes_,
                                     std::vector<double> weights_, int dim_)
    : nodes(std::move(nodes_)), weights(std::move(weights_)), dim(dim_) {
    if (dim < 1 || weights.empty() ||
        nodes.size() != weights.size() * static_cast<std::size_t>(dim))
        throw std::invalid_argument("IntegralWeighting: size mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("IntegralWeighting: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("IntegralWeighting: weights must sum to 1");
}

IntegralWeighting gaussian_frequency_weighting(int dim, std::size_t count,
                                               std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> nodes(count * static_cast<std::size_t>(dim));
    for (auto& x : nodes) x = rng.normal();
    std::vector<double> w(count, 1.0 / static_cast<double>(count));
    return IntegralWeighting(std::move(nodes), std::move(w), dim);
}

Kernel Kernel::gaussian(int dim) {
    Kernel k;
    k.psi = [](std::span<const double> d) {
        double n2 = 0.0;
        for (double x : d) n2 += x * x;
        return std::exp(-0.5 * n2);
    };
    k.spectral_mass = 1.0;
    k.sample_spectral = [dim](Rng& rng) {
        std::vector<double> t(static_cast<std::size_t>(dim));
        for (auto& x : t) x = rng.normal();
        return t;
    };
    return k;
}

Kernel Kernel::laplacian(int dim) {
    Kernel k;
    k.psi = [](std::span<const double> d) {
        double n1 = 0.0;
        for (double x : d) n1 += std::abs(x);
        return std::exp(-n1);
    };
    k.spectral_mass = 1.0;
    // product of 1D Cauchy spectral densities
    k.sample_spectral = [dim](Rng& rng) {
        std::vector<double> t(static_cast<std::size_t>(dim));
        for (auto& x : t)
            x = std::tan(std::numbers::pi * (rng.uniform() - 0.5));
        return t;
    };
    return k;
}

TransportCost TransportCost::square(const BoundedInterval& iv) {
    TransportCost c{
        .cost = [](double x, double y) { return sqr(x - y); },
        .domain = iv,
        .eta = EtaRate(2.0 / sqr(iv.width()), 0.5 / sqr(iv.width())),
        .substitution =
            [iv](std::span<const double> q, const WeightVector& w) {
                return square_substitution(q, w, iv);
            },
        .verified = true,
    };
    return c;
}

bool TransportCost::cross_derivative_negative(int probe) const {
    const double h = domain.width() * 1e-5;
    for (int i = 0; i < probe; ++i)
        for (int j = 0; j < probe; ++j) {
            const double x = domain.l + domain.width() * (i + 0.5) / probe;
            const double y = domain.l + domain.width() * (j + 0.5) / probe;
            const double d = (cost(x + h, y + h) - cost(x + h, y - h) -
                              cost(x - h, y + h) + cost(x - h, y - h)) /
                             (4.0 * h * h);
            if (!(d < 0.0)) return false;
        }
    return true;
}

EtaRate LossSpec::eta() const {
    switch (kind) {
        case LossKind::CRPS: {
            if (!domain) throw std::invalid_argument("LossSpec: CRPS needs a domain");
            const double w = domain->width();
            return EtaRate(2.0 / w, 0.5 / w);
        }
        case LossKind::MULTIDIM_CRPS: {
            if (box.empty()) throw std::invalid_argument("LossSpec: needs a box");
            double vol = 1.0;
            for (const auto& iv : box) vol *= iv.width();
            return EtaRate(2.0 / vol, 0.5 / vol);
        }
        case LossKind::SCRPS: {
            if (!radius) throw std::invalid_argument("LossSpec: SCRPS needs a radius");
            return EtaRate(0.5 / *radius, 0.125 / *radius);
        }
        case LossKind::ENERGY: {
            if (!radius || dim < 2)
                throw std::invalid_argument("LossSpec: ENERGY needs radius and dim >= 2");
            const double c =
                sphere_surface_area(dim - 1) /
                (*radius * (dim - 1) * sphere_surface_area(dim));
            return EtaRate(c / 2.0, c / 8.0);
        }
        case LossKind::KL:
            return EtaRate(1.0, 1.0);
        case LossKind::BETA2: {
            if (!density_bound) throw std::invalid_argument("LossSpec: BETA2 needs a bound");
            const double d = base_mass * sqr(*density_bound);
            return EtaRate(2.0 / d, 0.5 / d);
        }
        case LossKind::CFD:
            return EtaRate(0.25, 0.125);
        case LossKind::MMD:
            return EtaRate(0.25 / spectral_mass, 0.125 / spectral_mass);
        case LossKind::OT1D: {
            if (!transport_cost) throw std::invalid_argument("LossSpec: OT1D needs a cost");
            if (!transport_cost->verified && !transport_cost->cross_derivative_negative())
                throw std::invalid_argument("LossSpec: OT1D cost fails cross-derivative probe");
            return transport_cost->eta;
        }
        case LossKind::SW2: {
            if (!radius) throw std::invalid_argument("LossSpec: SW2 needs a radius");
            return EtaRate(0.5 / sqr(*radius), 0.125 / sqr(*radius));
        }
    }
    throw std::logic_error("LossSpec::eta: bad kind");
}

std::string LossSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = loss_kind_name(kind);
    if (domain) j["domain"] = {domain->l, domain->r};
    if (!box.empty()) {
        j["box"] = nlohmann::json::array();
        for (const auto& iv : box) j["box"].push_back({iv.l, iv.r});
    }
    if (radius) j["radius"] = *radius;
    if (dim != 1) j["dim"] = dim;
    if (density_bound) j["density_bound"] = *density_bound;
    if (base_mass != 1.0) j["base_mass"] = base_mass;
    if (spectral_mass != 1.0) j["spectral_mass"] = spectral_mass;
    if (transport_cost) j["transport_cost"] = {{"cost", "square"},
                                               {"domain", {transport_cost->domain.l,
                                                           transport_cost->domain.r}}};
    return j.dump();
}

LossSpec LossSpec::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    LossSpec spec{.kind = loss_kind_from_name(j.at("kind").get<std::string>())};
    if (j.contains("domain"))
        spec.domain = BoundedInterval(j["domain"][0].get<double>(),
                                      j["domain"][1].get<double>());
    if (j.contains("box"))
        for (const auto& iv : j["box"])
            spec.box.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    if (j.contains("radius")) spec.radius = j["radius"].get<double>();
    if (j.contains("dim")) spec.dim = j["dim"].get<int>();
    if (j.contains("density_bound")) spec.density_bound = j["density_bound"].get<double>();
    if (j.contains("base_mass")) spec.base_mass = j["base_mass"].get<double>();
    if (j.contains("spectral_mass")) spec.spectral_mass = j["spectral_mass"].get<double>();
    if (j.contains("transport_cost")) {
        const auto& tc = j["transport_cost"];
        if (tc.at("cost").get<std::string>() != "square")
            throw std::invalid_argument("LossSpec: only the square cost is serializable");
        spec.transport_cost = TransportCost::square(BoundedInterval(
            tc["domain"][0].get<double>(), tc["domain"][1].get<double>()));
    }
    spec.eta();  // validates parameter completeness
    return spec;
}

// --- CRPS -------------------------------------------------------------

namespace {

std::vector<double> union_breakpoints(const GridDistribution1D& g,
                                      const GridDistribution1D& o,
                                      const BoundedInterval& iv) {
    std::vector<double> pts;
    pts.reserve(g.grid().size() + o.grid().size() + 2);
    pts.push_back(iv.l);
    pts.push_back(iv.r);
    for (double x : g.grid())
        if (x > iv.l && x < iv.r) pts.push_back(x);
    for (double x : o.grid())
        if (x > iv.l && x < iv.r) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// CDF value at x when integrating over [x0, x1): step CDFs are constant
/// on the interval (left value), linear CDFs are evaluated at x.
double value_on_interval(const GridDistribution1D& d, double x, double x0) {
    return d.interp() == Interp::step ? d.cdf_at(x0) : d.cdf_at(x);
}

}  // namespace

double crps(const GridDistribution1D& g, const GridDistribution1D& o,
            const BoundedInterval& iv) {
    constexpr double slack = 1e-9;
    if (g.a() < iv.l - slack || g.b() > iv.r + slack || o.a() < iv.l - slack ||
        o.b() > iv.r + slack)
        throw std::domain_error("crps: distribution support outside the interval");

    const std::vector<double> pts = union_breakpoints(g, o, iv);
    std::vector<double> terms;
    terms.reserve(pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double x0 = pts[i], x1 = pts[i + 1];
        const double h = x1 - x0;
        if (g.interp() == Interp::step && o.interp() == Interp::step) {
            terms.push_back(sqr(g.cdf_at(x0) - o.cdf_at(x0)) * h);
        } else {
            const double m = 0.5 * (x0 + x1);
            const double f0 = sqr(value_on_interval(g, x0, x0) - value_on_interval(o, x0, x0));
            const double fm = sqr(value_on_interval(g, m, x0) - value_on_interval(o, m, x0));
            const double f1 = sqr(value_on_interval(g, x1, x0) - value_on_interval(o, x1, x0));
            terms.push_back(h * (f0 + 4.0 * fm + f1) / 6.0);
        }
    }
    return pairwise_sum(terms);
}

// --- multi-dimensional CRPS --------------------------------------------

TensorCdf::TensorCdf(std::vector<std::vector<double>> grids_, std::vector<double> values_)
    : grids(std::move(grids_)), values(std::move(values_)) {
    if (grids.empty() || grids.size() > 3)
        throw std::invalid_argument("TensorCdf: supported dimensions are 1..3");
    std::size_t total = 1;
    for (const auto& gr : grids) {
        if (gr.size() < 2) throw std::invalid_argument("TensorCdf: grid needs >= 2 points");
        for (std::size_t i = 0; i + 1 < gr.size(); ++i)
            if (!(gr[i] < gr[i + 1]))
                throw std::invalid_argument("TensorCdf: grid not strictly increasing");
        total *= gr.size();
    }
    if (values.size() != total)
        throw std::invalid_argument("TensorCdf: value count mismatch");
}

double TensorCdf::at(std::span<const double> x) const {
    const int d = dim();
    if (x.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("TensorCdf::at: dimension mismatch");
    std::size_t lo[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < d; ++k) {
        const auto& gr = grids[k];
        if (x[k] < gr.front() - 1e-12 || x[k] > gr.back() + 1e-12)
            throw std::domain_error("TensorCdf::at: point outside grid");
        const double xv = std::clamp(x[k], gr.front(), gr.back());
        auto it = std::upper_bound(gr.begin(), gr.end(), xv);
        std::size_t i = std::min(static_cast<std::size_t>(it - gr.begin()),
                                 gr.size() - 1) - 1;
        lo[k] = i;
        frac[k] = (xv - gr[i]) / (gr[i + 1] - gr[i]);
    }
    // strides, row-major
    std::size_t stride[3] = {1, 1, 1};
    for (int k = d - 2; k >= 0; --k) stride[k] = stride[k + 1] * grids[k + 1].size();
    double acc = 0.0;
    for (int corner = 0; corner < (1 << d); ++corner) {
        double wgt = 1.0;
        std::size_t idx = 0;
        for (int k = 0; k < d; ++k) {
            const bool hi = corner & (1 << k);
            wgt *= hi ? frac[k] : 1.0 - frac[k];
            idx += (lo[k] + (hi ? 1 : 0)) * stride[k];
        }
        acc += wgt * values[idx];
    }
    return acc;
}

namespace {

std::vector<double> union_axis(const std::vector<double>& a, const std::vector<double>& b,
                               const BoundedInterval& iv) {
    std::vector<double> pts{iv.l, iv.r};
    for (double x : a)
        if (x > iv.l && x < iv.r) pts.push_back(x);
    for (double x : b)
        if (x > iv.l && x < iv.r) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

double multidim_crps(const TensorCdf& g, const TensorCdf& o,
                     const std::vector<BoundedInterval>& box) {
    const int d = g.dim();
    if (d != o.dim() || box.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("multidim_crps: dimension mismatch");
    if (d > 3) throw std::invalid_argument("multidim_crps: unsupported dimension");

    // per-axis Simpson nodes on the union grid: exact for multilinear CDFs
    std::vector<std::vector<double>> nodes(d), wgts(d);
    for (int k = 0; k < d; ++k) {
        const auto axis = union_axis(g.grids[k], o.grids[k], box[k]);
        for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
            const double h = axis[i + 1] - axis[i];
            nodes[k].insert(nodes[k].end(),
                            {axis[i], 0.5 * (axis[i] + axis[i + 1]), axis[i + 1]});
            wgts[k].insert(wgts[k].end(), {h / 6.0, 4.0 * h / 6.0, h / 6.0});
        }
    }

    double total = 0.0;
    std::size_t counts[3] = {1, 1, 1};
    for (int k = 0; k < d; ++k) counts[k] = nodes[k].size();
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < counts[0]; ++i) {
        x[0] = nodes[0][i];
        for (std::size_t j = 0; j < counts[1]; ++j) {
            if (d > 1) x[1] = nodes[1][j];
            for (std::size_t k = 0; k < counts[2]; ++k) {
                if (d > 2) x[2] = nodes[2][k];
                double w = wgts[0][i];
                if (d > 1) w *= wgts[1][j];
                if (d > 2) w *= wgts[2][k];
                total += w * sqr(g.at(x) - o.at(x));
            }
        }
    }
    return total;
}

// --- sliced scores ------------------------------------------------------

std::vector<std::vector<double>> sphere_directions(int dim, std::size_t count,
                                                   std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> dirs;
    dirs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) dirs.push_back(rng.sphere_direction(dim));
    return dirs;
}

double scrps(const ParticleDistributionND& g, const ParticleDistributionND& o,
             double radius, const std::vector<std::vector<double>>& directions) {
    if (directions.empty()) throw std::invalid_argument("scrps: needs >= 1 direction");
    const BoundedInterval iv(-radius, radius);
    std::vector<double> vals;
    vals.reserve(directions.size());
    for (const auto& theta : directions) {
        const auto gs = GridDistribution1D::empirical(g.project(theta), g.weights(),
                                                      -radius, radius);
        const auto os = GridDistribution1D::empirical(o.project(theta), o.weights(),
                                                      -radius, radius);
        vals.push_back(crps(gs, os, iv));
    }
    return pairwise_sum(vals) / static_cast<double>(vals.size());
}

double scrps(const ParticleDistributionND& g, const ParticleDistributionND& o,
             double radius, std::size_t n_directions, std::uint64_t seed) {
    return scrps(g, o, radius, sphere_directions(g.dim(), n_directions, seed));
}

double energy_distance(const ParticleDistributionND& g, const ParticleDistributionND& o) {
    if (g.dim() != o.dim()) throw std::invalid_argument("energy_distance: dim mismatch");
    const int d = g.dim();
    auto dist = [d](std::span<const double> a, std::span<const double> b) {
        double n2 = 0.0;
        for (int k = 0; k < d; ++k) n2 += sqr(a[k] - b[k]);
        return std::sqrt(n2);
    };
    double cross = 0.0, gg = 0.0, oo = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < o.size(); ++j)
            cross += g.weights()[i] * o.weights()[j] * dist(g.point(i), o.point(j));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            gg += g.weights()[i] * g.weights()[j] * dist(g.point(i), g.point(j));
    for (std::size_t i = 0; i < o.size(); ++i)
        for (std::size_t j = 0; j < o.size(); ++j)
            oo += o.weights()[i] * o.weights()[j] * dist(o.point(i), o.point(j));
    return 2.0 * cross - gg - oo;
}

// --- density losses -------------------------------------------------------

double kl_divergence(const DensityGrid& outcome, const DensityGrid& forecast) {
    if (!outcome.same_base(forecast))
        throw std::invalid_argument("kl_divergence: distributions on different bases");
    double acc = 0.0;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
        const double po = outcome.density()[i];
        if (po * outcome.mass()[i] <= 0.0) continue;
        const double pg = forecast.density()[i];
        if (pg <= 0.0)
            throw InfiniteLossError("kl_divergence: forecast density vanishes on outcome support");
        acc += std::log(po / pg) * po * outcome.mass()[i];
    }
    return acc;
}

double beta2_divergence(const DensityGrid& g, const DensityGrid& o, double bound) {
    if (!g.same_base(o))
        throw std::invalid_argument("beta2_divergence: distributions on different bases");
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.density()[i] > bound * (1.0 + 1e-12) || o.density()[i] > bound * (1.0 + 1e-12))
            throw std::domain_error("beta2_divergence: density exceeds the declared bound");
        acc += sqr(g.density()[i] - o.density()[i]) * g.mass()[i];
    }
    return acc;
}

// --- characteristic-function losses ---------------------------------------

double cfd(const ParticleDistributionND& g, const ParticleDistributionND& o,
           const IntegralWeighting& weighting) {
    if (weighting.dim != g.dim() || g.dim() != o.dim())
        throw std::invalid_argument("cfd: dimension mismatch");
    const std::size_t n = weighting.weights.size();
    std::vector<double> terms(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::span<const double> t{
            weighting.nodes.data() + k * static_cast<std::size_t>(weighting.dim),
            static_cast<std::size_t>(weighting.dim)};
        terms[k] = weighting.weights[k] *
                   std::norm(g.characteristic_function(t) - o.characteristic_function(t));
    }
    return pairwise_sum(terms);
}

double mmd_squared(const ParticleDistributionND& g, const ParticleDistributionND& o,
                   const Kernel& kernel) {
    if (g.dim() != o.dim()) throw std::invalid_argument("mmd_squared: dim mismatch");
    const int d = g.dim();
    std::vector<double> diff(static_cast<std::size_t>(d));
    auto k = [&](std::span<const double> a, std::span<const double> b) {
        for (int i = 0; i < d; ++i) diff[i] = a[i] - b[i];
        return kernel.psi(diff);
    };
    double gg = 0.0, cross = 0.0, oo = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            gg += g.weights()[i] * g.weights()[j] * k(g.point(i), g.point(j));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < o.size(); ++j)
            cross += g.weights()[i] * o.weights()[j] * k(g.point(i), o.point(j));
    for (std::size_t i = 0; i < o.size(); ++i)
        for (std::size_t j = 0; j < o.size(); ++j)
            oo += o.weights()[i] * o.weights()[j] * k(o.point(i), o.point(j));
    return gg - 2.0 * cross + oo;
}

// --- optimal transport ------------------------------------------------------

namespace {

/// Quantile jump levels of a step CDF: the distinct CDF values in (0,1).
void collect_levels(const GridDistribution1D& d, std::vector<double>& out) {
    for (double f : d.cdf())
        if (f > 0.0 && f < 1.0) out.push_back(f);
}

}  // namespace

double ot1d_cost(const GridDistribution1D& g, const GridDistribution1D& o,
                 const TransportCost& cost, std::size_t quantile_nodes) {
    if (!cost.verified && !cost.cross_derivative_negative())
        throw std::invalid_argument("ot1d_cost: cost fails the cross-derivative probe");

    if (g.interp() == Interp::step && o.interp() == Interp::step) {
        // quantiles are piecewise constant: integrate exactly between the
        // merged jump levels
        std::vector<double> levels{0.0, 1.0};
        collect_levels(g, levels);
        collect_levels(o, levels);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
            const double t = 0.5 * (levels[i] + levels[i + 1]);
            acc += cost.cost(g.quantile_at(t), o.quantile_at(t)) *
                   (levels[i + 1] - levels[i]);
        }
        return acc;
    }

    const auto ts = midpoint_levels(quantile_nodes);
    std::vector<double> terms(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        terms[i] = cost.cost(g.quantile_at(ts[i]), o.quantile_at(ts[i]));
    return pairwise_sum(terms) / static_cast<double>(ts.size());
}

double sw2_squared(const ParticleDistributionND& g, const ParticleDistributionND& o,
                   double radius, const std::vector<std::vector<double>>& directions) {
    if (directions.empty()) throw std::invalid_argument("sw2_squared: needs >= 1 direction");
    const auto cost = TransportCost::square(BoundedInterval(-radius, radius));
    std::vector<double> vals;
    vals.reserve(directions.size());
    for (const auto& theta : directions) {
        const auto gs = GridDistribution1D::empirical(g.project(theta), g.weights(),
                                                      -radius, radius);
        const auto os = GridDistribution1D::empirical(o.project(theta), o.weights(),
                                                      -radius, radius);
        vals.push_back(ot1d_cost(gs, os, cost));
    }
    return pairwise_sum(vals) / static_cast<double>(vals.size());
}

double sw2_squared(const ParticleDistributionND& g, const ParticleDistributionND& o,
                   double radius, std::size_t n_directions, std::uint64_t seed) {
    return sw2_squared(g, o, radius, sphere_directions(g.dim(), n_directions, seed));
}

}  // namespace mixagg
