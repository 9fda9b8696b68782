#include "mixagg/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixagg/numeric.hpp"

namespace mixagg {

namespace {

std::vector<double> union_grid(std::span<const GridDistribution1D> forecasts) {
    std::vector<double> pts;
    for (const auto& f : forecasts)
        pts.insert(pts.end(), f.grid().begin(), f.grid().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Interp common_interp(std::span<const GridDistribution1D> forecasts) {
    for (const auto& f : forecasts)
        if (f.interp() == Interp::linear) return Interp::linear;
    return Interp::step;
}

void require_common_domain(std::span<const GridDistribution1D> forecasts) {
    if (forecasts.empty()) throw std::invalid_argument("aggregate: no forecasts");
    for (const auto& f : forecasts)
        if (std::abs(f.a() - forecasts.front().a()) > 1e-9 ||
            std::abs(f.b() - forecasts.front().b()) > 1e-9)
            throw std::invalid_argument("aggregate: forecasts on different domains");
}

/// Merged quantile jump levels (step CDFs), including 0 and 1.
std::vector<double> merged_levels(std::span<const GridDistribution1D> forecasts) {
    std::vector<double> levels{0.0, 1.0};
    for (const auto& f : forecasts)
        for (double v : f.cdf())
            if (v > 0.0 && v < 1.0) levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return levels;
}

bool all_step(std::span<const GridDistribution1D> forecasts) {
    return common_interp(forecasts) == Interp::step;
}

}  // namespace

GridDistribution1D aggregate_crps_mixable(std::span<const GridDistribution1D> forecasts,
                                          const WeightVector& w) {
    require_common_domain(forecasts);
    if (forecasts.size() != w.size())
        throw std::invalid_argument("aggregate_crps_mixable: size mismatch");
    const BoundedInterval unit(0.0, 1.0);
    const auto grid = union_grid(forecasts);
    std::vector<double> cdf(grid.size());
    std::vector<double> vals(forecasts.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t n = 0; n < forecasts.size(); ++n)
            vals[n] = forecasts[n].cdf_at(grid[i]);
        cdf[i] = square_substitution(vals, w, unit);
        if (i > 0 && cdf[i] < cdf[i - 1] - 1e-10)
            throw std::logic_error("aggregate_crps_mixable: monotonicity violated");
        if (i > 0 && cdf[i] < cdf[i - 1]) cdf[i] = cdf[i - 1];
    }
    if (std::abs(cdf.back() - 1.0) > 1e-10)
        throw std::logic_error("aggregate_crps_mixable: CDF does not reach 1");
    cdf.back() = 1.0;
    return GridDistribution1D(grid, std::move(cdf), common_interp(forecasts));
}

GridDistribution1D aggregate_mixture(std::span<const GridDistribution1D> forecasts,
                                     const WeightVector& w) {
    require_common_domain(forecasts);
    if (forecasts.size() != w.size())
        throw std::invalid_argument("aggregate_mixture: size mismatch");
    const auto grid = union_grid(forecasts);
    std::vector<double> cdf(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t n = 0; n < forecasts.size(); ++n)
            cdf[i] += w[n] * forecasts[n].cdf_at(grid[i]);
    return GridDistribution1D(grid, std::move(cdf), common_interp(forecasts));
}

DensityGrid aggregate_mixture(std::span<const DensityGrid> forecasts,
                              const WeightVector& w) {
    if (forecasts.empty() || forecasts.size() != w.size())
        throw std::invalid_argument("aggregate_mixture: size mismatch");
    double bound = forecasts.front().bound();
    for (const auto& f : forecasts) {
        if (!f.same_base(forecasts.front()))
            throw std::invalid_argument("aggregate_mixture: different base measures");
        bound = std::max(bound, f.bound());
    }
    std::vector<double> density(forecasts.front().size(), 0.0);
    for (std::size_t n = 0; n < forecasts.size(); ++n)
        for (std::size_t i = 0; i < density.size(); ++i)
            density[i] += w[n] * forecasts[n].density()[i];
    return DensityGrid(forecasts.front().grid(), forecasts.front().mass(),
                       std::move(density), bound);
}

ParticleDistributionND aggregate_mixture(std::span<const ParticleDistributionND> forecasts,
                                         const WeightVector& w,
                                         std::optional<std::size_t> max_particles,
                                         std::uint64_t resample_seed) {
    if (forecasts.empty() || forecasts.size() != w.size())
        throw std::invalid_argument("aggregate_mixture: size mismatch");
    const int d = forecasts.front().dim();
    std::optional<double> radius = forecasts.front().radius();
    std::vector<double> pts, wts;
    for (std::size_t n = 0; n < forecasts.size(); ++n) {
        const auto& f = forecasts[n];
        if (f.dim() != d)
            throw std::invalid_argument("aggregate_mixture: particle dim mismatch");
        if (radius && f.radius())
            radius = std::max(*radius, *f.radius());
        else
            radius.reset();
        pts.insert(pts.end(), f.points().begin(), f.points().end());
        for (double x : f.weights()) wts.push_back(w[n] * x);
    }
    ParticleDistributionND mix(std::move(pts), std::move(wts), d, radius);
    if (!max_particles || mix.size() <= *max_particles) return mix;

    // stratified resampling to an equal-weight cloud of max_particles points
    Rng rng(resample_seed);
    const std::size_t m = *max_particles;
    std::vector<double> rpts(m * static_cast<std::size_t>(d));
    std::vector<double> cum(mix.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        acc += mix.weights()[i];
        cum[i] = acc;
    }
    std::size_t src = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double u = (static_cast<double>(k) + rng.uniform()) / static_cast<double>(m);
        while (src + 1 < cum.size() && cum[src] < u) ++src;
        const auto p = mix.point(src);
        std::copy(p.begin(), p.end(), rpts.begin() + k * static_cast<std::size_t>(d));
    }
    return ParticleDistributionND(std::move(rpts),
                                  std::vector<double>(m, 1.0 / static_cast<double>(m)), d,
                                  radius);
}

DensityGrid aggregate_beta2_mixable(std::span<const DensityGrid> forecasts,
                                    const WeightVector& w, double bound) {
    if (forecasts.empty() || forecasts.size() != w.size())
        throw std::invalid_argument("aggregate_beta2_mixable: size mismatch");
    const auto& base = forecasts.front();
    for (const auto& f : forecasts)
        if (!f.same_base(base))
            throw std::invalid_argument("aggregate_beta2_mixable: different base measures");
    const std::size_t k = base.size();
    const BoundedInterval iv(0.0, bound);

    // pointwise substitution of densities
    std::vector<double> q(k), vals(forecasts.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t n = 0; n < forecasts.size(); ++n)
            vals[n] = forecasts[n].density()[i];
        q[i] = square_substitution(vals, w, iv);
    }

    // mu-weighted L2 projection onto {p in [0,M]^k, sum p_i m_i = 1}:
    // p_i = clip(q_i + lambda, 0, M), lambda from the mass constraint
    auto mass_at = [&](double lambda) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            s += std::clamp(q[i] + lambda, 0.0, bound) * base.mass()[i];
        return s;
    };
    double total_base_mass = 0.0;
    for (double m : base.mass()) total_base_mass += m;
    if (bound * total_base_mass < 1.0)
        throw std::invalid_argument("aggregate_beta2_mixable: bound too small for any density");
    double lo = -bound, hi = bound;  // mass_at(lo) = 0, mass_at(hi) = M * ||mu||_1 >= 1
    for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (mass_at(mid) < 1.0 ? lo : hi) = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    std::vector<double> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = std::clamp(q[i] + lambda, 0.0, bound);
    // absorb bisection residue so the DensityGrid invariant holds
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) total += p[i] * base.mass()[i];
    if (std::abs(total - 1.0) > 1e-10)
        throw std::logic_error("aggregate_beta2_mixable: projection failed to normalize");
    for (std::size_t i = 0; i < k; ++i) p[i] = std::min(p[i] / total, bound);
    return DensityGrid(base.grid(), base.mass(), std::move(p), bound);
}

ImplicitQuantileAggregate::ImplicitQuantileAggregate(
    std::vector<GridDistribution1D> forecasts, WeightVector w, TransportCost cost)
    : forecasts_(std::move(forecasts)), w_(std::move(w)), cost_(std::move(cost)) {
    if (forecasts_.empty() || forecasts_.size() != w_.size())
        throw std::invalid_argument("ImplicitQuantileAggregate: size mismatch");
}

double ImplicitQuantileAggregate::at(double t) const {
    std::vector<double> q(forecasts_.size());
    for (std::size_t n = 0; n < forecasts_.size(); ++n)
        q[n] = forecasts_[n].quantile_at(t);
    return cost_.substitution(q, w_);
}

QuantileGrid1D ImplicitQuantileAggregate::table(const std::vector<double>& levels) const {
    std::vector<double> values(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) values[i] = at(levels[i]);
    return QuantileGrid1D(levels, std::move(values));
}

bool ImplicitQuantileAggregate::table_is_monotone(const std::vector<double>& levels) const {
    double prev = -std::numeric_limits<double>::infinity();
    for (double t : levels) {
        const double v = at(t);
        if (v < prev - 1e-12) return false;
        prev = v;
    }
    return true;
}

GridDistribution1D ImplicitQuantileAggregate::pushforward_exact() const {
    if (!all_step(forecasts_))
        throw std::invalid_argument(
            "pushforward_exact: requires step CDF experts (use sample() otherwise)");
    const auto levels = merged_levels(forecasts_);
    std::vector<double> atoms, masses;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        atoms.push_back(at(0.5 * (levels[i] + levels[i + 1])));
        masses.push_back(levels[i + 1] - levels[i]);
    }
    return GridDistribution1D::empirical(std::move(atoms), std::move(masses),
                                         cost_.domain.l, cost_.domain.r);
}

GridDistribution1D aggregate_w2_barycenter(std::span<const GridDistribution1D> forecasts,
                                           const WeightVector& w, std::size_t levels) {
    if (forecasts.empty() || forecasts.size() != w.size())
        throw std::invalid_argument("aggregate_w2_barycenter: size mismatch");
    double a = forecasts.front().a(), b = forecasts.front().b();
    for (const auto& f : forecasts) {
        a = std::min(a, f.a());
        b = std::max(b, f.b());
    }
    auto combined = [&](double t) {
        double v = 0.0;
        for (std::size_t n = 0; n < forecasts.size(); ++n)
            v += w[n] * forecasts[n].quantile_at(t);
        return v;
    };
    if (all_step(forecasts)) {
        // exact: the combined quantile is piecewise constant between the
        // merged jump levels
        const auto lv = merged_levels(forecasts);
        std::vector<double> atoms, masses;
        for (std::size_t i = 0; i + 1 < lv.size(); ++i) {
            atoms.push_back(combined(0.5 * (lv[i] + lv[i + 1])));
            masses.push_back(lv[i + 1] - lv[i]);
        }
        return GridDistribution1D::empirical(std::move(atoms), std::move(masses), a, b);
    }
    const auto ts = midpoint_levels(levels);
    std::vector<double> atoms(ts.size()), masses(ts.size(), 1.0 / static_cast<double>(levels));
    for (std::size_t i = 0; i < ts.size(); ++i) atoms[i] = combined(ts[i]);
    return GridDistribution1D::empirical(std::move(atoms), std::move(masses), a, b);
}

ScaleShift aggregate_sw2_barycenter(std::span<const ScaleShift> transforms,
                                    const WeightVector& w) {
    if (transforms.empty() || transforms.size() != w.size())
        throw std::invalid_argument("aggregate_sw2_barycenter: size mismatch");
    // slice quantiles are affine in (scale, shift), so the levelwise
    // quantile mixture is the member with the weighted-mean parameters
    const std::size_t d = transforms.front().shift.size();
    double scale = 0.0;
    std::vector<double> shift(d, 0.0);
    for (std::size_t n = 0; n < transforms.size(); ++n) {
        const auto& tr = transforms[n];
        if (!(tr.scale > 0.0))
            throw std::domain_error("aggregate_sw2_barycenter: nonpositive scale");
        if (tr.shift.size() != d)
            throw std::invalid_argument("aggregate_sw2_barycenter: shift dim mismatch");
        scale += w[n] * tr.scale;
        for (std::size_t i = 0; i < d; ++i) shift[i] += w[n] * tr.shift[i];
    }
    return {scale, std::move(shift)};
}

}  // namespace mixagg
