#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixagg/density_grid.hpp"
#include "mixagg/grid_distribution.hpp"
#include "mixagg/losses.hpp"
#include "mixagg/particle_distribution.hpp"
#include "mixagg/weights.hpp"

namespace mixagg {

/// Mixable CRPS aggregation: the pointwise square substitution on [0,1]
/// applied to expert CDF values. The result is certified to be a valid
/// CDF before returning.
GridDistribution1D aggregate_crps_mixable(std::span<const GridDistribution1D> forecasts,
                                          const WeightVector& w);

/// Convex mixture in the representation's native coordinates.
GridDistribution1D aggregate_mixture(std::span<const GridDistribution1D> forecasts,
                                     const WeightVector& w);
DensityGrid aggregate_mixture(std::span<const DensityGrid> forecasts,
                              const WeightVector& w);
/// Concatenates re-weighted particles; optional seeded stratified
/// resampling caps the particle count.
ParticleDistributionND aggregate_mixture(std::span<const ParticleDistributionND> forecasts,
                                         const WeightVector& w,
                                         std::optional<std::size_t> max_particles = {},
                                         std::uint64_t resample_seed = 0);

/// Mixable Beta-2 aggregation on finite X: pointwise substitution followed
/// by the mu-weighted L2 projection onto {density in [0,M], integral = 1}.
DensityGrid aggregate_beta2_mixable(std::span<const DensityGrid> forecasts,
                                    const WeightVector& w, double bound);

/// Implicit quantile-space aggregation for 1D optimal transport (the
/// levelwise cost substitution). The aggregate is the pushforward of
/// Uniform[0,1] under the aggregated quantile curve.
class ImplicitQuantileAggregate {
public:
    ImplicitQuantileAggregate(std::vector<GridDistribution1D> forecasts, WeightVector w,
                              TransportCost cost);

    /// Aggregated quantile at a single level.
    double at(double t) const;

    /// Level/value table on the given levels (default 4096 midpoints).
    QuantileGrid1D table(const std::vector<double>& levels) const;
    QuantileGrid1D table() const { return table(midpoint_levels()); }

    /// One draw from the pushforward distribution.
    double sample(Rng& rng) const { return at(rng.uniform()); }

    /// The exact pushforward distribution when every expert has a step
    /// CDF (the aggregated quantile is then piecewise constant).
    GridDistribution1D pushforward_exact() const;

    /// Whether the table is nondecreasing on the given levels (then it is
    /// itself a valid quantile function).
    bool table_is_monotone(const std::vector<double>& levels) const;

private:
    std::vector<GridDistribution1D> forecasts_;
    WeightVector w_;
    TransportCost cost_;
};

/// Wasserstein-2 barycenter: levelwise convex combination of quantiles,
/// re-inverted to a CDF on the grid.
GridDistribution1D aggregate_w2_barycenter(std::span<const GridDistribution1D> forecasts,
                                           const WeightVector& w,
                                           std::size_t levels = 4096);

/// Sliced-W2 barycenter of scaled/translated copies of a common reference:
/// returns the transform parameters (scale, shift).
struct ScaleShift {
    double scale;
    std::vector<double> shift;
};
ScaleShift aggregate_sw2_barycenter(std::span<const ScaleShift> transforms,
                                    const WeightVector& w);

}  // namespace mixagg
