#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mixagg/grid_distribution.hpp"
#include "mixagg/weights.hpp"

namespace mixagg {

/// Weighted point cloud in R^D. Immutable after construction.
class ParticleDistributionND {
public:
    /// points is row-major M x D. If a support radius R is declared, all
    /// points must lie inside Ball(0, R).
    ParticleDistributionND(std::vector<double> points, std::vector<double> weights,
                           int dim, std::optional<double> radius = std::nullopt);

    static ParticleDistributionND dirac(std::vector<double> point,
                                        std::optional<double> radius = std::nullopt);

    int dim() const { return dim_; }
    std::size_t size() const { return weights_.size(); }
    std::optional<double> radius() const { return radius_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& points() const { return points_; }
    std::span<const double> point(std::size_t i) const {
        return {points_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    /// <point_i, theta> for all particles.
    std::vector<double> project(std::span<const double> theta) const;

    /// Empirical CDF of the projection onto theta, on domain [-R, R]
    /// (or the projected value range if no radius is declared).
    GridDistribution1D sliced_cdf(std::span<const double> theta) const;

    /// Characteristic function at frequency t.
    std::complex<double> characteristic_function(std::span<const double> t) const;

    /// Pushforward under x -> scale * x + shift.
    ParticleDistributionND scaled_translated(double scale,
                                             std::span<const double> shift) const;

private:
    std::vector<double> points_;
    std::vector<double> weights_;
    int dim_;
    std::optional<double> radius_;
};

}  // namespace mixagg
