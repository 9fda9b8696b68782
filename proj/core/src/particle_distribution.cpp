#include "mixagg/particle_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixagg {

ParticleDistributionND::ParticleDistributionND(std::vector<double> points,
                                               std::vector<double> weights, int dim,
                                               std::optional<double> radius)
    : points_(std::move(points)), weights_(std::move(weights)), dim_(dim), radius_(radius) {
    if (dim_ < 1) throw std::invalid_argument("ParticleDistributionND: dim < 1");
    if (weights_.empty() ||
        points_.size() != weights_.size() * static_cast<std::size_t>(dim_))
        throw std::invalid_argument("ParticleDistributionND: size mismatch");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("ParticleDistributionND: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kSimplexRenormTol)
        throw std::invalid_argument("ParticleDistributionND: weights not on simplex");
    if (total != 1.0)
        for (double& w : weights_) w /= total;
    if (radius_) {
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            double n2 = 0.0;
            for (double c : point(i)) n2 += c * c;
            if (n2 > (*radius_) * (*radius_) * (1.0 + 1e-12))
                throw std::domain_error("ParticleDistributionND: point outside support ball");
        }
    }
}

ParticleDistributionND ParticleDistributionND::dirac(std::vector<double> pt,
                                                     std::optional<double> radius) {
    const int d = static_cast<int>(pt.size());
    return ParticleDistributionND(std::move(pt), {1.0}, d, radius);
}

std::vector<double> ParticleDistributionND::project(std::span<const double> theta) const {
    if (theta.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("project: direction dimension mismatch");
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        double s = 0.0;
        const auto p = point(i);
        for (int d = 0; d < dim_; ++d) s += p[d] * theta[d];
        out[i] = s;
    }
    return out;
}

GridDistribution1D ParticleDistributionND::sliced_cdf(std::span<const double> theta) const {
    std::vector<double> vals = project(theta);
    if (radius_)
        return GridDistribution1D::empirical(std::move(vals), weights_, -*radius_, *radius_);
    return GridDistribution1D::empirical(std::move(vals), weights_);
}

std::complex<double> ParticleDistributionND::characteristic_function(
    std::span<const double> t) const {
    if (t.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("characteristic_function: frequency dimension mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < size(); ++i) {
        double phase = 0.0;
        const auto p = point(i);
        for (int d = 0; d < dim_; ++d) phase += p[d] * t[d];
        acc += weights_[i] * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return acc;
}

ParticleDistributionND ParticleDistributionND::scaled_translated(
    double scale, std::span<const double> shift) const {
    if (!(scale > 0.0)) throw std::domain_error("scaled_translated: nonpositive scale");
    if (shift.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("scaled_translated: shift dimension mismatch");
    std::vector<double> pts(points_.size());
    for (std::size_t i = 0; i < size(); ++i)
        for (int d = 0; d < dim_; ++d)
            pts[i * dim_ + d] = scale * points_[i * dim_ + d] + shift[d];
    // the transform may move points outside a declared ball; recompute lazily
    std::optional<double> r;
    if (radius_) {
        double maxn2 = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            double n2 = 0.0;
            for (int d = 0; d < dim_; ++d) n2 += pts[i * dim_ + d] * pts[i * dim_ + d];
            maxn2 = std::max(maxn2, n2);
        }
        r = std::max(*radius_, std::sqrt(maxn2));
    }
    return ParticleDistributionND(std::move(pts), weights_, dim_, r);
}

}  // namespace mixagg
