#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mixagg {

/// A distribution given by a density w.r.t. a sigma-finite base measure,
/// both discretized on a shared grid. density[i] is the density value at
/// grid[i]; mass[i] is the mu-mass attached to that node.
class DensityGrid {
public:
    DensityGrid(std::vector<double> grid, std::vector<double> mass,
                std::vector<double> density, double bound)
        : grid_(std::move(grid)), mass_(std::move(mass)),
          density_(std::move(density)), bound_(bound) {
        if (grid_.empty() || grid_.size() != mass_.size() || grid_.size() != density_.size())
            throw std::invalid_argument("DensityGrid: size mismatch");
        double total = 0.0;
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            if (!(mass_[i] >= 0.0)) throw std::invalid_argument("DensityGrid: negative mass");
            if (density_[i] < -1e-12 || density_[i] > bound_ * (1.0 + 1e-12))
                throw std::domain_error("DensityGrid: density outside [0,M]");
            total += density_[i] * mass_[i];
        }
        if (std::abs(total - 1.0) > 1e-10)
            throw std::invalid_argument("DensityGrid: density does not integrate to 1");
    }

    /// Uniform counting measure on a finite set with given probabilities;
    /// density values equal probabilities, bound M.
    static DensityGrid finite(std::vector<double> probs, double bound) {
        const std::size_t k = probs.size();
        std::vector<double> grid(k), mass(k, 1.0);
        for (std::size_t i = 0; i < k; ++i) grid[i] = static_cast<double>(i);
        return DensityGrid(std::move(grid), std::move(mass), std::move(probs), bound);
    }

    std::size_t size() const { return grid_.size(); }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& mass() const { return mass_; }
    const std::vector<double>& density() const { return density_; }
    double bound() const { return bound_; }

    /// ||mu||_1 of the discretized base measure.
    double total_mass() const {
        double s = 0.0;
        for (double m : mass_) s += m;
        return s;
    }

    bool same_base(const DensityGrid& other) const {
        return grid_ == other.grid_ && mass_ == other.mass_;
    }

private:
    std::vector<double> grid_;
    std::vector<double> mass_;
    std::vector<double> density_;
    double bound_;
};

}  // namespace mixagg
