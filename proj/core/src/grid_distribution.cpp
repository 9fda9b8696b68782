#include "mixagg/grid_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mixagg {

namespace {
constexpr double kCdfTol = 1e-12;
}

GridDistribution1D::GridDistribution1D(std::vector<double> grid,
                                       std::vector<double> cdf, Interp interp)
    : grid_(std::move(grid)), cdf_(std::move(cdf)), interp_(interp) {
    if (grid_.size() < 2)
        throw std::invalid_argument("GridDistribution1D: grid needs >= 2 points");
    if (grid_.size() != cdf_.size())
        throw std::invalid_argument("GridDistribution1D: grid/cdf length mismatch");
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
        if (!(grid_[i] < grid_[i + 1]))
            throw std::invalid_argument("GridDistribution1D: grid not strictly increasing");
    if (cdf_.front() < -kCdfTol)
        throw std::invalid_argument("GridDistribution1D: cdf starts below 0");
    if (std::abs(cdf_.back() - 1.0) > kCdfTol)
        throw std::invalid_argument("GridDistribution1D: cdf does not end at 1");
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
        if (cdf_[i] < -kCdfTol || cdf_[i] > 1.0 + kCdfTol)
            throw std::invalid_argument("GridDistribution1D: cdf value outside [0,1]");
        if (i > 0 && cdf_[i] < cdf_[i - 1] - kCdfTol)
            throw std::invalid_argument("GridDistribution1D: cdf not nondecreasing");
        cdf_[i] = std::clamp(cdf_[i], 0.0, 1.0);
        if (i > 0 && cdf_[i] < cdf_[i - 1]) cdf_[i] = cdf_[i - 1];
    }
    cdf_.back() = 1.0;
}

GridDistribution1D GridDistribution1D::dirac(double x, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("dirac: empty domain");
    if (x < a || x > b) throw std::domain_error("dirac: point outside domain");
    if (x <= a) return GridDistribution1D({a, b}, {1.0, 1.0});
    if (x >= b) return GridDistribution1D({a, b}, {0.0, 1.0});
    return GridDistribution1D({a, x, b}, {0.0, 1.0, 1.0});
}

GridDistribution1D GridDistribution1D::dirac_on_grid(double x, std::vector<double> grid) {
    if (grid.empty() || x > grid.back() || x < grid.front())
        throw std::domain_error("dirac_on_grid: point outside grid span");
    std::vector<double> cdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) cdf[i] = grid[i] >= x ? 1.0 : 0.0;
    return GridDistribution1D(std::move(grid), std::move(cdf));
}

GridDistribution1D GridDistribution1D::uniform(double a, double b, std::size_t n_points) {
    std::vector<double> grid = canonical_grid(a, b, n_points);
    std::vector<double> cdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        cdf[i] = static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    return GridDistribution1D(std::move(grid), std::move(cdf), Interp::linear);
}

GridDistribution1D GridDistribution1D::empirical(std::vector<double> values,
                                                 std::vector<double> weights) {
    if (values.empty()) throw std::invalid_argument("empirical: no values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double a = *lo, b = *hi;
    if (a == b) {
        a -= 0.5;
        b += 0.5;
    }
    return empirical(std::move(values), std::move(weights), a, b);
}

GridDistribution1D GridDistribution1D::empirical(std::vector<double> values,
                                                 std::vector<double> weights,
                                                 double a, double b) {
    if (values.empty() || values.size() != weights.size())
        throw std::invalid_argument("empirical: bad values/weights");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    if (values[order.front()] < a || values[order.back()] > b)
        throw std::domain_error("empirical: value outside domain");

    double total = 0.0;
    for (double w : weights) total += w;

    std::vector<double> grid, cdf;
    if (a < values[order.front()]) {
        grid.push_back(a);
        cdf.push_back(0.0);
    }
    double cum = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        cum += weights[order[k]] / total;
        const double v = values[order[k]];
        if (!grid.empty() && grid.back() == v)
            cdf.back() = cum;  // merge duplicate support points
        else {
            grid.push_back(v);
            cdf.push_back(cum);
        }
    }
    cdf.back() = 1.0;
    if (b > grid.back()) {
        grid.push_back(b);
        cdf.push_back(1.0);
    }
    if (grid.size() < 2) {  // single atom spanning the whole domain
        grid = {a, b};
        cdf = {1.0, 1.0};
    }
    return GridDistribution1D(std::move(grid), std::move(cdf));
}

double GridDistribution1D::cdf_at(double x) const {
    if (x < grid_.front()) return 0.0;
    if (x >= grid_.back()) return 1.0;
    // largest i with grid[i] <= x
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    if (interp_ == Interp::step) return cdf_[i];
    const double x0 = grid_[i], x1 = grid_[i + 1];
    const double f0 = cdf_[i], f1 = cdf_[i + 1];
    return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
}

double GridDistribution1D::quantile_at(double t) const {
    if (t < 0.0 || t > 1.0) throw std::domain_error("quantile_at: t outside [0,1]");
    if (t <= cdf_.front()) return grid_.front();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    if (interp_ == Interp::step) return grid_[i];
    const double f0 = cdf_[i - 1], f1 = cdf_[i];
    if (f1 == f0) return grid_[i];
    return grid_[i - 1] + (grid_[i] - grid_[i - 1]) * (t - f0) / (f1 - f0);
}

std::vector<double> canonical_grid(double a, double b, std::size_t n) {
    if (n < 2 || !(a < b)) throw std::invalid_argument("canonical_grid: bad arguments");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = b;
    return g;
}

QuantileGrid1D::QuantileGrid1D(std::vector<double> levels_, std::vector<double> values_)
    : levels(std::move(levels_)), values(std::move(values_)) {
    if (levels.size() != values.size() || levels.empty())
        throw std::invalid_argument("QuantileGrid1D: bad lengths");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0.0 || levels[i] > 1.0)
            throw std::invalid_argument("QuantileGrid1D: level outside [0,1]");
        if (i > 0 && !(levels[i] > levels[i - 1]))
            throw std::invalid_argument("QuantileGrid1D: levels not strictly increasing");
        if (i > 0 && values[i] < values[i - 1])
            throw std::invalid_argument("QuantileGrid1D: values not nondecreasing");
    }
}

std::vector<double> midpoint_levels(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return t;
}

}  // namespace mixagg
