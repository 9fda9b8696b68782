#pragma once

#include <cstddef>
#include <vector>

namespace mixagg {

/// CDF interpolation between grid points. Step (right-continuous) is the
/// default and makes Dirac/empirical outcomes exact; linear is opt-in for
/// smooth distributions.
enum class Interp { step, linear };

/// A 1D probability distribution represented by a right-continuous CDF on
/// a sorted grid. Immutable after construction.
class GridDistribution1D {
public:
    GridDistribution1D(std::vector<double> grid, std::vector<double> cdf,
                       Interp interp = Interp::step);

    /// Point mass at x with declared domain [a,b]. Throws if x is outside.
    static GridDistribution1D dirac(double x, double a, double b);

    /// Point mass at x evaluated on a caller-provided grid.
    static GridDistribution1D dirac_on_grid(double x, std::vector<double> grid);

    /// Uniform distribution on [a,b] (linear interpolation).
    static GridDistribution1D uniform(double a, double b, std::size_t n_points = 1025);

    /// Weighted empirical distribution; domain defaults to the value range.
    static GridDistribution1D empirical(std::vector<double> values,
                                        std::vector<double> weights);
    static GridDistribution1D empirical(std::vector<double> values,
                                        std::vector<double> weights,
                                        double a, double b);

    double cdf_at(double x) const;

    /// Generalized inverse CDF: inf{x : t <= CDF(x)}.
    double quantile_at(double t) const;

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& cdf() const { return cdf_; }
    Interp interp() const { return interp_; }
    double a() const { return grid_.front(); }
    double b() const { return grid_.back(); }

private:
    std::vector<double> grid_;
    std::vector<double> cdf_;
    Interp interp_;
};

/// n uniformly spaced points over [a,b]. The paper never fixes a
/// discretization; 1024 points is this library's default.
std::vector<double> canonical_grid(double a, double b, std::size_t n = 1024);

/// Quantile table: strictly increasing levels in [0,1], nondecreasing values.
struct QuantileGrid1D {
    std::vector<double> levels;
    std::vector<double> values;

    QuantileGrid1D(std::vector<double> levels_, std::vector<double> values_);
};

/// Midpoints of n equal subintervals of [0,1]; the default level grid for
/// quantile quadrature and quantile-space aggregation.
std::vector<double> midpoint_levels(std::size_t n = 4096);

}  // namespace mixagg
