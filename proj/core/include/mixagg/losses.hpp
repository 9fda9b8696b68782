#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixagg/density_grid.hpp"
#include "mixagg/grid_distribution.hpp"
#include "mixagg/particle_distribution.hpp"
#include "mixagg/pointwise.hpp"
#include "mixagg/rng.hpp"

namespace mixagg {

enum class LossKind {
    CRPS,
    MULTIDIM_CRPS,
    SCRPS,
    ENERGY,
    KL,
    BETA2,
    CFD,
    MMD,
    OT1D,
    SW2,
};

std::string loss_kind_name(LossKind kind);
LossKind loss_kind_from_name(const std::string& name);

/// Surface area of the (D-1)-dimensional unit sphere: 2 pi^{D/2} / Gamma(D/2).
double sphere_surface_area(int dim);

/// Quadrature/Monte-Carlo nodes with the combined u * d(mu) weights of an
/// integral loss; weights sum to 1.
struct IntegralWeighting {
    std::vector<double> nodes;  // row-major n x dim
    std::vector<double> weights;
    int dim = 1;

    IntegralWeighting(std::vector<double> nodes_, std::vector<double> weights_, int dim_);
};

/// Equal-weight frequency nodes drawn from the standard Gaussian in R^dim.
IntegralWeighting gaussian_frequency_weighting(int dim, std::size_t count,
                                               std::uint64_t seed);

/// Translation-invariant PSD kernel k(x,y) = psi(x-y) with an analytically
/// declared spectral measure of total mass psi(0).
struct Kernel {
    std::function<double(std::span<const double>)> psi;  // of the difference x-y
    double spectral_mass;                                // ||mu||_1 = psi(0)
    /// draws one frequency from the (normalized) spectral measure
    std::function<std::vector<double>(Rng&)> sample_spectral;

    static Kernel gaussian(int dim);   // psi(x) = exp(-|x|^2/2), mass 1
    static Kernel laplacian(int dim);  // psi(x) = exp(-|x|_1), mass 1
};

/// Twice-differentiable transport cost for 1D OT. The cross-derivative
/// d^2c/dx dx' must be negative on the domain (probed on a 32x32 grid).
struct TransportCost {
    std::function<double(double, double)> cost;
    BoundedInterval domain;
    EtaRate eta;

    /// Substitution for the pointwise cost (square cost -> square
    /// substitution on the domain).
    std::function<double(std::span<const double>, const WeightVector&)> substitution;

    /// Set by factories whose cross-derivative condition holds analytically;
    /// ot1d_cost probes unverified costs before use.
    bool verified = false;

    static TransportCost square(const BoundedInterval& iv);

    /// Finite-difference probe of the cross-derivative sign condition.
    bool cross_derivative_negative(int probe = 32) const;
};

/// Which loss plus its parameters and its table rates.
struct LossSpec {
    LossKind kind;
    std::optional<BoundedInterval> domain;       // CRPS / OT1D
    std::vector<BoundedInterval> box;            // MULTIDIM_CRPS
    std::optional<double> radius;                // SCRPS / ENERGY / SW2
    int dim = 1;                                 // SCRPS / ENERGY / SW2 / CFD / MMD
    std::optional<double> density_bound;         // BETA2
    double base_mass = 1.0;                      // BETA2 ||mu||_1
    double spectral_mass = 1.0;                  // MMD ||mu||_1
    std::optional<TransportCost> transport_cost; // OT1D

    /// Table rates for the configured parameters.
    EtaRate eta() const;

    std::string to_json() const;
    static LossSpec from_json(const std::string& text);
};

// --- loss evaluations ------------------------------------------------

/// Integral of the squared CDF gap over [a,b]. Exact for step CDFs;
/// per-interval Simpson (exact for linear CDFs) otherwise.
double crps(const GridDistribution1D& g, const GridDistribution1D& o,
            const BoundedInterval& iv);

/// Multivariate CDF on a tensor-product grid, D <= 3, multilinear
/// interpolation between nodes.
struct TensorCdf {
    std::vector<std::vector<double>> grids;  // per-dimension nodes
    std::vector<double> values;              // row-major over the tensor grid

    TensorCdf(std::vector<std::vector<double>> grids_, std::vector<double> values_);
    int dim() const { return static_cast<int>(grids.size()); }
    double at(std::span<const double> x) const;
};

double multidim_crps(const TensorCdf& g, const TensorCdf& o,
                     const std::vector<BoundedInterval>& box);

/// Monte Carlo average over sphere directions of the sliced 1D CRPS on
/// [-R,R]. Directions come from a seeded generator; freeze them with
/// `sphere_directions` when the per-round mixability inequality must hold
/// exactly for the discretized loss.
std::vector<std::vector<double>> sphere_directions(int dim, std::size_t count,
                                                   std::uint64_t seed);

double scrps(const ParticleDistributionND& g, const ParticleDistributionND& o,
             double radius, const std::vector<std::vector<double>>& directions);
double scrps(const ParticleDistributionND& g, const ParticleDistributionND& o,
             double radius, std::size_t n_directions, std::uint64_t seed);

double energy_distance(const ParticleDistributionND& g, const ParticleDistributionND& o);

double kl_divergence(const DensityGrid& outcome, const DensityGrid& forecast);

double beta2_divergence(const DensityGrid& g, const DensityGrid& o, double bound);

double cfd(const ParticleDistributionND& g, const ParticleDistributionND& o,
           const IntegralWeighting& weighting);

double mmd_squared(const ParticleDistributionND& g, const ParticleDistributionND& o,
                   const Kernel& kernel);

/// Optimal transport cost via the quantile representation. Exact
/// breakpoint integration for step CDFs; midpoint rule on quantile_nodes
/// levels otherwise.
double ot1d_cost(const GridDistribution1D& g, const GridDistribution1D& o,
                 const TransportCost& cost, std::size_t quantile_nodes = 4096);

double sw2_squared(const ParticleDistributionND& g, const ParticleDistributionND& o,
                   double radius, const std::vector<std::vector<double>>& directions);
double sw2_squared(const ParticleDistributionND& g, const ParticleDistributionND& o,
                   double radius, std::size_t n_directions, std::uint64_t seed);

}  // namespace mixagg
