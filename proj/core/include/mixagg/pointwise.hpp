#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixagg/weights.hpp"

namespace mixagg {

struct BoundedInterval {
    double l;
    double r;

    BoundedInterval(double l_, double r_) : l(l_), r(r_) {
        if (!(l < r)) throw std::invalid_argument("BoundedInterval: l >= r");
    }
    double width() const { return r - l; }
    bool contains(double x) const { return x >= l && x <= r; }
};

/// Learning rates for a loss: eta_expconcave <= eta_mixable always.
struct EtaRate {
    double eta_mixable;
    double eta_expconcave;

    EtaRate(double mix, double exp_concave)
        : eta_mixable(mix), eta_expconcave(exp_concave) {
        if (!(eta_mixable > 0.0) || !(eta_expconcave > 0.0))
            throw std::invalid_argument("EtaRate: rates must be positive");
        if (eta_expconcave > eta_mixable + 1e-15)
            throw std::invalid_argument("EtaRate: exp-concavity rate above mixability rate");
    }
};

/// Thrown when a prediction assigns zero probability to the realized
/// outcome; the game engine aborts rather than propagating +inf.
class InfiniteLossError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double square_loss(double g, double o, const BoundedInterval& iv);

/// Aggregation of scalar forecasts for the square loss on [l,r];
/// mixable at eta = 2/(r-l)^2. Evaluated in log space.
double square_substitution(std::span<const double> forecasts, const WeightVector& w,
                           const BoundedInterval& iv);

double log_loss(std::span<const double> g, std::size_t k);

std::vector<double> log_substitution(std::span<const std::vector<double>> forecasts,
                                     const WeightVector& w);

double complex_square_loss(std::complex<double> z, std::complex<double> zp);

/// Componentwise square substitution on Re/Im with [l,r] = [-1,1];
/// mixable at eta = 1/4 on the unit disc.
std::complex<double> complex_square_substitution(
    std::span<const std::complex<double>> forecasts, const WeightVector& w);

/// Numerical check of the exp-concavity Hessian condition
/// Hess(lambda) >= eta * grad(lambda) grad(lambda)^T at a point, using
/// central finite differences. `loss` maps a forecast in R^dim to a loss
/// (the outcome is baked into the callable).
bool expconcavity_hessian_check(const std::function<double(std::span<const double>)>& loss,
                                double eta, std::span<const double> g,
                                double fd_step = 1e-5, double eig_tol = 1e-6);

}  // namespace mixagg
