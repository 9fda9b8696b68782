#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mixagg {

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kSimplexRenormTol = 1e-9;

/// Point on the N-simplex: the learner's belief over experts.
/// Constructors renormalize weights deviating from unit mass by at most
/// 1e-9 and reject anything worse.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
        if (w_.empty()) throw std::invalid_argument("WeightVector: empty");
        double total = 0.0;
        for (double x : w_) {
            if (!(x >= 0.0)) throw std::invalid_argument("WeightVector: negative weight");
            total += x;
        }
        if (std::abs(total - 1.0) > kSimplexRenormTol)
            throw std::invalid_argument("WeightVector: weights sum to " + std::to_string(total));
        if (total != 1.0)
            for (double& x : w_) x /= total;
    }

    static WeightVector uniform(std::size_t n) {
        return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    static WeightVector one_hot(std::size_t n, std::size_t i) {
        std::vector<double> w(n, 0.0);
        w.at(i) = 1.0;
        return WeightVector(std::move(w));
    }

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& values() const { return w_; }

private:
    std::vector<double> w_;
};

}  // namespace mixagg
