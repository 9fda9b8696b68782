#include "mixagg/pointwise.hpp"

#include <algorithm>
#include <cmath>

#include "mixagg/numeric.hpp"

namespace mixagg {

double square_loss(double g, double o, const BoundedInterval& iv) {
    if (!iv.contains(g) || !iv.contains(o))
        throw std::domain_error("square_loss: argument outside interval");
    return sqr(g - o);
}

double square_substitution(std::span<const double> forecasts, const WeightVector& w,
                           const BoundedInterval& iv) {
    if (forecasts.size() != w.size())
        throw std::invalid_argument("square_substitution: size mismatch");
    const double width = iv.width();
    std::vector<double> log_hi(forecasts.size()), log_lo(forecasts.size());
    for (std::size_t n = 0; n < forecasts.size(); ++n) {
        const double g = forecasts[n];
        if (!iv.contains(g))
            throw std::domain_error("square_substitution: forecast outside interval");
        const double lw = w[n] > 0.0 ? std::log(w[n])
                                     : -std::numeric_limits<double>::infinity();
        log_hi[n] = lw - 2.0 * sqr((iv.r - g) / width);
        log_lo[n] = lw - 2.0 * sqr((g - iv.l) / width);
    }
    const double val = 0.5 * (iv.r + iv.l) +
                       0.25 * width * (log_sum_exp(log_hi) - log_sum_exp(log_lo));
    return std::clamp(val, iv.l, iv.r);
}

double log_loss(std::span<const double> g, std::size_t k) {
    if (k >= g.size()) throw std::invalid_argument("log_loss: outcome index out of range");
    double total = 0.0;
    for (double p : g) {
        if (!(p >= 0.0)) throw std::invalid_argument("log_loss: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kSimplexRenormTol)
        throw std::invalid_argument("log_loss: forecast not on simplex");
    if (g[k] <= 0.0) throw InfiniteLossError("log_loss: zero probability on realized outcome");
    return -std::log(g[k]);
}

std::vector<double> log_substitution(std::span<const std::vector<double>> forecasts,
                                     const WeightVector& w) {
    if (forecasts.empty() || forecasts.size() != w.size())
        throw std::invalid_argument("log_substitution: size mismatch");
    const std::size_t k = forecasts.front().size();
    std::vector<double> out(k, 0.0);
    for (std::size_t n = 0; n < forecasts.size(); ++n) {
        if (forecasts[n].size() != k)
            throw std::invalid_argument("log_substitution: ragged forecasts");
        for (std::size_t i = 0; i < k; ++i) out[i] += w[n] * forecasts[n][i];
    }
    return out;
}

double complex_square_loss(std::complex<double> z, std::complex<double> zp) {
    if (std::abs(z) > 1.0 + 1e-12 || std::abs(zp) > 1.0 + 1e-12)
        throw std::domain_error("complex_square_loss: argument outside unit disc");
    return std::norm(z - zp);
}

std::complex<double> complex_square_substitution(
    std::span<const std::complex<double>> forecasts, const WeightVector& w) {
    const BoundedInterval iv(-1.0, 1.0);
    std::vector<double> re(forecasts.size()), im(forecasts.size());
    for (std::size_t n = 0; n < forecasts.size(); ++n) {
        re[n] = forecasts[n].real();
        im[n] = forecasts[n].imag();
    }
    return {square_substitution(re, w, iv), square_substitution(im, w, iv)};
}

namespace {

/// Smallest eigenvalue of a symmetric matrix via cyclic Jacobi rotations.
double min_eigenvalue_sym(std::vector<double> a, std::size_t n) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += sqr(a[p * n + q]);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-30) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
    }
    double mn = a[0];
    for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, a[i * n + i]);
    return mn;
}

}  // namespace

bool expconcavity_hessian_check(const std::function<double(std::span<const double>)>& loss,
                                double eta, std::span<const double> g, double fd_step,
                                double eig_tol) {
    const std::size_t n = g.size();
    std::vector<double> x(g.begin(), g.end());
    const double h = fd_step;

    std::vector<double> grad(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = g[i] + h;
        const double fp = loss(x);
        x[i] = g[i] - h;
        const double fm = loss(x);
        x[i] = g[i];
        grad[i] = (fp - fm) / (2.0 * h);
    }

    const double f0 = loss(x);
    std::vector<double> hess(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = g[i] + h;
        const double fp = loss(x);
        x[i] = g[i] - h;
        const double fm = loss(x);
        x[i] = g[i];
        hess[i * n + i] = (fp - 2.0 * f0 + fm) / (h * h);
        for (std::size_t j = i + 1; j < n; ++j) {
            x[i] = g[i] + h;
            x[j] = g[j] + h;
            const double fpp = loss(x);
            x[j] = g[j] - h;
            const double fpm = loss(x);
            x[i] = g[i] - h;
            const double fmm = loss(x);
            x[j] = g[j] + h;
            const double fmp = loss(x);
            x[i] = g[i];
            x[j] = g[j];
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            hess[i * n + j] = v;
            hess[j * n + i] = v;
        }
    }

    // Hess - eta * grad grad^T must be positive semi-definite.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hess[i * n + j] -= eta * grad[i] * grad[j];
    return min_eigenvalue_sym(std::move(hess), n) >= -eig_tol;
}

}  // namespace mixagg
