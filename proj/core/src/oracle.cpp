#include "mixagg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mixagg/numeric.hpp"

namespace mixagg {

std::string MixabilityReport::to_json() const {
    return nlohmann::json{{"pass", pass},
                          {"worst_slack", worst_slack},
                          {"worst_outcome", worst_outcome}}
        .dump();
}

std::string HolderReport::to_json() const {
    return nlohmann::json{{"pass", pass}, {"gap", gap}}.dump();
}

MixabilityReport check_mixability(
    std::size_t n_outcomes, const WeightVector& w, double eta,
    const std::function<double(std::size_t)>& aggregate_loss,
    const std::function<double(std::size_t, std::size_t)>& expert_loss, double tol) {
    if (n_outcomes == 0) throw std::invalid_argument("check_mixability: no outcomes");
    MixabilityReport report;
    report.pass = true;
    report.worst_slack = std::numeric_limits<double>::infinity();
    std::vector<double> terms(w.size());
    for (std::size_t i = 0; i < n_outcomes; ++i) {
        const double lhs = std::exp(-eta * aggregate_loss(i));
        for (std::size_t n = 0; n < w.size(); ++n)
            terms[n] = (w[n] > 0.0 ? std::log(w[n])
                                   : -std::numeric_limits<double>::infinity()) -
                       eta * expert_loss(n, i);
        const double rhs = std::exp(log_sum_exp(terms));
        const double slack = lhs - rhs;
        if (slack < report.worst_slack) {
            report.worst_slack = slack;
            report.worst_outcome = i;
        }
    }
    report.pass = report.worst_slack >= -tol;
    return report;
}

HolderReport check_holder(std::span<const double> f, std::size_t n_x, std::size_t n_y,
                          std::span<const double> u, std::span<const double> v,
                          std::span<const double> nu, double tol) {
    if (f.size() != n_x * n_y || u.size() != n_x || v.size() != n_y || nu.size() != n_y)
        throw std::invalid_argument("check_holder: size mismatch");
    for (double x : f)
        if (!(x > 0.0)) throw std::domain_error("check_holder: f must be strictly positive");
    double usum = 0.0;
    for (double x : u) usum += x;
    if (std::abs(usum - 1.0) > 1e-9)
        throw std::invalid_argument("check_holder: u must sum to 1");

    // LHS: int_Y exp(int_X log f du) v dnu
    double lhs = 0.0;
    for (std::size_t y = 0; y < n_y; ++y) {
        double inner = 0.0;
        for (std::size_t x = 0; x < n_x; ++x) inner += std::log(f[x * n_y + y]) * u[x];
        lhs += std::exp(inner) * v[y] * nu[y];
    }
    // RHS: exp(int_X log[int_Y f v dnu] du)
    double outer = 0.0;
    for (std::size_t x = 0; x < n_x; ++x) {
        double inner = 0.0;
        for (std::size_t y = 0; y < n_y; ++y) inner += f[x * n_y + y] * v[y] * nu[y];
        outer += std::log(inner) * u[x];
    }
    const double rhs = std::exp(outer);

    HolderReport report;
    report.gap = rhs - lhs;
    report.pass = report.gap >= -tol;
    return report;
}

double discrete_ot_bruteforce(std::span<const double> xs, std::span<const double> ys,
                              const std::function<double(double, double)>& cost) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("discrete_ot_bruteforce: need equal nonempty supports");
    if (xs.size() > 8)
        throw std::invalid_argument("discrete_ot_bruteforce: n > 8, use the LP variant");
    std::vector<std::size_t> perm(xs.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) total += cost(xs[i], ys[perm[i]]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(xs.size());
}

namespace {

struct BasisCell {
    std::size_t row, col;
    double flow;
};

}  // namespace

double discrete_ot_lp(std::span<const double> xs, std::span<const double> ws,
                      std::span<const double> ys, std::span<const double> vs,
                      const std::function<double(double, double)>& cost) {
    const std::size_t m = xs.size(), n = ys.size();
    if (m == 0 || n == 0 || ws.size() != m || vs.size() != n)
        throw std::invalid_argument("discrete_ot_lp: size mismatch");
    if (m > 64 || n > 64) throw std::invalid_argument("discrete_ot_lp: support too large");
    double wsum = 0.0, vsum = 0.0;
    for (double w : ws) {
        if (!(w >= 0.0)) throw std::domain_error("discrete_ot_lp: negative mass");
        wsum += w;
    }
    for (double v : vs) {
        if (!(v >= 0.0)) throw std::domain_error("discrete_ot_lp: negative mass");
        vsum += v;
    }
    if (std::abs(wsum - 1.0) > 1e-9 || std::abs(vsum - 1.0) > 1e-9)
        throw std::domain_error("discrete_ot_lp: marginals must both sum to 1");

    std::vector<double> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = cost(xs[i], ys[j]);

    // tiny supply perturbation avoids degenerate pivots; its cost impact is
    // bounded by m * eps * max|c|
    constexpr double eps = 1e-13;
    std::vector<double> supply(ws.begin(), ws.end()), demand(vs.begin(), vs.end());
    for (std::size_t i = 0; i < m; ++i) supply[i] += eps * static_cast<double>(i + 1);
    demand[n - 1] += eps * static_cast<double>(m * (m + 1) / 2);

    // northwest-corner initial basis
    std::vector<BasisCell> basis;
    basis.reserve(m + n - 1);
    {
        std::size_t i = 0, j = 0;
        auto s = supply, d = demand;
        while (i < m && j < n) {
            const double q = std::min(s[i], d[j]);
            basis.push_back({i, j, q});
            s[i] -= q;
            d[j] -= q;
            if (i + 1 == m && j + 1 == n) break;
            if (s[i] <= d[j])
                ++i;
            else
                ++j;
        }
    }

    const std::size_t max_iter = 100000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // potentials from the basis tree (u[0] = 0)
        constexpr double unset = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> u(m, unset), v(n, unset);
        u[0] = 0.0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& b : basis) {
                const bool has_u = !std::isnan(u[b.row]);
                const bool has_v = !std::isnan(v[b.col]);
                if (has_u && !has_v) {
                    v[b.col] = c[b.row * n + b.col] - u[b.row];
                    changed = true;
                } else if (!has_u && has_v) {
                    u[b.row] = c[b.row * n + b.col] - v[b.col];
                    changed = true;
                }
            }
        }

        // entering cell: most negative reduced cost
        double best_rc = -1e-12;
        std::size_t ei = m, ej = n;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (std::isnan(u[i]) || std::isnan(v[j])) continue;
                const double rc = c[i * n + j] - u[i] - v[j];
                if (rc < best_rc) {
                    best_rc = rc;
                    ei = i;
                    ej = j;
                }
            }
        if (ei == m) break;  // optimal

        // find the unique alternating cycle: path from row ei to col ej in
        // the bipartite basis tree
        const std::size_t nodes = m + n;  // rows 0..m-1, cols m..m+n-1
        std::vector<int> parent_edge(nodes, -1);
        std::vector<std::size_t> parent_node(nodes, nodes);
        std::vector<char> seen(nodes, 0);
        std::vector<std::size_t> queue{ei};
        seen[ei] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t node = queue[qi];
            for (std::size_t e = 0; e < basis.size(); ++e) {
                const std::size_t a = basis[e].row, b = m + basis[e].col;
                std::size_t other;
                if (node == a)
                    other = b;
                else if (node == b)
                    other = a;
                else
                    continue;
                if (seen[other]) continue;
                seen[other] = 1;
                parent_edge[other] = static_cast<int>(e);
                parent_node[other] = node;
                queue.push_back(other);
            }
        }
        const std::size_t target = m + ej;
        if (!seen[target])
            throw std::logic_error("discrete_ot_lp: basis lost connectivity");

        // walk back collecting basis edges; signs alternate starting with
        // '-' on the edge adjacent to the entering cell's column
        std::vector<std::size_t> path_edges;
        for (std::size_t node = target; node != ei; node = parent_node[node])
            path_edges.push_back(static_cast<std::size_t>(parent_edge[node]));

        double theta = std::numeric_limits<double>::infinity();
        std::size_t leaving = basis.size();
        for (std::size_t k = 0; k < path_edges.size(); ++k) {
            if (k % 2 == 0) {  // '-' edges
                const auto& b = basis[path_edges[k]];
                if (b.flow < theta) {
                    theta = b.flow;
                    leaving = path_edges[k];
                }
            }
        }
        if (leaving == basis.size())
            throw std::logic_error("discrete_ot_lp: no leaving edge found");

        for (std::size_t k = 0; k < path_edges.size(); ++k)
            basis[path_edges[k]].flow += (k % 2 == 0) ? -theta : theta;
        basis[leaving] = {ei, ej, theta};
        if (iter + 1 == max_iter)
            throw std::logic_error("discrete_ot_lp: iteration limit reached");
    }

    double total = 0.0;
    for (const auto& b : basis) total += b.flow * c[b.row * n + b.col];
    return total;
}

McEstimate mc_integrate(const std::function<double(Rng&)>& fn, std::size_t samples,
                        std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("mc_integrate: samples < 2");
    Rng rng(seed);
    std::vector<double> vals(samples);
    for (auto& v : vals) v = fn(rng);
    const double mean = pairwise_sum(vals) / static_cast<double>(samples);
    std::vector<double> sq(samples);
    for (std::size_t i = 0; i < samples; ++i) sq[i] = sqr(vals[i] - mean);
    const double var = pairwise_sum(sq) / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace mixagg
