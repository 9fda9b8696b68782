#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mixagg/losses.hpp"
#include "mixagg/oracle.hpp"
#include "mixagg/pointwise.hpp"
#include "mixagg/rng.hpp"

using namespace mixagg;

namespace {

const BoundedInterval kUnit(0.0, 1.0);
const auto square_cost = [](double a, double b) { return (a - b) * (a - b); };

}  // namespace

TEST_CASE("check_mixability") {
    // single expert: aggregate equals the forecast, slack exactly zero
    const auto solo = check_mixability(
        5, WeightVector::uniform(1), 2.0,
        [](std::size_t i) { return 0.1 * static_cast<double>(i); },
        [](std::size_t, std::size_t i) { return 0.1 * static_cast<double>(i); });
    CHECK(solo.pass);
    CHECK(solo.worst_slack == doctest::Approx(0.0).epsilon(1e-15));

    Rng rng(81);
    SUBCASE("square substitution passes at the certified rate") {
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> gs{rng.uniform(), rng.uniform(), rng.uniform()};
            const WeightVector w(rng.simplex_point(3));
            const double agg = square_substitution(gs, w, kUnit);
            std::vector<double> outcomes(50);
            for (auto& o : outcomes) o = rng.uniform();
            const auto report = check_mixability(
                outcomes.size(), w, 2.0,
                [&](std::size_t i) { return square_loss(agg, outcomes[i], kUnit); },
                [&](std::size_t n, std::size_t i) {
                    return square_loss(gs[n], outcomes[i], kUnit);
                });
            CHECK(report.pass);
        }
    }

    SUBCASE("counterexample search succeeds at four times the rate") {
        bool found = false;
        for (int trial = 0; trial < 100000 && !found; ++trial) {
            std::vector<double> gs{rng.uniform(), rng.uniform()};
            const WeightVector w(rng.simplex_point(2));
            const double agg = square_substitution(gs, w, kUnit);
            std::vector<double> outcomes(20);
            for (auto& o : outcomes) o = rng.uniform();
            const auto report = check_mixability(
                outcomes.size(), w, 8.0,
                [&](std::size_t i) { return square_loss(agg, outcomes[i], kUnit); },
                [&](std::size_t n, std::size_t i) {
                    return square_loss(gs[n], outcomes[i], kUnit);
                });
            found = !report.pass;
        }
        CHECK(found);
    }
}

TEST_CASE("check_holder") {
    // constant integrand: both sides coincide
    const std::vector<double> f(12, 3.7);
    const std::vector<double> u{0.5, 0.2, 0.3};
    const std::vector<double> v{1.0, 2.0, 0.5, 0.25};
    const std::vector<double> nu{0.1, 0.2, 0.3, 0.4};
    const auto flat = check_holder(f, 3, 4, u, v, nu);
    CHECK(flat.pass);
    CHECK(flat.gap == doctest::Approx(0.0).epsilon(1e-12));

    // single Y node: equality again
    const std::vector<double> f1{1.0, 2.0, 3.0};
    const std::vector<double> v1{1.5}, nu1{0.7};
    const auto single = check_holder(f1, 3, 1, u, v1, nu1);
    CHECK(single.gap == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS(check_holder(std::vector<double>{1.0, -1.0, 1.0}, 3, 1, u, v1, nu1));

    Rng rng(82);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> rf(16 * 16), rv(16), rnu(16);
        for (auto& x : rf) x = std::exp(rng.uniform(-2.0, 2.0));
        for (auto& x : rv) x = std::exp(rng.uniform(-1.0, 1.0));
        for (auto& x : rnu) x = rng.uniform(0.01, 1.0);
        const auto ru = rng.simplex_point(16);
        REQUIRE(check_holder(rf, 16, 16, ru, rv, rnu).pass);
    }
}

TEST_CASE("discrete ot brute force") {
    const std::vector<double> xs{0.1, 0.5, 0.9};
    CHECK(discrete_ot_bruteforce(xs, xs, square_cost) == doctest::Approx(0.0));
    CHECK(discrete_ot_bruteforce(std::vector<double>{0.0, 1.0},
                                 std::vector<double>{0.0, 1.0}, square_cost) ==
          doctest::Approx(0.0));
    CHECK(discrete_ot_bruteforce(std::vector<double>{0.0, 1.0},
                                 std::vector<double>{1.0, 0.0}, square_cost) ==
          doctest::Approx(0.0));
    CHECK_THROWS(discrete_ot_bruteforce(std::vector<double>(9, 0.0),
                                        std::vector<double>(9, 0.0), square_cost));

    // monotone coupling: brute force equals the sorted matching for the
    // square cost
    Rng rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(5);
        std::vector<double> a(n), b(n);
        for (auto& x : a) x = rng.uniform();
        for (auto& x : b) x = rng.uniform();
        const double brute = discrete_ot_bruteforce(a, b, square_cost);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        double sorted_cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) sorted_cost += square_cost(a[i], b[i]);
        CHECK(brute == doctest::Approx(sorted_cost / static_cast<double>(n)).epsilon(1e-12));
    }
}

TEST_CASE("discrete ot lp") {
    const std::vector<double> xs{0.2, 0.7};
    const std::vector<double> ws{0.4, 0.6};
    CHECK(discrete_ot_lp(xs, ws, xs, ws, square_cost) == doctest::Approx(0.0).epsilon(1e-9));

    // one-point target: every unit of mass pays its own distance
    const std::vector<double> ys{0.5};
    const std::vector<double> vs{1.0};
    CHECK(discrete_ot_lp(xs, ws, ys, vs, square_cost) ==
          doctest::Approx(0.4 * 0.09 + 0.6 * 0.04).epsilon(1e-9));

    const std::vector<double> bad_mass{0.4, 0.4};
    CHECK_THROWS(discrete_ot_lp(xs, bad_mass, ys, vs, square_cost));

    Rng rng(84);
    const TransportCost cost = TransportCost::square(kUnit);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(5), m = 2 + rng.uniform_index(5);
        std::vector<double> a(n), b(m);
        for (auto& x : a) x = rng.uniform();
        for (auto& x : b) x = rng.uniform();
        const auto wa = rng.simplex_point(static_cast<int>(n));
        const auto wb = rng.simplex_point(static_cast<int>(m));
        const double lp = discrete_ot_lp(a, wa, b, wb, square_cost);
        CHECK(lp >= -1e-12);
        const auto g = GridDistribution1D::empirical(a, wa, 0.0, 1.0);
        const auto o = GridDistribution1D::empirical(b, wb, 0.0, 1.0);
        CHECK(ot1d_cost(g, o, cost) == doctest::Approx(lp).epsilon(1e-8));
    }

    // equal-weight instances agree with the assignment enumeration
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(4);
        std::vector<double> a(n), b(n);
        for (auto& x : a) x = rng.uniform();
        for (auto& x : b) x = rng.uniform();
        const std::vector<double> w(n, 1.0 / static_cast<double>(n));
        CHECK(discrete_ot_lp(a, w, b, w, square_cost) ==
              doctest::Approx(discrete_ot_bruteforce(a, b, square_cost)).epsilon(1e-9));
    }
}

TEST_CASE("mc_integrate") {
    const auto constant = mc_integrate([](Rng&) { return 2.5; }, 1000, 5);
    CHECK(constant.estimate == doctest::Approx(2.5));
    CHECK(constant.std_error == doctest::Approx(0.0));

    const auto second_moment = mc_integrate(
        [](Rng& rng) {
            const auto theta = rng.sphere_direction(2);
            return theta[0] * theta[0];
        },
        100000, 6);
    CHECK(std::abs(second_moment.estimate - 0.5) <= 3.0 * second_moment.std_error);

    const auto hemisphere = mc_integrate(
        [](Rng& rng) {
            const auto theta = rng.sphere_direction(3);
            return theta[2] > 0.0 ? 1.0 : 0.0;
        },
        100000, 7);
    CHECK(std::abs(hemisphere.estimate - 0.5) <= 3.0 * hemisphere.std_error);

    CHECK_THROWS(mc_integrate([](Rng&) { return 0.0; }, 1, 5));
}
