// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ruinlab/analytics.hpp"
#include "ruinlab/errors.hpp"
#include "ruinlab/exact.hpp"
#include "ruinlab/lundberg.hpp"
#include "ruinlab/simulate.hpp"

using namespace ruinlab;

namespace {

CheckedModel table1_model()
{
    return validate_model({1.0, 0.02}, ProfitDistribution::exponential(0.01),
                          DelayDistribution::constant(2.0));
}

CheckedModel table2_model(DelayDistribution d = DelayDistribution::uniform(1.0))
{
    return validate_model({1.0, 2.0}, ProfitDistribution::exponential(1.0), d);
}

}  // namespace

TEST_CASE("region classification")
{
    CHECK(classify_region({0.5, 0.5}, 2.0, 1.0) == Region::pre_delay_low);
    CHECK(classify_region({1.5, 0.5}, 2.0, 1.0) == Region::pre_delay_low);  // boundary
    CHECK(classify_region({1.6, 0.5}, 2.0, 1.0) == Region::pre_delay_high);
    CHECK(classify_region({0.1, 2.0}, 2.0, 1.0) == Region::post_delay);
    CHECK(classify_region({0.0, 3.0}, 2.0, 1.0) == Region::post_delay);
    CHECK(classify_region({1.0, 0.5}, 2.0, 0.5) == Region::pre_delay_high);
    CHECK(to_string(Region::pre_delay_high) == "pre_delay_high");
    CHECK_THROWS_AS(classify_region({1.0, 0.0}, table2_model(DelayDistribution::exponential(1.0))),
                    DomainError);
}

TEST_CASE("constant delay ruin probability reproduces the reference grid")
{
    const auto m = table1_model();
    const double reference[5][5] = {{1.000, 1.000, 0.990, 0.980, 0.970},
                                    {1.000, 0.990, 0.980, 0.970, 0.961},
                                    {0.995, 0.985, 0.975, 0.966, 0.956},
                                    {0.995, 0.985, 0.975, 0.966, 0.956},
                                    {0.995, 0.985, 0.975, 0.966, 0.956}};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double t = 0.5 + i, x = 0.5 + j;
            CHECK(std::abs(ruin_prob_constant_delay({x, t}, m) - reference[i][j]) < 5e-4);
        }
    CHECK(ruin_prob_constant_delay({2.5, 0.5}, m) == doctest::Approx(std::exp(-0.01)));
    CHECK(ruin_prob_constant_delay({4.5, 2.5}, m) == doctest::Approx(std::exp(-0.045)));
}

TEST_CASE("constant delay requires a constant delay and the net condition")
{
    CHECK_THROWS_AS(ruin_prob_constant_delay({1.0, 0.0}, table2_model()), DomainError);
    CHECK_THROWS_AS(ruin_prob_constant_delay(
                        {1.0, 0.0}, validate_model({1.0, 0.5}, ProfitDistribution::exponential(1.0),
                                                   DelayDistribution::constant(1.0))),
                    DomainError);
}

TEST_CASE("constant delay continuity and monotonicity")
{
    const auto m = table2_model(DelayDistribution::constant(1.5));
    for (double t = 0.0; t < 1.5; t += 0.125) {
        const double edge = 1.5 - t;
        CHECK(ruin_prob_constant_delay({edge, t}, m) == 1.0);
        CHECK(ruin_prob_constant_delay({edge + 1e-9, t}, m) == doctest::Approx(1.0));
    }
    for (double x : {0.1, 1.0, 3.0})
        CHECK(ruin_prob_constant_delay({x, 1.5 - 1e-12}, m) ==
              doctest::Approx(ruin_prob_constant_delay({x, 1.5}, m)).epsilon(1e-9));
    for (double x : {0.2, 1.0, 2.5}) {
        double prev = 2.0;
        for (double t = 0.0; t < 4.0; t += 0.1) {
            const double p = ruin_prob_constant_delay({x, t}, m);
            CHECK(p <= prev + 1e-15);
            prev = p;
        }
    }
    for (double t : {0.0, 0.7, 2.0}) {
        double prev = 2.0;
        for (double x = 1.5 - std::min(t, 1.5) + 0.05; x < 8.0; x += 0.25) {
            const double p = ruin_prob_constant_delay({x, t}, m);
            CHECK(p < prev);
            prev = p;
        }
    }
}

TEST_CASE("constant delay agrees with the large-surplus bounds")
{
    const auto m = table2_model(DelayDistribution::constant(1.0));
    for (double t : {0.0, 0.3, 0.9, 1.0, 2.0})
        for (double x : {0.2, 0.8, 1.5, 4.0}) {
            const auto b = ruin_prob_bounds({x, t}, m);
            const double p = ruin_prob_constant_delay({x, t}, m);
            CHECK(p >= b.lower - 1e-15);
            CHECK(p <= b.upper + 1e-15);
            if (x > 1.0 - t || t >= 1.0)
                CHECK(p == doctest::Approx(b.raw_upper).epsilon(1e-14));
        }
}

TEST_CASE("constant delay laplace transform examples")
{
    const auto m = table1_model();
    CHECK(ruin_laplace_constant_delay({1.0, 0.5}, 1.0, m) ==
          doctest::Approx(std::exp(-1.5)).epsilon(1e-14));
    for (double x : {0.5, 3.0})
        CHECK(ruin_laplace_constant_delay({x, 3.0}, 0.0, m) ==
              doctest::Approx(ruin_prob_constant_delay({x, 3.0}, m)).epsilon(1e-12));
    const double beta = solve_beta(m, 0.01).value;
    CHECK(beta == doctest::Approx(0.0241421).epsilon(1e-6));
    CHECK(ruin_laplace_constant_delay({4.5, 2.5}, 0.01, m) ==
          doctest::Approx(std::exp(-0.025 - beta * 4.5)).epsilon(1e-12));
    CHECK(ruin_laplace_constant_delay({4.5, 2.5}, 0.01, m) == doctest::Approx(0.87491).epsilon(1e-5));
}

TEST_CASE("constant delay laplace transform before the delay ends, checked by simulation")
{
    // No profit can be realized before ell, so the ruin time is at least ell
    // on every path that survives to ell; the transform carries exp(-theta ell).
    const auto m = table2_model(DelayDistribution::constant(1.0));
    const QueryPoint q{1.0, 0.25};
    const double theta = 1.0;
    REQUIRE(classify_region(q, m) == Region::pre_delay_high);
    const double beta = solve_beta(m, theta).value;
    const double exact = ruin_laplace_constant_delay(q, theta, m);
    CHECK(exact == doctest::Approx(std::exp(-theta * 1.0 - beta * 0.25)).epsilon(1e-12));

    MonteCarloConfig cfg;
    cfg.n_paths = 40000;
    cfg.seed = 11;
    const auto mc = estimate_ruin_laplace(q, theta, m, cfg);
    CHECK(std::abs(mc.point - exact) < 4 * mc.std_error + (mc.upper - mc.lower));
    // shifting by t instead of ell would give a value exp(0.75) times larger
    CHECK(std::abs(mc.point - exact * std::exp(0.75)) > 20 * mc.std_error);
}

TEST_CASE("constant delay ruin-time law")
{
    const auto m1 = table1_model();
    const auto low = ruin_density_constant_delay({1.0, 0.5}, m1);
    CHECK(low.atom_location() == 1.5);
    CHECK(low.atom_mass() == 1.0);
    CHECK(low.density(2.0) == 0.0);

    const auto post = ruin_density_constant_delay({4.5, 2.5}, m1);
    CHECK(post.atom_location() == doctest::Approx(7.0));
    CHECK(post.atom_mass() == doctest::Approx(std::exp(-0.09)).epsilon(1e-12));
    CHECK(post.atom_mass() == doctest::Approx(0.913931).epsilon(1e-6));

    const auto high = ruin_density_constant_delay({3.0, 0.5}, m1);
    CHECK(high.atom_location() == doctest::Approx(3.5));
    CHECK(high.atom_mass() == doctest::Approx(std::exp(-0.02 * 1.5)));
    CHECK(high.density(3.4) == 0.0);
}

TEST_CASE("constant delay normalization and transform consistency")
{
    const auto m = table2_model(DelayDistribution::constant(1.0));
    for (QueryPoint q : {QueryPoint{2.0, 3.0}, QueryPoint{2.0, 0.25}, QueryPoint{0.5, 0.0},
                         QueryPoint{4.0, 0.9}}) {
        CAPTURE(q.x);
        CAPTURE(q.t);
        const auto law = ruin_density_constant_delay(q, m);
        const double survival = 1.0 - ruin_prob_constant_delay(q, m);
        CHECK(std::abs(law.total_mass() + survival - 1.0) < 1e-6);
        for (double theta : {0.5, 1.0, 2.0})
            CHECK(std::abs(law.laplace(theta) - ruin_laplace_constant_delay(q, theta, m)) < 1e-5);
    }
}

TEST_CASE("bounded delay ruin probability reproduces the reference grid")
{
    const auto m = table2_model();
    const double xs[5] = {0.2, 0.4, 0.6, 0.8, 1.0};
    const double ts[4] = {0.25, 0.5, 0.75, 1.0};
    const double na = -1.0;
    const double reference[4][5] = {{na, na, na, 0.595, 0.487},
                                    {na, na, 0.622, 0.509, 0.417},
                                    {na, 0.692, 0.566, 0.464, 0.380},
                                    {0.819, 0.670, 0.549, 0.449, 0.368}};
    int numeric = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) {
            const QueryPoint q{xs[j], ts[i]};
            if (reference[i][j] == na) {
                CHECK(classify_region(q, m) == Region::pre_delay_low);
                CHECK_THROWS_AS(ruin_prob_bounded_delay(q, m), DomainError);
            } else {
                ++numeric;
                CHECK(std::abs(ruin_prob_bounded_delay(q, m) - reference[i][j]) < 5e-4);
            }
        }
    CHECK(numeric == 14);
    CHECK(ruin_prob_bounded_delay({0.8, 0.25}, m) ==
          doctest::Approx(std::exp(-0.8 + 0.5 * 0.75 * 0.75)).epsilon(1e-14));
}

TEST_CASE("bounded delay agrees with the constant-delay closed form")
{
    const auto m = table2_model(DelayDistribution::constant(1.0));
    for (double t : {0.0, 0.5, 1.2})
        for (double x : {1.1, 2.0, 3.0})
            CHECK(ruin_prob_bounded_delay({x, t}, m) ==
                  doctest::Approx(ruin_prob_constant_delay({x, t}, m)).epsilon(1e-13));
    CHECK_THROWS_AS(ruin_prob_bounded_delay({1.0, 0.0}, table2_model(DelayDistribution::exponential(1.0))),
                    DomainError);
}

TEST_CASE("bounded delay ruin-time law")
{
    const auto m = table2_model();
    const QueryPoint q{0.8, 0.25};
    const auto law = ruin_density_bounded_delay(q, m);
    CHECK(law.atom_location() == doctest::Approx(1.05));
    CHECK(law.support_start() == doctest::Approx(1.05));
    CHECK(law.atom_mass() == doctest::Approx(std::exp(-1.0375)).epsilon(1e-12));
    CHECK(law.density(1.04) == 0.0);
    CHECK(std::abs(law.total_mass() + 1.0 - ruin_prob_bounded_delay(q, m) - 1.0) < 1e-5);
    for (double theta : {0.5, 1.0, 2.0})
        CHECK(std::abs(law.laplace(theta) - ruin_laplace_bounded_delay(q, theta, m)) < 1e-5);
    CHECK_THROWS_AS(ruin_density_bounded_delay({0.2, 0.25}, m), DomainError);
}

TEST_CASE("epsilon bounds example")
{
    const auto m = table2_model(DelayDistribution::exponential(1.0));
    const auto b = ruin_prob_epsilon_bounds({10.0, 0.0}, 0.1, m);
    CHECK(b.ell_eps == doctest::Approx(std::log(10.0)));
    CHECK(b.alpha == doctest::Approx(1.0));
    CHECK(b.alpha_eps == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(b.lower == doctest::Approx(std::exp(-9.1)).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(std::exp(-7.0 - 1.0 / 9.0)).epsilon(1e-12));
    CHECK(b.lower <= ruin_prob_bounds({10.0, 0.0}, m).upper);

    CHECK_THROWS_AS(ruin_prob_epsilon_bounds({10.0, 0.0}, 0.0, m), ModelError);
    CHECK_THROWS_AS(ruin_prob_epsilon_bounds({10.0, 0.0}, 1.0, m), ModelError);
    CHECK_THROWS_AS(ruin_prob_epsilon_bounds({10.0, 0.0}, 0.6, m), DomainError);  // no alpha_eps
    CHECK_THROWS_AS(ruin_prob_epsilon_bounds({1.0, 0.0}, 0.1, m), DomainError);   // region
}

TEST_CASE("epsilon bounds tighten as epsilon shrinks for bounded delays")
{
    const auto m = table2_model();
    const QueryPoint q{2.0, 0.25};
    const double exact = ruin_prob_bounded_delay(q, m);
    double prev_gap = 1e9;
    for (double eps : {0.2, 0.05, 0.01, 1e-4, 1e-7}) {
        const auto b = ruin_prob_epsilon_bounds(q, eps, m);
        CHECK(b.lower <= exact + 1e-12);
        CHECK(b.upper >= exact - 1e-12);
        CHECK(b.upper - b.lower < prev_gap);
        prev_gap = b.upper - b.lower;
    }
    CHECK(prev_gap < 1e-5);
}

TEST_CASE("epsilon bounds contain a Monte Carlo estimate")
{
    const auto m = table2_model(DelayDistribution::exponential(1.0));
    const QueryPoint q{4.0, 0.0};
    const auto b = ruin_prob_epsilon_bounds(q, 0.1, m);
    MonteCarloConfig cfg;
    cfg.n_paths = 40000;
    cfg.seed = 3;
    const auto mc = estimate_ruin_probability(q, m, cfg);
    CHECK(mc.upper >= b.lower - 3 * mc.std_error);
    CHECK(mc.lower <= b.upper + 3 * mc.std_error);
}

TEST_CASE("PIDE residual")
{
    const auto m1 = table1_model();
    const Surface one = [](double, double) { return 1.0; };
    CHECK(pide_residual(one, {5.0, 3.0}, m1) == 0.0);

    const Surface constant = [&](double x, double t) {
        return ruin_prob_constant_delay({x, t}, m1);
    };
    CHECK(std::abs(pide_residual(constant, {5.0, 3.0}, m1)) <= 1e-6);
    CHECK(std::abs(pide_residual(constant, {3.0, 0.5}, m1)) <= 1e-6);

    const auto m2 = table2_model();
    const Surface bounded = [&](double x, double t) { return ruin_prob_bounded_delay({x, t}, m2); };
    CHECK(std::abs(pide_residual(bounded, {0.8, 0.5}, m2)) <= 1e-6);

    // a wrong surface is detected
    const Surface wrong = [&](double x, double t) {
        return std::exp(-0.9 * x) * (1.0 + 0.0 * t);
    };
    CHECK(std::abs(pide_residual(wrong, {0.8, 1.5}, m2)) > 1e-3);
    CHECK_THROWS_AS(pide_residual(constant, {5.0, 0.0}, m1), ModelError);
}
