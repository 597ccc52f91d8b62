#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"
#include "qlab/econ/stats.hpp"
#include "qlab/models/stochastic.hpp"

using namespace qlab;

TEST_SUITE("stochastic_models") {

TEST_CASE("gbm: zero volatility is the deterministic exponential") {
    models::GbmParams params{100.0, 0.05, 0.0};
    core::Rng rng(1);
    const auto path = models::simulate_gbm(params, 0.01, 500, rng);
    REQUIRE(path.size() == 501);
    for (std::size_t i = 0; i <= 500; ++i) {
        const double t = 0.01 * static_cast<double>(i);
        CHECK(path[i] == doctest::Approx(100.0 * std::exp(0.05 * t)).epsilon(1e-10));
    }
}

TEST_CASE("gbm: terminal mean within monte carlo error of s0*exp(mu T)") {
    models::GbmParams params{100.0, 0.05, 0.2};
    core::RngFactory rng(42);
    const std::size_t paths = 40000;
    const auto terminals =
        models::gbm_terminal_ensemble(params, 1.0 / 365.0, 365, paths, rng, core::Exec::serial);
    const double expected = 100.0 * std::exp(0.05);
    const double m = core::mean(terminals);
    const double sd = std::sqrt(core::variance_sample(terminals));
    const double mc_se = sd / std::sqrt(static_cast<double>(paths));
    CHECK(std::abs(m - expected) < 3.0 * mc_se);

    const auto parallel =
        models::gbm_terminal_ensemble(params, 1.0 / 365.0, 365, paths, rng, core::Exec::parallel);
    CHECK(parallel == terminals);
}

TEST_CASE("gbm: log returns of one long path look normal") {
    models::GbmParams params{100.0, 0.0, 0.3};
    core::Rng rng(7);
    const double dt = 1.0 / 365.0;
    const auto path = models::simulate_gbm(params, dt, 100000, rng);
    std::vector<double> log_returns(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        log_returns[i] = std::log(path[i + 1] / path[i]);
    }
    const auto stats = econ::distribution_stats(log_returns);
    CHECK(std::abs(stats.skewness) < 0.05);
    CHECK(std::abs(stats.excess_kurtosis) < 0.1);
    CHECK(stats.mean == doctest::Approx(-0.5 * 0.3 * 0.3 * dt).epsilon(0.5));
    CHECK(stats.std_dev == doctest::Approx(0.3 * std::sqrt(dt)).epsilon(0.01));
}

TEST_CASE("gbm: arithmetic flag gives the additive model") {
    models::GbmParams params{100.0, 2.0, 0.0};
    core::Rng rng(3);
    const auto path = models::simulate_gbm(params, 0.5, 4, rng, true);
    CHECK(path[4] == doctest::Approx(100.0 + 2.0 * 2.0));
}

TEST_CASE("heston: sigma_v = 0 with v0 = theta reduces to constant variance") {
    models::HestonParams params;
    params.s0 = 100.0;
    params.v0 = 0.09;
    params.theta = 0.09;
    params.sigma_v = 0.0;
    params.kappa = 1.5;
    params.r = 0.02;
    core::Rng rng(5);
    const auto path = models::simulate_heston(params, 0.01, 200, rng);
    for (double v : path.variances) CHECK(v == doctest::Approx(0.09));
    CHECK(path.floor_touches == 0);
}

TEST_CASE("heston: discounted martingale and ergodic variance") {
    models::HestonParams params;
    params.s0 = 100.0;
    params.v0 = 0.04;
    params.r = 0.03;
    params.kappa = 2.0;
    params.theta = 0.04;
    params.sigma_v = 0.3;
    core::RngFactory rng(42);
    const std::size_t paths = 20000;
    const double dt = 0.01;
    const std::size_t steps = 200; // T = 2
    const auto terminals =
        models::heston_terminal_ensemble(params, dt, steps, paths, rng, core::Exec::serial);

    std::vector<double> discounted(paths);
    std::vector<double> variances(paths);
    for (std::size_t i = 0; i < paths; ++i) {
        discounted[i] = std::exp(-params.r * dt * static_cast<double>(steps)) * terminals[i].price;
        variances[i] = terminals[i].variance;
    }
    const double mean_price = core::mean(discounted);
    const double se_price =
        std::sqrt(core::variance_sample(discounted) / static_cast<double>(paths));
    CHECK(std::abs(mean_price - params.s0) < 3.0 * se_price);

    const double mean_var = core::mean(variances);
    const double se_var = std::sqrt(core::variance_sample(variances) / static_cast<double>(paths));
    CHECK(std::abs(mean_var - params.theta) < 3.0 * se_var);
}

TEST_CASE("heston: rho = 0 leaves the driving noises uncorrelated") {
    // correlate price and variance increments over one long path
    models::HestonParams params;
    params.v0 = 0.04;
    params.theta = 0.04;
    params.kappa = 0.5;
    params.sigma_v = 0.2;
    params.rho = 0.0;
    core::Rng rng(9);
    const std::size_t steps = 100000;
    const auto path = models::simulate_heston(params, 1e-4, steps, rng);
    std::vector<double> dz1(steps), dz2(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        dz1[i] = std::log(path.prices[i + 1] / path.prices[i]);
        dz2[i] = path.variances[i + 1] - path.variances[i];
    }
    double mean1 = core::mean(dz1);
    double mean2 = core::mean(dz2);
    double cov = 0.0, var1 = 0.0, var2 = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        cov += (dz1[i] - mean1) * (dz2[i] - mean2);
        var1 += (dz1[i] - mean1) * (dz1[i] - mean1);
        var2 += (dz2[i] - mean2) * (dz2[i] - mean2);
    }
    CHECK(std::abs(cov / std::sqrt(var1 * var2)) < 0.01);
}

TEST_CASE("black-scholes: deterministic payoff, oracle, parity") {
    const auto zero_vol = models::black_scholes_call(110, 100, 0.0, 1.0, 0.0);
    CHECK(zero_vol.call_price == doctest::Approx(10.0));

    const auto quote = models::black_scholes_call(100, 100, 0.05, 1.0, 0.2);
    const double oracle = test::bs_call_by_integration(100, 100, 0.05, 1.0, 0.2);
    CHECK(std::abs(quote.call_price - oracle) < 1e-3);
    CHECK(quote.call_price == doctest::Approx(10.4506).epsilon(1e-3));

    // put-call parity from the same N
    const double parity = quote.call_price - quote.put_price;
    CHECK(std::abs(parity - (100.0 - 100.0 * std::exp(-0.05))) < 1e-10);

    CHECK_THROWS_AS(models::black_scholes_call(-1, 100, 0.0, 1.0, 0.2), Error);
    CHECK_THROWS_AS(models::black_scholes_call(100, 100, 0.0, 0.0, 0.2), Error);
}

TEST_CASE("black-scholes: monotonicity across a grid") {
    const double strikes[] = {80, 90, 100, 110, 120};
    const double vols[] = {0.1, 0.2, 0.3};
    double prev_k = 1e300;
    for (double k : strikes) {
        const auto quote = models::black_scholes_call(100, k, 0.05, 1.0, 0.2);
        CHECK(quote.call_price < prev_k);
        prev_k = quote.call_price;
        CHECK(quote.call_price >= std::max(100.0 - k * std::exp(-0.05), 0.0));
        CHECK(quote.call_price <= 100.0);
    }
    for (double k : strikes) {
        double prev_sigma = -1.0;
        for (double v : vols) {
            const auto quote = models::black_scholes_call(100, k, 0.05, 1.0, v);
            CHECK(quote.call_price > prev_sigma);
            prev_sigma = quote.call_price;
        }
        const auto short_t = models::black_scholes_call(100, k, 0.05, 0.5, 0.2);
        const auto long_t = models::black_scholes_call(100, k, 0.05, 2.0, 0.2);
        CHECK(long_t.call_price > short_t.call_price);
    }
}

TEST_CASE("black-scholes: analytic vega matches central differences") {
    const double spots[] = {80, 90, 100, 110, 120};
    const double sigmas[] = {0.1, 0.15, 0.2, 0.3, 0.4};
    const double h = 1e-5;
    for (double s : spots) {
        for (double sigma : sigmas) {
            const auto quote = models::black_scholes_call(s, 100, 0.05, 1.0, sigma);
            const auto up = models::black_scholes_call(s, 100, 0.05, 1.0, sigma + h);
            const auto dn = models::black_scholes_call(s, 100, 0.05, 1.0, sigma - h);
            const double fd = (up.call_price - dn.call_price) / (2.0 * h);
            CHECK(std::abs(quote.vega - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("gordon-shapiro") {
    CHECK(models::gordon_shapiro(5.0, 0.10, 0.05) == doctest::Approx(100.0));
    CHECK(models::gordon_shapiro(5.0, 0.10, 0.0) == doctest::Approx(50.0));
    CHECK_THROWS_AS(models::gordon_shapiro(5.0, 0.05, 0.05), Error);
    CHECK_THROWS_AS(models::gordon_shapiro(5.0, 0.04, 0.05), Error);
}

TEST_CASE("quantity theory identity") {
    models::QtmInput missing_y;
    missing_y.m = 21e6;
    missing_y.v = 2.0;
    missing_y.p = 10.0;
    const auto y = models::quantity_theory_solve(missing_y);
    CHECK(y.solved_for == 'Y');
    CHECK(y.value == doctest::Approx(21e6 * 2.0 / 10.0));

    models::QtmInput unit;
    unit.m = 1.0;
    unit.v = 1.0;
    unit.y = 1.0;
    const auto p = models::quantity_theory_solve(unit);
    CHECK(p.solved_for == 'P');
    CHECK(p.value == doctest::Approx(1.0));

    models::QtmInput all;
    all.m = 2.0;
    all.v = 3.0;
    all.p = 6.0;
    all.y = 1.0;
    const auto verify = models::quantity_theory_solve(all);
    REQUIRE(verify.consistent.has_value());
    CHECK(*verify.consistent);
    all.y = 1.5;
    CHECK_FALSE(*models::quantity_theory_solve(all).consistent);

    models::QtmInput two;
    two.m = 1.0;
    two.v = 1.0;
    CHECK_THROWS_AS(models::quantity_theory_solve(two), Error);
}

} // TEST_SUITE
