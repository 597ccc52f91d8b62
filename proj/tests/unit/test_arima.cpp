#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qlab/arima/arima.hpp"
#include "qlab/core/errors.hpp"
#include "qlab/core/rng.hpp"

using namespace qlab;

namespace {

// levels whose differences follow AR(p) with the given drift
std::vector<double> integrate_ar(std::uint64_t seed, std::size_t n, double constant,
                                 std::vector<double> phi, double sigma) {
    core::Rng rng(seed);
    const std::size_t p = phi.size();
    std::vector<double> diffs(n - 1, 0.0);
    for (std::size_t t = 0; t < diffs.size(); ++t) {
        double value = constant + sigma * rng.normal();
        for (std::size_t i = 1; i <= p && t >= i; ++i) value += phi[i - 1] * diffs[t - i];
        diffs[t] = value;
    }
    std::vector<double> levels(n);
    levels[0] = 1000.0;
    for (std::size_t t = 1; t < n; ++t) levels[t] = levels[t - 1] + diffs[t - 1];
    return levels;
}

} // namespace

TEST_SUITE("arima") {

TEST_CASE("fit recovers a planted AR(1) in differences") {
    const auto levels = integrate_ar(42, 5001, 0.5, {0.6}, 1.0);
    const auto fit = arima::fit_arima(levels, 1);
    CHECK(fit.n_obs == 5000);
    CHECK(fit.converged);
    CHECK(std::abs(fit.ar_coeffs[0] - 0.6) < 0.03);
    CHECK(std::abs(fit.ar_coeffs[0] - 0.6) < 3.0 * fit.std_errs[1]);
    CHECK(fit.sigma == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.stationary);
    CHECK(fit.gradient_scaled_norm < 1e-6);
}

TEST_CASE("white-noise differences give small z-stats on AR terms") {
    int calm = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        const auto levels = integrate_ar(100 + t, 1200, 0.0, {0.0, 0.0}, 1.0);
        const auto fit = arima::fit_arima(levels, 2);
        bool all_small = true;
        for (std::size_t c = 1; c < fit.z_stats.size(); ++c) {
            if (std::abs(fit.z_stats[c]) >= 3.0) all_small = false;
        }
        if (all_small) ++calm;
    }
    CHECK(calm >= trials * 95 / 100 - 1); // >= 19 of 20
}

TEST_CASE("information criteria recompute from the log likelihood") {
    const auto levels = integrate_ar(7, 800, 1.0, {0.4, -0.2}, 2.0);
    const auto fit = arima::fit_arima(levels, 2);
    const double k = static_cast<double>(fit.p) + 2.0;
    const double n = static_cast<double>(fit.n_obs);
    CHECK(fit.aic == doctest::Approx(-2.0 * fit.log_likelihood + 2.0 * k).epsilon(1e-10));
    CHECK(fit.bic == doctest::Approx(-2.0 * fit.log_likelihood + std::log(n) * k).epsilon(1e-10));
    CHECK(fit.hqic ==
          doctest::Approx(-2.0 * fit.log_likelihood + 2.0 * std::log(std::log(n)) * k).epsilon(1e-10));
}

TEST_CASE("css objective is locally optimal at the fit") {
    const auto levels = integrate_ar(11, 600, 0.3, {0.5, -0.3}, 1.5);
    const auto fit = arima::fit_arima(levels, 2);
    std::vector<double> theta{fit.constant, fit.ar_coeffs[0], fit.ar_coeffs[1]};
    const double base = arima::css_objective(levels, theta);
    CHECK(base == doctest::Approx(fit.css).epsilon(1e-12));

    core::Rng rng(55);
    for (int trial = 0; trial < 64; ++trial) {
        auto perturbed = theta;
        double norm = 0.0;
        std::vector<double> direction(theta.size());
        for (auto& d : direction) {
            d = rng.normal();
            norm += d * d;
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            perturbed[i] += 0.01 * direction[i] / norm;
        }
        CHECK(arima::css_objective(levels, perturbed) >= base);
    }
}

TEST_CASE("complex roots come in conjugate pairs with opposite frequencies") {
    // phi chosen to give a complex pair: 1 - 0.2 z + 0.8 z^2 has complex roots
    const auto levels = integrate_ar(13, 1500, 0.0, {0.2, -0.8}, 1.0);
    const auto fit = arima::fit_arima(levels, 2);
    REQUIRE(fit.roots.size() == 2);
    CHECK(fit.roots[0].value.real() == fit.roots[1].value.real());
    CHECK(fit.roots[0].value.imag() == -fit.roots[1].value.imag());
    CHECK(fit.roots[0].modulus == doctest::Approx(fit.roots[1].modulus));
    CHECK(fit.roots[0].frequency + fit.roots[1].frequency == doctest::Approx(0.0));
}

TEST_CASE("real roots report frequency 0 or -0.5 exactly") {
    const auto levels = integrate_ar(17, 1500, 0.0, {0.5}, 1.0);
    const auto fit = arima::fit_arima(levels, 1);
    REQUIRE(fit.roots.size() == 1);
    CHECK(fit.roots[0].value.imag() == 0.0);
    const bool zero_or_half = fit.roots[0].frequency == 0.0 || fit.roots[0].frequency == -0.5;
    CHECK(zero_or_half);
    // positive AR coefficient -> root at 1/phi > 0 -> frequency exactly 0
    CHECK(fit.roots[0].frequency == 0.0);
    CHECK(fit.roots[0].modulus == doctest::Approx(1.0 / fit.ar_coeffs[0]).epsilon(1e-9));
}

TEST_CASE("forecast: random walk is flat, drift integrates, p=2 matches hand recursion") {
    arima::ArimaFit flat;
    flat.p = 1;
    flat.constant = 0.0;
    flat.ar_coeffs = {0.0};
    flat.sigma = 1.0;
    const std::vector<double> history{100.0, 101.0, 103.0};
    const auto still = arima::forecast(flat, history, 5);
    for (double level : still.levels) CHECK(level == doctest::Approx(103.0));
    // psi weights are all 1 for the pure random walk: band_k = sigma*sqrt(k)
    for (std::size_t k = 0; k < still.std_errs.size(); ++k) {
        CHECK(still.std_errs[k] == doctest::Approx(std::sqrt(static_cast<double>(k + 1))));
    }

    arima::ArimaFit drift = flat;
    drift.constant = 5.0;
    const auto rising = arima::forecast(drift, history, 3);
    CHECK(rising.levels[0] == doctest::Approx(108.0));
    CHECK(rising.levels[1] == doctest::Approx(113.0));
    CHECK(rising.levels[2] == doctest::Approx(118.0));

    // hand-unrolled p=2 fixture: c=1, phi=(0.5, -0.25), last diffs (2, 1)
    arima::ArimaFit two;
    two.p = 2;
    two.constant = 1.0;
    two.ar_coeffs = {0.5, -0.25};
    two.sigma = 2.0;
    const std::vector<double> closes{100.0, 102.0, 103.0};
    const auto fc = arima::forecast(two, closes, 3);
    CHECK(fc.levels[0] == doctest::Approx(104.0));
    CHECK(fc.levels[1] == doctest::Approx(105.25));
    CHECK(fc.levels[2] == doctest::Approx(106.625));
    CHECK(fc.std_errs[0] == doctest::Approx(2.0));
    CHECK(fc.std_errs[1] == doctest::Approx(2.0 * std::sqrt(1.0 + 2.25)));
    CHECK(fc.std_errs[2] == doctest::Approx(2.0 * std::sqrt(1.0 + 2.25 + 2.25)));

    CHECK_THROWS_AS(arima::forecast(two, std::vector<double>{100.0, 101.0}, 2), Error);
}

TEST_CASE("report renders the three blocks with stable shape") {
    const auto closes = integrate_ar(23, 400, -1.0, {0.3, 0.1, -0.2, 0.15}, 3.0);
    const auto series = test::make_series("BTC", closes, core::Date(2021, 5, 3));
    const auto fit = arima::fit_arima(test::validate_or_die(series, 100), 4);
    const auto text = arima::arima_report(fit);
    CHECK(text.find("ARIMA Model Results") != std::string::npos);
    CHECK(text.find("ARIMA(4, 1, 0)") != std::string::npos);
    CHECK(text.find("css-mle") != std::string::npos);
    CHECK(text.find("D.Close") != std::string::npos);
    CHECK(text.find("S.D. of innovations") != std::string::npos);
    CHECK(text.find("ar.L4.D.Close") != std::string::npos);
    CHECK(text.find("AR.4") != std::string::npos);
    CHECK(text.find("Modulus") != std::string::npos);
    CHECK(text.find("05-03-2021") != std::string::npos);
    // conjugate pairs, when present, render +/- imaginary parts
    CHECK(text.find("No. Observations:") != std::string::npos);
}

TEST_CASE("too-short and degenerate inputs error cleanly") {
    std::vector<double> tiny{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(arima::fit_arima(tiny, 2), Error);
    CHECK_THROWS_AS(arima::fit_arima(test::random_walk_closes(1, 100), 0), Error);
}

} // TEST_SUITE
