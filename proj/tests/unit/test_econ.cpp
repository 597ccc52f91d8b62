#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qlab/core/errors.hpp"
#include "qlab/econ/adf.hpp"
#include "qlab/econ/stats.hpp"

using namespace qlab;

TEST_SUITE("econometrics") {

TEST_CASE("adf: random walk accepted, stationary AR(1) rejected") {
    const auto walk = test::random_walk_closes(1001, 500, 100.0, 1.0);
    const auto walk_result = econ::adf_test(walk);
    CHECK(walk_result.p_value > 0.05); // typical draw; the seed is fixed
    CHECK(walk_result.n_obs > 400);

    const auto stationary = test::ar1_levels(1002, 500, 0.5);
    const auto ar_result = econ::adf_test(stationary);
    CHECK(ar_result.p_value <= 0.05);
    CHECK(ar_result.reject_at_5pct);
}

TEST_CASE("adf: constant input is a singular regression") {
    std::vector<double> constant(200, 42.0);
    CHECK_THROWS_AS(econ::adf_test(constant), Error);
}

TEST_CASE("adf: too-short input") {
    std::vector<double> tiny(20, 1.0);
    CHECK_THROWS_AS(econ::adf_test(tiny), Error);
}

TEST_CASE("adf: statistic invariant under positive affine transforms") {
    const auto closes = test::random_walk_closes(7, 400, 100.0, 1.0);
    std::vector<double> transformed(closes.size());
    for (std::size_t i = 0; i < closes.size(); ++i) transformed[i] = 3.0 * closes[i] + 1000.0;
    const auto base = econ::adf_test(closes);
    const auto moved = econ::adf_test(transformed);
    CHECK(moved.test_statistic == doctest::Approx(base.test_statistic).epsilon(1e-7));
    CHECK(moved.lags_used == base.lags_used);
}

TEST_CASE("adf: mackinnon surface hits the known 5% boundary") {
    // the constant-case asymptotic 5% critical value sits near -2.86
    CHECK(econ::mackinnon_pvalue_const(-2.86) == doctest::Approx(0.05).epsilon(0.02));
    CHECK(econ::mackinnon_pvalue_const(-3.43) == doctest::Approx(0.01).epsilon(0.10));
    CHECK(econ::mackinnon_pvalue_const(0.0) > 0.5);
    bool clamped = false;
    CHECK(econ::mackinnon_pvalue_const(-25.0, &clamped) == 0.001);
    CHECK(clamped);
    CHECK(econ::mackinnon_pvalue_const(5.0, &clamped) == 0.999);
    CHECK(clamped);
}

TEST_CASE("adf: monte carlo size and power, small sample") {
    // a cheap version of the calibration gate; the acceptance suite runs the
    // full 1000-trial version
    const int trials = 120;
    int size_rejections = 0;
    int power_rejections = 0;
    for (int t = 0; t < trials; ++t) {
        const auto walk = test::random_walk_closes(9000 + t, 300, 100.0, 1.0);
        if (econ::adf_test(walk).reject_at_5pct) ++size_rejections;
        const auto ar = test::ar1_levels(12000 + t, 300, 0.5);
        if (econ::adf_test(ar).reject_at_5pct) ++power_rejections;
    }
    CHECK(size_rejections <= trials / 5);
    CHECK(power_rejections >= trials * 9 / 10);
}

TEST_CASE("random_walk_share on a mixed universe") {
    std::vector<data::PriceSeries> universe;
    for (int i = 0; i < 5; ++i) {
        universe.push_back(
            test::make_series("RW" + std::to_string(i), test::random_walk_closes(100 + i, 500)));
    }
    for (int i = 0; i < 5; ++i) {
        universe.push_back(
            test::make_series("AR" + std::to_string(i), test::ar1_levels(200 + i, 500, 0.3)));
    }
    universe.push_back(test::make_series("SHORT", std::vector<double>(50, 10.0)));

    const auto screen = econ::random_walk_share(universe, 100, {}, core::Exec::serial);
    CHECK(screen.valid_assets == 10);
    CHECK(screen.random_walk_share_pct >= 30.0);
    CHECK(screen.random_walk_share_pct <= 70.0);

    const auto parallel = econ::random_walk_share(universe, 100, {}, core::Exec::parallel);
    CHECK(parallel.random_walk_share_pct == screen.random_walk_share_pct);
    for (std::size_t i = 0; i < screen.entries.size(); ++i) {
        if (screen.entries[i].ok) {
            CHECK(parallel.entries[i].result.p_value == screen.entries[i].result.p_value);
        }
    }
}

TEST_CASE("random_walk_share: seeded golden values") {
    // frozen from the first run of these exact seeds
    std::vector<data::PriceSeries> walks;
    for (int i = 0; i < 10; ++i) {
        walks.push_back(
            test::make_series("GRW" + std::to_string(i), test::random_walk_closes(31000 + i, 500)));
    }
    const auto walk_screen = econ::random_walk_share(walks, 100, {}, core::Exec::serial);
    CHECK(walk_screen.random_walk_share_pct >= 80.0);
    // one of the ten walks draws a type-I rejection under these seeds
    CHECK(walk_screen.random_walk_share_pct == doctest::Approx(90.0));

    std::vector<data::PriceSeries> noise;
    for (int i = 0; i < 10; ++i) {
        noise.push_back(
            test::make_series("WN" + std::to_string(i), test::ar1_levels(32000 + i, 500, 0.0)));
    }
    const auto noise_screen = econ::random_walk_share(noise, 100, {}, core::Exec::serial);
    CHECK(noise_screen.random_walk_share_pct <= 20.0);
    CHECK(noise_screen.random_walk_share_pct == doctest::Approx(0.0));
}

TEST_CASE("pearson_corr: identities and independence bound") {
    const auto closes = test::random_walk_closes(55, 400);
    const auto series = test::make_series("A", closes);
    const auto returns = data::daily_returns(series);

    const auto self = econ::pearson_corr(returns, returns);
    CHECK(self.pearson_r == doctest::Approx(1.0));
    CHECK(self.n_overlap == returns.entries.size());

    auto negated = returns;
    negated.symbol = "NEG";
    for (auto& [date, value] : negated.entries) value = -value;
    const auto anti = econ::pearson_corr(returns, negated);
    CHECK(anti.pearson_r == doctest::Approx(-1.0));

    // independent seeded white noise: |r| < 0.03 at n = 10000
    core::Rng rng_a(1);
    core::Rng rng_b(2);
    data::ReturnSeries wa{"WA", {}};
    data::ReturnSeries wb{"WB", {}};
    for (int i = 0; i < 10000; ++i) {
        const auto date = core::Date(1980, 1, 1) + i;
        wa.entries.emplace_back(date, rng_a.normal());
        wb.entries.emplace_back(date, rng_b.normal());
    }
    const auto indep = econ::pearson_corr(wa, wb);
    CHECK(std::abs(indep.pearson_r) < 0.03);

    // inner join: disjoint date ranges leave no overlap
    data::ReturnSeries shifted{"SH", {}};
    for (std::size_t i = 0; i < wa.entries.size(); ++i) {
        shifted.entries.emplace_back(wa.entries[i].first + 20000, wa.entries[i].second);
    }
    CHECK_THROWS_AS(econ::pearson_corr(wa, shifted), Error);

    data::ReturnSeries constant{"C", {}};
    for (int i = 0; i < 100; ++i) constant.entries.emplace_back(core::Date(1980, 1, 1) + i, 1.0);
    CHECK_THROWS_AS(econ::pearson_corr(wa, constant), Error);
}

TEST_CASE("pearson_corr invariant under positive affine transforms") {
    const auto a = data::daily_returns(test::make_series("A", test::random_walk_closes(3, 300)));
    const auto b = data::daily_returns(test::make_series("B", test::random_walk_closes(4, 300)));
    auto scaled = b;
    for (auto& [date, value] : scaled.entries) value = 2.5 * value + 7.0;
    CHECK(econ::pearson_corr(a, scaled).pearson_r ==
          doctest::Approx(econ::pearson_corr(a, b).pearson_r).epsilon(1e-12));
}

TEST_CASE("distribution_stats: analytic two-point sample") {
    std::vector<double> sample;
    for (int i = 0; i < 50; ++i) {
        sample.push_back(-1.0);
        sample.push_back(1.0);
    }
    const auto stats = econ::distribution_stats(sample);
    CHECK(stats.mean == 0.0);
    CHECK(stats.std_dev == doctest::Approx(1.0));
    CHECK(stats.skewness == 0.0);
    CHECK(stats.excess_kurtosis == doctest::Approx(-2.0));
    CHECK(stats.jarque_bera_stat == doctest::Approx(100.0 / 6.0 * (4.0 / 4.0)));
}

TEST_CASE("distribution_stats: gaussian and heavy-tail samples") {
    core::Rng rng(77);
    std::vector<double> normal_sample(100000);
    for (auto& v : normal_sample) v = rng.normal();
    const auto normal_stats = econ::distribution_stats(normal_sample);
    CHECK(std::abs(normal_stats.skewness) < 0.03);
    CHECK(std::abs(normal_stats.excess_kurtosis) < 0.06);
    CHECK(normal_stats.jb_p_value > 0.01);

    // Student-t(3): z / sqrt(chi2_3 / 3) has heavy tails
    core::Rng rng_t(78);
    std::vector<double> heavy(20000);
    for (auto& v : heavy) {
        const double z = rng_t.normal();
        double chi2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double w = rng_t.normal();
            chi2 += w * w;
        }
        v = z / std::sqrt(chi2 / 3.0);
    }
    const auto heavy_stats = econ::distribution_stats(heavy);
    CHECK(heavy_stats.excess_kurtosis > 1.0);
    CHECK(heavy_stats.jb_p_value < 0.001);

    // affine invariance of the shape moments
    std::vector<double> moved(normal_sample.size());
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = 4.0 * normal_sample[i] - 3.0;
    const auto moved_stats = econ::distribution_stats(moved);
    CHECK(moved_stats.skewness == doctest::Approx(normal_stats.skewness).epsilon(1e-9));
    CHECK(moved_stats.excess_kurtosis == doctest::Approx(normal_stats.excess_kurtosis).epsilon(1e-9));

    std::vector<double> tiny(5, 1.0);
    CHECK_THROWS_AS(econ::distribution_stats(tiny), Error);
    std::vector<double> flat(20, 2.0);
    CHECK_THROWS_AS(econ::distribution_stats(flat), Error);
}

TEST_CASE("histogram covers the sample and closes the last bin") {
    std::vector<double> values{0.0, 0.5, 1.0, 1.5, 2.0};
    const auto hist = econ::histogram(values, 4);
    REQUIRE(hist.counts.size() == 4);
    REQUIRE(hist.edges.size() == 5);
    std::size_t total = 0;
    for (std::size_t c : hist.counts) total += c;
    CHECK(total == values.size());
    CHECK(hist.counts[3] == 2); // 1.5 and the right-edge 2.0
}

} // TEST_SUITE
