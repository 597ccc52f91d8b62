#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qlab/core/rng.hpp"
#include "qlab/data/series.hpp"

namespace qlab::test {

/// Daily series with the given closes starting at `start`; OHLC collapsed to
/// the close unless highs/lows are supplied.
inline data::PriceSeries make_series(const std::string& symbol, std::span<const double> closes,
                                     core::Date start = core::Date(2021, 1, 1)) {
    data::PriceSeries series;
    series.symbol = symbol;
    for (std::size_t i = 0; i < closes.size(); ++i) {
        data::Candle candle;
        candle.date = start + static_cast<int>(i);
        candle.open = closes[i];
        candle.high = closes[i];
        candle.low = closes[i];
        candle.close = closes[i];
        candle.volume = 1000.0;
        series.candles.push_back(candle);
    }
    return series;
}

inline data::PriceSeries make_series(const std::string& symbol, std::initializer_list<double> closes,
                                     core::Date start = core::Date(2021, 1, 1)) {
    return make_series(symbol, std::span<const double>(closes.begin(), closes.size()), start);
}

inline data::ValidatedSeries validate_or_die(const data::PriceSeries& series, std::size_t min_len) {
    auto outcome = data::validate_series(series, min_len);
    return std::get<data::ValidatedSeries>(outcome);
}

inline std::vector<double> random_walk_closes(std::uint64_t seed, std::size_t n, double start = 100.0,
                                              double step_sd = 1.0) {
    core::Rng rng(seed);
    std::vector<double> closes(n);
    double level = start;
    for (std::size_t i = 0; i < n; ++i) {
        level += step_sd * rng.normal();
        closes[i] = level;
    }
    return closes;
}

inline std::vector<double> ar1_levels(std::uint64_t seed, std::size_t n, double phi,
                                      double mean = 100.0, double noise_sd = 1.0) {
    core::Rng rng(seed);
    std::vector<double> closes(n);
    double deviation = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        deviation = phi * deviation + noise_sd * rng.normal();
        closes[i] = mean + deviation;
    }
    return closes;
}

inline bool approx_eq(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

inline bool approx_rel(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace qlab::test
