#pragma once

#include <span>
#include <string>
#include <vector>

namespace qlab::ind {

/// Indicator values aligned 1:1 to the input bars; the warm-up region is NaN
/// (explicitly undefined, never silent zeros). Downstream code drops NaN rows.
struct IndicatorSeries {
    std::string name;
    std::vector<double> values;

    bool defined(std::size_t i) const;
    std::size_t first_defined() const; // values.size() when nothing is defined
};

/// Arithmetic mean of the n most recent closes ending at t.
/// `lagged` shifts the input by one day (value at t covers t-n .. t-1), the
/// variant the backtester trades on.
IndicatorSeries sma(std::span<const double> closes, std::size_t n, bool lagged = false);

/// Wilder RSI: seed averages are simple means of the first n changes, then
/// avg = (prev*(n-1) + current)/n. avgLoss == 0 with gains -> 100; both
/// zero -> 50.
IndicatorSeries rsi(std::span<const double> closes, std::size_t n);

/// Wilder parabolic stop-and-reverse. Initial trend is long iff
/// close_1 >= close_0 (first close-to-close move); SAR is clamped to the
/// prior two bars' range and reversal resets AF.
IndicatorSeries parabolic_sar(std::span<const double> highs, std::span<const double> lows,
                              std::span<const double> closes, double accel_init = 0.2,
                              double accel_max = 0.2);

/// True range smoothed with Wilder's recursion, first value a simple mean of
/// the first n true ranges.
IndicatorSeries atr(std::span<const double> highs, std::span<const double> lows,
                    std::span<const double> closes, std::size_t n);

/// Wilder ADX; DX is defined as 0 when +DI + -DI == 0. First value appears at
/// index 2n-1 as the mean of the first n DX values.
IndicatorSeries adx(std::span<const double> highs, std::span<const double> lows,
                    std::span<const double> closes, std::size_t n);

struct Bbands {
    IndicatorSeries upper;
    IndicatorSeries middle;
    IndicatorSeries lower;
};

/// middle = sma(n); bands at +/- k rolling population standard deviations.
Bbands bbands(std::span<const double> closes, std::size_t n, double k);

/// Trailing-window Pearson correlation clamped to [-1, 1]; windows containing
/// NaN or zero variance in either input are undefined.
IndicatorSeries rolling_corr(std::span<const double> a, std::span<const double> b, std::size_t n);

/// Shift a sequence forward by `k` days, filling the head with NaN (the
/// dataframe `shift(k)` used throughout feature construction).
std::vector<double> shift(std::span<const double> xs, std::size_t k);

} // namespace qlab::ind
