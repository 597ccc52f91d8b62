#pragma once

#include <string>
#include <vector>

#include "qlab/core/rng.hpp"
#include "qlab/data/series.hpp"

namespace qlab::bt {

using data::ValidatedSeries;

/// Daily position signals in {-1, 0, +1} (sell / hold / buy), aligned 1:1 to
/// a validated series' dates.
struct SignalSeries {
    std::vector<std::pair<core::Date, int>> entries;

    std::size_t size() const { return entries.size(); }
};

/// How the day's signal meets the day's return.
/// `same_day` multiplies today's signal by today's change (a known
/// lookahead bias, kept as the default ledger accounting).
/// `causal` applies yesterday's signal to today's change.
enum class SignalTiming { same_day, causal };

/// Band geometry around the moving average: `multiplicative` uses
/// SMA*(1+r/100) and SMA/(1+r/100), `additive` the symmetric SMA*(1 +/- r/100).
enum class BandMode { multiplicative, additive };

struct HoldReturn {
    double raw_pct = 0.0;
    double rounded_pct = 0.0; // reporting-layer value (ties-to-even)
};

/// Point-to-point percent return of buying the first close and selling the
/// last.
HoldReturn hold_return(const ValidatedSeries& series);

/// Mean-reversion signals on the one-day-lagged SMA: sell above the upper
/// band, buy below the lower band, hold inside (and on warm-up days).
SignalSeries sma_reversion_signals(const ValidatedSeries& series, std::size_t n, double r,
                                   BandMode band = BandMode::multiplicative);

/// i.i.d. uniform draws over {1..9}: 7-9 -> buy, 1-3 -> sell, 4-6 -> hold.
/// Deterministic given the stream; each probability is exactly 1/3.
std::vector<int> random_signal_values(std::size_t length, core::Rng& rng);
SignalSeries random_signals(const ValidatedSeries& series, core::Rng& rng);

struct BacktestResult {
    std::string symbol;
    std::string strategy;
    double total_return_pct = 0.0;
    double rounded_return_pct = 0.0;
    std::vector<double> day_returns; // aligned to series dates; day 0 has no change

    /// signed daily-return ledger summed; the first day contributes 0.
};

/// day_return_t = daily percent change_t * signal applied per `timing`;
/// total is the plain sum (not compounded).
BacktestResult signal_pnl(const ValidatedSeries& series, const SignalSeries& signals,
                          SignalTiming timing = SignalTiming::same_day);

} // namespace qlab::bt
