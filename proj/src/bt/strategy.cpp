#include "qlab/bt/strategy.hpp"

#include <cmath>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"
#include "qlab/ind/indicators.hpp"

namespace qlab::bt {

HoldReturn hold_return(const ValidatedSeries& series) {
    const auto& candles = series.series().candles;
    const double start = candles.front().close;
    const double final = candles.back().close;
    HoldReturn out;
    out.raw_pct = (final - start) / start * 100.0;
    out.rounded_pct = core::round_half_even(out.raw_pct);
    return out;
}

SignalSeries sma_reversion_signals(const ValidatedSeries& series, std::size_t n, double r,
                                   BandMode band) {
    if (r < 0.0 || r > 100.0) {
        throw Error(ErrorCode::DomainError, "threshold r must be in [0, 100]");
    }
    const auto closes = series.series().closes();
    const auto avg = ind::sma(closes, n, /*lagged=*/true);

    SignalSeries out;
    out.entries.reserve(closes.size());
    for (std::size_t i = 0; i < closes.size(); ++i) {
        int signal = 0;
        if (avg.defined(i)) {
            double upper, lower;
            if (band == BandMode::multiplicative) {
                const double range = 1.0 + r / 100.0;
                upper = avg.values[i] * range;
                lower = avg.values[i] / range;
            } else {
                upper = avg.values[i] * (1.0 + r / 100.0);
                lower = avg.values[i] * (1.0 - r / 100.0);
            }
            if (closes[i] > upper) signal = -1;
            else if (closes[i] < lower) signal = 1;
        }
        out.entries.emplace_back(series.series().candles[i].date, signal);
    }
    return out;
}

std::vector<int> random_signal_values(std::size_t length, core::Rng& rng) {
    std::vector<int> out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        const auto draw = rng.uniform_int(1, 9);
        if (draw > 6) out.push_back(1);
        else if (draw < 4) out.push_back(-1);
        else out.push_back(0);
    }
    return out;
}

SignalSeries random_signals(const ValidatedSeries& series, core::Rng& rng) {
    const auto values = random_signal_values(series.size(), rng);
    SignalSeries out;
    out.entries.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.entries.emplace_back(series.series().candles[i].date, values[i]);
    }
    return out;
}

BacktestResult signal_pnl(const ValidatedSeries& series, const SignalSeries& signals,
                          SignalTiming timing) {
    const auto& candles = series.series().candles;
    if (signals.size() != candles.size()) {
        throw Error(ErrorCode::AlignmentError,
                    "signals " + std::to_string(signals.size()) + " vs series " +
                        std::to_string(candles.size()));
    }
    for (std::size_t i = 0; i < candles.size(); ++i) {
        if (signals.entries[i].first != candles[i].date) {
            throw Error(ErrorCode::AlignmentError,
                        "signal date " + signals.entries[i].first.to_iso() + " vs candle " +
                            candles[i].date.to_iso());
        }
    }

    BacktestResult out;
    out.symbol = series.symbol();
    out.day_returns.assign(candles.size(), 0.0);
    for (std::size_t i = 1; i < candles.size(); ++i) {
        const double prev = candles[i - 1].close;
        const double change = (candles[i].close - prev) / prev * 100.0;
        const int signal = timing == SignalTiming::same_day ? signals.entries[i].second
                                                         : signals.entries[i - 1].second;
        out.day_returns[i] = change * static_cast<double>(signal);
        out.total_return_pct += out.day_returns[i];
    }
    out.rounded_return_pct = core::round_half_even(out.total_return_pct);
    return out;
}

} // namespace qlab::bt
