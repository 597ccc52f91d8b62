#include "qlab/ml/features.hpp"

#include <cmath>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"
#include "qlab/ind/indicators.hpp"

namespace qlab::ml {

using core::kNaN;

FeatureDataset build_features(const data::ValidatedSeries& series, std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::DomainError, "indicator window n must be >= 2");
    }

    // The zero-volume screen comes before anything else.
    std::vector<data::Candle> candles;
    for (const auto& c : series.series().candles) {
        if (c.volume != 0.0) candles.push_back(c);
    }
    const std::size_t len = candles.size();
    if (len <= 2 * n + 2) {
        throw Error(ErrorCode::TooShort, series.symbol() + ": " + std::to_string(len) +
                                             " non-zero-volume rows for window " + std::to_string(n));
    }

    std::vector<double> open(len), high(len), low(len), close(len);
    std::vector<core::Date> dates(len);
    for (std::size_t i = 0; i < len; ++i) {
        open[i] = candles[i].open;
        high[i] = candles[i].high;
        low[i] = candles[i].low;
        close[i] = candles[i].close;
        dates[i] = candles[i].date;
    }

    // Indicator columns are causal, so computing on the raw series and
    // shifting by one day equals running them on day-lagged inputs.
    const auto rsi_col = ind::shift(ind::rsi(close, n).values, 1);
    const auto sma_lagged = ind::sma(close, n, /*lagged=*/true).values;
    const auto corr_col = ind::rolling_corr(ind::shift(close, 1), ind::shift(sma_lagged, 1), n).values;
    const auto sar_col = ind::shift(ind::parabolic_sar(high, low, close, 0.2, 0.2).values, 1);
    const auto adx_col = ind::shift(ind::adx(high, low, close, n).values, 1);
    const auto atr_col = ind::shift(ind::atr(high, low, close, n).values, 1);
    const auto prev_high = ind::shift(high, 1);
    const auto prev_low = ind::shift(low, 1);
    const auto prev_close = ind::shift(close, 1);
    const auto prev_open = ind::shift(open, 1);
    const auto close_2back = ind::shift(close, 2);

    std::vector<double> ret(len, kNaN);
    for (std::size_t i = 0; i + 1 < len; ++i) {
        ret[i] = (open[i + 1] - open[i]) / open[i];
    }
    std::vector<std::vector<double>> ret_lags;
    for (std::size_t lag = 1; lag < n; ++lag) ret_lags.push_back(ind::shift(ret, lag));

    FeatureDataset out;
    out.symbol = series.symbol();
    out.feature_names = {"Open", "RSI", "SMA", "Corr", "SAR", "ADX", "ATR",
                         "PH",   "PL",  "PC",  "O-0",  "O-C"};
    for (std::size_t lag = 1; lag < n; ++lag) out.feature_names.push_back("r" + std::to_string(lag));

    for (std::size_t i = 0; i < len; ++i) {
        FeatureRow row;
        row.date = dates[i];
        row.x = {open[i],
                 rsi_col[i],
                 sma_lagged[i],
                 corr_col[i],
                 sar_col[i],
                 adx_col[i],
                 atr_col[i],
                 prev_high[i],
                 prev_low[i],
                 prev_close[i],
                 open[i] - prev_open[i],
                 open[i] - close_2back[i]};
        for (const auto& lagged : ret_lags) row.x.push_back(lagged[i]);
        row.ret = ret[i];

        bool complete = core::defined(row.ret);
        for (double v : row.x) {
            if (!core::defined(v)) {
                complete = false;
                break;
            }
        }
        if (complete) out.rows.push_back(std::move(row));
    }

    if (out.rows.size() < 50) {
        throw Error(ErrorCode::TooShort,
                    series.symbol() + ": only " + std::to_string(out.rows.size()) + " usable rows");
    }

    out.split_index = static_cast<std::size_t>(0.8 * static_cast<double>(out.rows.size()));

    std::vector<double> train_rets;
    train_rets.reserve(out.split_index);
    for (std::size_t i = 0; i < out.split_index; ++i) train_rets.push_back(out.rows[i].ret);
    out.train_q66 = core::quantile_linear(train_rets, 0.66);
    out.train_q34 = core::quantile_linear(train_rets, 0.34);

    for (auto& row : out.rows) {
        if (row.ret > out.train_q66) row.label = 1;
        else if (row.ret < out.train_q34) row.label = -1;
        else row.label = 0;
    }
    return out;
}

} // namespace qlab::ml
