#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlab/core/dates.hpp"

namespace qlab::data {

using core::Date;

struct Candle {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

/// Dated OHLCV bars for one symbol, strictly ascending dates, gaps allowed.
struct PriceSeries {
    std::string symbol;
    std::vector<Candle> candles;

    std::size_t size() const { return candles.size(); }
    bool empty() const { return candles.empty(); }

    std::vector<double> closes() const;
    std::vector<double> opens() const;
    std::vector<double> highs() const;
    std::vector<double> lows() const;
    std::vector<double> volumes() const;
    std::vector<Date> dates() const;
};

/// Daily percent changes between consecutive available rows, dated at the
/// later day: (C_t - C_{t-1}) / C_{t-1} * 100.
struct ReturnSeries {
    std::string symbol;
    std::vector<std::pair<Date, double>> entries;

    std::vector<double> values() const;
};

enum class RejectReason { Empty, TooShort, ZeroClose };

struct Rejection {
    RejectReason reason;
    std::size_t actual_len = 0;
    std::size_t required_len = 0;
    std::optional<Date> date; // offending row for ZeroClose
    std::string describe() const;
};

/// A PriceSeries that passed the admission screens; immutable after
/// construction and safe to share across workers.
class ValidatedSeries {
public:
    const PriceSeries& series() const { return series_; }
    const std::string& symbol() const { return series_.symbol; }
    std::size_t size() const { return series_.size(); }
    std::size_t min_len_used() const { return min_len_; }

private:
    friend std::variant<ValidatedSeries, Rejection> validate_series(const PriceSeries&, std::size_t);
    ValidatedSeries(PriceSeries series, std::size_t min_len)
        : series_(std::move(series)), min_len_(min_len) {}

    PriceSeries series_;
    std::size_t min_len_;
};

using ValidationOutcome = std::variant<ValidatedSeries, Rejection>;

/// Admission screens: non-empty, length >= min_len, no close <= 0.
/// min_len defaults in callers: 360 for year-long backtests, 100 for
/// unit-root screening.
ValidationOutcome validate_series(const PriceSeries& series, std::size_t min_len);

/// Inclusive slice [start, end]; start > end is an error, empty result is not.
PriceSeries slice_period(const PriceSeries& series, Date start, Date end);

ReturnSeries daily_returns(const PriceSeries& series);

} // namespace qlab::data
