#include "qlab/data/series.hpp"

#include <algorithm>

#include "qlab/core/errors.hpp"

namespace qlab::data {

namespace {

template <typename Getter>
std::vector<double> extract(const std::vector<Candle>& candles, Getter get) {
    std::vector<double> out;
    out.reserve(candles.size());
    for (const auto& c : candles) out.push_back(get(c));
    return out;
}

} // namespace

std::vector<double> PriceSeries::closes() const {
    return extract(candles, [](const Candle& c) { return c.close; });
}
std::vector<double> PriceSeries::opens() const {
    return extract(candles, [](const Candle& c) { return c.open; });
}
std::vector<double> PriceSeries::highs() const {
    return extract(candles, [](const Candle& c) { return c.high; });
}
std::vector<double> PriceSeries::lows() const {
    return extract(candles, [](const Candle& c) { return c.low; });
}
std::vector<double> PriceSeries::volumes() const {
    return extract(candles, [](const Candle& c) { return c.volume; });
}
std::vector<Date> PriceSeries::dates() const {
    std::vector<Date> out;
    out.reserve(candles.size());
    for (const auto& c : candles) out.push_back(c.date);
    return out;
}

std::vector<double> ReturnSeries::values() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& [date, value] : entries) out.push_back(value);
    return out;
}

std::string Rejection::describe() const {
    switch (reason) {
        case RejectReason::Empty:
            return "Empty";
        case RejectReason::TooShort:
            return "TooShort(" + std::to_string(actual_len) + "," + std::to_string(required_len) + ")";
        case RejectReason::ZeroClose:
            return "ZeroClose(" + (date ? date->to_iso() : std::string("?")) + ")";
    }
    return "?";
}

ValidationOutcome validate_series(const PriceSeries& series, std::size_t min_len) {
    if (series.empty()) {
        return Rejection{RejectReason::Empty, 0, min_len, std::nullopt};
    }
    if (series.size() < min_len) {
        return Rejection{RejectReason::TooShort, series.size(), min_len, std::nullopt};
    }
    for (const auto& c : series.candles) {
        if (c.close <= 0.0) {
            return Rejection{RejectReason::ZeroClose, series.size(), min_len, c.date};
        }
    }
    return ValidatedSeries(series, min_len);
}

PriceSeries slice_period(const PriceSeries& series, Date start, Date end) {
    if (start > end) {
        throw Error(ErrorCode::InvalidRange,
                    series.symbol + " slice " + start.to_iso() + " > " + end.to_iso());
    }
    PriceSeries out;
    out.symbol = series.symbol;
    for (const auto& c : series.candles) {
        if (c.date >= start && c.date <= end) out.candles.push_back(c);
    }
    return out;
}

ReturnSeries daily_returns(const PriceSeries& series) {
    if (series.size() < 2) {
        throw Error(ErrorCode::TooShort, series.symbol + " needs >= 2 candles for returns");
    }
    ReturnSeries out;
    out.symbol = series.symbol;
    out.entries.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double prev = series.candles[i - 1].close;
        if (prev == 0.0) {
            throw Error(ErrorCode::ZeroClose, series.symbol + " zero close at " +
                                                  series.candles[i - 1].date.to_iso());
        }
        const double change = (series.candles[i].close - prev) / prev * 100.0;
        out.entries.emplace_back(series.candles[i].date, change);
    }
    return out;
}

} // namespace qlab::data
