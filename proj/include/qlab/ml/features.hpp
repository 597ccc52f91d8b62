#pragma once

#include <string>
#include <vector>

#include "qlab/core/dates.hpp"
#include "qlab/data/series.hpp"

namespace qlab::ml {

struct FeatureRow {
    core::Date date;
    std::vector<double> x;
    double ret = 0.0; // next-day open-to-open relative change (the target)
    int label = 0;    // tercile label from train-split quantiles
};

struct FeatureDataset {
    std::string symbol;
    std::vector<std::string> feature_names;
    std::vector<FeatureRow> rows; // time-ordered; no undefined values
    std::size_t split_index = 0;  // first test row, floor(0.8 * rows)
    double train_q66 = 0.0;       // label thresholds, train rows only
    double train_q34 = 0.0;
};

/// Engineered matrix: current open, yesterday's OHLC context, one-day-lagged
/// RSI/SMA/rolling-corr/SAR/ADX/ATR with window n, open differences, and n-1
/// lagged values of the target return. Zero-volume rows are removed first;
/// warm-up rows with any undefined value are dropped; labels are +1/-1 when
/// the target exceeds the train 66th / falls below the train 34th percentile,
/// else 0.
FeatureDataset build_features(const data::ValidatedSeries& series, std::size_t n);

} // namespace qlab::ml
