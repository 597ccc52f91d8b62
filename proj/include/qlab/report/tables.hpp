#pragma once

#include <string>
#include <vector>

#include "qlab/bt/universe.hpp"
#include "qlab/core/dates.hpp"
#include "qlab/econ/adf.hpp"
#include "qlab/ind/indicators.hpp"
#include "qlab/ml/classify.hpp"

namespace qlab::report {

/// One-row TSV shaped like the SMA-vs-hold-vs-random results table;
/// averages are rendered rounded to integers, the percent with two decimals.
std::string render_sma_table(const bt::UniverseComparison& comparison, std::size_t n, double r);

/// One-row TSV shaped like the random-portfolio results table.
std::string render_random_better_table(const bt::UniverseComparison& comparison, std::size_t n_iter,
                                       std::size_t k);

std::string render_per_asset_returns(const std::vector<bt::PerAssetReturns>& rows);

std::string render_adf_table(const econ::UniverseAdf& screen);

/// 3x3 confusion counts with marginals and the accuracy line.
std::string render_confusion(const ml::ConfusionMatrix& matrix);

/// CSV `date,value` with an empty field for undefined warm-up entries.
std::string render_indicator_csv(const std::vector<core::Date>& dates,
                                 const ind::IndicatorSeries& series);

} // namespace qlab::report
