#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qlab/data/series.hpp"

namespace qlab::data {

/// Loads one symbol from CSV with the exact header
/// `date,open,high,low,close,volume` (ISO dates, '.' decimals, LF or CRLF).
/// Rows are sorted by date; duplicate dates are an error. Loading is
/// permissive about price values; admission screens live in validate_series.
/// The symbol is the file stem.
PriceSeries load_ohlcv(const std::filesystem::path& path);

/// Full-precision writer; load -> save -> load is the identity.
void save_ohlcv(const PriceSeries& series, const std::filesystem::path& path);

/// Loads every *.csv under dir (sorted by filename for deterministic
/// universe order).
std::vector<PriceSeries> load_universe(const std::filesystem::path& dir);

} // namespace qlab::data
