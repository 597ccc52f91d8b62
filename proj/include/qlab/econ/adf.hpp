#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlab/core/parallel.hpp"
#include "qlab/data/series.hpp"

namespace qlab::econ {

struct AdfResult {
    double test_statistic = 0.0;
    double p_value = 1.0;
    std::size_t lags_used = 0;
    std::size_t n_obs = 0; // regression observations after differencing and lagging
    bool reject_at_5pct = false;
    bool p_value_clamped = false; // statistic fell outside the tabulated range
};

struct AdfOptions {
    std::optional<std::size_t> max_lag; // default: Schwert floor(12*(n/100)^(1/4))
    bool use_log = false;               // levels by default, as the screening pipeline does
};

/// Augmented Dickey-Fuller regression with constant, no trend:
///   dy_t = alpha + gamma*y_{t-1} + sum_i beta_i*dy_{t-i} + eps_t.
/// Lag order chosen by AIC over a common sample, statistic is the t-ratio of
/// gamma, p-value from the MacKinnon response surface (constant-only case),
/// clamped to [0.001, 0.999] with a flag outside the tabulated range.
AdfResult adf_test(std::span<const double> closes, const AdfOptions& options = {});

/// MacKinnon approximate p-value for the constant-only case; exposed for the
/// calibration tests.
double mackinnon_pvalue_const(double statistic, bool* clamped = nullptr);

struct UniverseAdfEntry {
    std::string symbol;
    bool ok = false;
    AdfResult result;
    std::string rejection; // validation or regression failure
};

struct UniverseAdf {
    std::vector<UniverseAdfEntry> entries;
    std::size_t valid_assets = 0;
    double random_walk_share_pct = 0.0; // % of valid assets with p > 0.05
};

/// Unit-root screening of a universe: percentage of valid assets for which
/// the null (non-stationarity) is not rejected at the 5% level.
UniverseAdf random_walk_share(const std::vector<data::PriceSeries>& universe,
                              std::size_t min_len = 100, const AdfOptions& options = {},
                              core::Exec exec = core::Exec::parallel);

} // namespace qlab::econ
