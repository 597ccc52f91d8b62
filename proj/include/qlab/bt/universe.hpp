#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlab/bt/strategy.hpp"
#include "qlab/core/parallel.hpp"
#include "qlab/core/rng.hpp"

namespace qlab::bt {

struct StrategyAverage {
    std::string strategy;
    double mean_return_pct = 0.0; // full precision; report layer rounds
};

struct UniverseComparison {
    std::size_t universe_size = 0; // assets attempted
    std::size_t valid_assets = 0;  // assets passing validation
    std::vector<StrategyAverage> averages;
    double pct_better = 0.0; // rounded before the threshold comparison
    bool verdict = false;
    std::vector<std::pair<std::string, std::string>> rejections; // symbol -> reason
};

struct PerAssetReturns {
    std::string symbol;
    double hold = 0.0;
    double sma = 0.0;
    double random = 0.0;
};

struct SmaExperimentConfig {
    std::size_t n = 50;
    double r = 20.0;
    std::size_t min_len = 360;
    BandMode band = BandMode::multiplicative;
    SignalTiming timing = SignalTiming::same_day;
};

/// Per asset, compares the SMA mean-reversion return against hold and a
/// seeded random strategy; verdict is true when the SMA strictly beats both
/// for at least 50% of valid assets. Random streams are split per asset, so
/// results depend only on (seed, universe order), never on the worker count.
UniverseComparison is_sma_better(const std::vector<data::PriceSeries>& universe,
                                 const SmaExperimentConfig& config, const core::RngFactory& rng,
                                 core::Exec exec = core::Exec::parallel,
                                 std::vector<PerAssetReturns>* per_asset = nullptr);

/// k independent uniform draws, with replacement by default.
std::vector<std::string> random_portfolio(const std::vector<std::string>& symbols, std::size_t k,
                                          core::Rng& rng, bool with_replacement = true);

struct RandomBetterConfig {
    std::size_t n_iter = 20;
    std::size_t k = 30;
    std::size_t min_len = 360;
    bool with_replacement = true;
};

/// Draws n_iter random k-portfolios and reports the rounded share whose mean
/// hold return strictly exceeds the universe mean; verdict true iff >= 51%.
UniverseComparison is_random_better(const std::vector<data::PriceSeries>& universe,
                                    const RandomBetterConfig& config, const core::RngFactory& rng,
                                    core::Exec exec = core::Exec::parallel);

} // namespace qlab::bt
