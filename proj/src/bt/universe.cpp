#include "qlab/bt/universe.hpp"

#include <cmath>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::bt {

namespace {

struct AssetOutcome {
    bool valid = false;
    std::string symbol;
    std::string rejection;
    PerAssetReturns returns;
};

std::vector<AssetOutcome> run_per_asset(const std::vector<data::PriceSeries>& universe,
                                        const SmaExperimentConfig& config,
                                        const core::RngFactory& rng, core::Exec exec) {
    return core::parallel_map<AssetOutcome>(exec, universe.size(), [&](std::size_t i) {
        AssetOutcome outcome;
        outcome.symbol = universe[i].symbol;
        auto validated = data::validate_series(universe[i], config.min_len);
        if (auto* rejection = std::get_if<data::Rejection>(&validated)) {
            outcome.rejection = rejection->describe();
            return outcome;
        }
        const auto& series = std::get<data::ValidatedSeries>(validated);
        outcome.valid = true;
        outcome.returns.symbol = outcome.symbol;
        outcome.returns.hold = hold_return(series).raw_pct;
        const auto signals = sma_reversion_signals(series, config.n, config.r, config.band);
        outcome.returns.sma = signal_pnl(series, signals, config.timing).total_return_pct;
        // one stream per asset (by universe position) per strategy
        auto stream = rng.stream("backtest.random_strategy", i);
        const auto random = random_signals(series, stream);
        outcome.returns.random = signal_pnl(series, random, config.timing).total_return_pct;
        return outcome;
    });
}

} // namespace

UniverseComparison is_sma_better(const std::vector<data::PriceSeries>& universe,
                                 const SmaExperimentConfig& config, const core::RngFactory& rng,
                                 core::Exec exec, std::vector<PerAssetReturns>* per_asset) {
    UniverseComparison out;
    out.universe_size = universe.size();

    const auto outcomes = run_per_asset(universe, config, rng, exec);

    double sum_hold = 0.0;
    double sum_sma = 0.0;
    double sum_random = 0.0;
    std::size_t better = 0;
    for (const auto& outcome : outcomes) {
        if (!outcome.valid) {
            out.rejections.emplace_back(outcome.symbol, outcome.rejection);
            continue;
        }
        ++out.valid_assets;
        sum_hold += outcome.returns.hold;
        sum_sma += outcome.returns.sma;
        sum_random += outcome.returns.random;
        if (outcome.returns.sma > outcome.returns.hold && outcome.returns.sma > outcome.returns.random) {
            ++better;
        }
        if (per_asset != nullptr) per_asset->push_back(outcome.returns);
    }
    if (out.valid_assets == 0) {
        throw Error(ErrorCode::EmptyUniverse, "no asset passed validation");
    }

    const double n = static_cast<double>(out.valid_assets);
    out.averages = {{"hold", sum_hold / n}, {"sma", sum_sma / n}, {"random", sum_random / n}};
    out.pct_better = core::round_half_even(static_cast<double>(better) / n * 100.0);
    out.verdict = out.pct_better >= 50.0;
    return out;
}

std::vector<std::string> random_portfolio(const std::vector<std::string>& symbols, std::size_t k,
                                          core::Rng& rng, bool with_replacement) {
    if (symbols.empty()) {
        throw Error(ErrorCode::EmptyUniverse, "random_portfolio on empty symbol list");
    }
    if (k == 0) {
        throw Error(ErrorCode::DomainError, "portfolio size k must be >= 1");
    }
    std::vector<std::string> portfolio;
    portfolio.reserve(k);
    if (with_replacement) {
        for (std::size_t i = 0; i < k; ++i) {
            const auto idx = rng.uniform_int(0, static_cast<std::int64_t>(symbols.size()) - 1);
            portfolio.push_back(symbols[static_cast<std::size_t>(idx)]);
        }
        return portfolio;
    }
    if (k > symbols.size()) {
        throw Error(ErrorCode::DomainError, "k exceeds universe without replacement");
    }
    std::vector<std::size_t> order(symbols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(order.size()) - 1));
        std::swap(order[i], order[j]);
        portfolio.push_back(symbols[order[i]]);
    }
    return portfolio;
}

UniverseComparison is_random_better(const std::vector<data::PriceSeries>& universe,
                                    const RandomBetterConfig& config, const core::RngFactory& rng,
                                    core::Exec exec) {
    if (config.n_iter == 0 || config.k == 0) {
        throw Error(ErrorCode::DomainError, "n_iter and k must be >= 1");
    }

    UniverseComparison out;
    out.universe_size = universe.size();

    struct HoldOutcome {
        bool valid = false;
        std::string symbol;
        std::string rejection;
        double hold = 0.0;
    };
    const auto outcomes = core::parallel_map<HoldOutcome>(exec, universe.size(), [&](std::size_t i) {
        HoldOutcome outcome;
        outcome.symbol = universe[i].symbol;
        auto validated = data::validate_series(universe[i], config.min_len);
        if (auto* rejection = std::get_if<data::Rejection>(&validated)) {
            outcome.rejection = rejection->describe();
            return outcome;
        }
        outcome.valid = true;
        outcome.hold = hold_return(std::get<data::ValidatedSeries>(validated)).raw_pct;
        return outcome;
    });

    std::vector<std::string> valid_symbols;
    std::vector<double> holds;
    for (const auto& outcome : outcomes) {
        if (!outcome.valid) {
            out.rejections.emplace_back(outcome.symbol, outcome.rejection);
            continue;
        }
        valid_symbols.push_back(outcome.symbol);
        holds.push_back(outcome.hold);
    }
    out.valid_assets = valid_symbols.size();
    if (valid_symbols.empty()) {
        throw Error(ErrorCode::EmptyUniverse, "no asset passed validation");
    }

    const double baseline = core::mean(holds);

    // Portfolios are drawn from the valid assets so every portfolio mean is
    // well defined; one substream per iteration keeps the loop parallelizable.
    const auto higher_flags = core::parallel_map<int>(exec, config.n_iter, [&](std::size_t iter) {
        auto stream = rng.stream("randombetter.portfolio", iter);
        double sum = 0.0;
        if (config.with_replacement) {
            for (std::size_t j = 0; j < config.k; ++j) {
                const auto idx =
                    stream.uniform_int(0, static_cast<std::int64_t>(valid_symbols.size()) - 1);
                sum += holds[static_cast<std::size_t>(idx)];
            }
        } else {
            const auto picks = random_portfolio(valid_symbols, config.k, stream, false);
            for (const auto& symbol : picks) {
                for (std::size_t s = 0; s < valid_symbols.size(); ++s) {
                    if (valid_symbols[s] == symbol) {
                        sum += holds[s];
                        break;
                    }
                }
            }
        }
        const double portfolio_mean = sum / static_cast<double>(config.k);
        return portfolio_mean > baseline ? 1 : 0;
    });

    std::size_t higher = 0;
    for (int flag : higher_flags) higher += static_cast<std::size_t>(flag);

    out.averages = {{"hold", baseline}};
    out.pct_better =
        core::round_half_even(static_cast<double>(higher) / static_cast<double>(config.n_iter) * 100.0);
    out.verdict = out.pct_better >= 51.0;
    return out;
}

} // namespace qlab::bt
