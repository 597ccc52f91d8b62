#include "qlab/econ/adf.hpp"

#include <cmath>
#include <limits>

#include "qlab/core/errors.hpp"
#include "qlab/core/linalg.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::econ {

namespace {

// MacKinnon (1994) response-surface coefficients, constant-only case.
// Small-p polynomial applies at or below tau_star, large-p above it.
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.83;
constexpr double kTauStar = -1.61;
constexpr double kSmallP[3] = {2.1659, 1.4412, 3.8269e-2};
constexpr double kLargeP[4] = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};

struct Design {
    core::Matrix x;
    std::vector<double> y;
};

// Regression rows for dy_t, t in [first_t, n_dy), with p lagged differences.
Design build_design(std::span<const double> levels, std::span<const double> diffs,
                    std::size_t p, std::size_t first_t) {
    const std::size_t n_dy = diffs.size();
    const std::size_t rows = n_dy - first_t;
    Design d;
    d.x = core::Matrix(rows, p + 2);
    d.y.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = first_t + r;
        d.y[r] = diffs[t];
        d.x(r, 0) = 1.0;
        d.x(r, 1) = levels[t]; // y_{t-1}: diffs[t] = levels[t+1] - levels[t]
        for (std::size_t lag = 1; lag <= p; ++lag) {
            d.x(r, 1 + lag) = diffs[t - lag];
        }
    }
    return d;
}

} // namespace

double mackinnon_pvalue_const(double statistic, bool* clamped) {
    if (clamped != nullptr) *clamped = false;
    if (statistic > kTauMax) {
        if (clamped != nullptr) *clamped = true;
        return 0.999;
    }
    if (statistic < kTauMin) {
        if (clamped != nullptr) *clamped = true;
        return 0.001;
    }
    double poly;
    if (statistic <= kTauStar) {
        poly = kSmallP[0] + kSmallP[1] * statistic + kSmallP[2] * statistic * statistic;
    } else {
        poly = kLargeP[0] + kLargeP[1] * statistic + kLargeP[2] * statistic * statistic +
               kLargeP[3] * statistic * statistic * statistic;
    }
    return core::norm_cdf(poly);
}

AdfResult adf_test(std::span<const double> closes, const AdfOptions& options) {
    const std::size_t n = closes.size();
    if (n < 4) {
        throw Error(ErrorCode::TooShort, "adf needs more data, got " + std::to_string(n));
    }

    std::vector<double> levels(closes.begin(), closes.end());
    if (options.use_log) {
        for (auto& v : levels) {
            if (v <= 0.0) {
                throw Error(ErrorCode::DomainError, "log transform needs positive prices");
            }
            v = std::log(v);
        }
    }

    std::vector<double> diffs(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) diffs[i] = levels[i + 1] - levels[i];

    std::size_t max_lag = options.max_lag.value_or(static_cast<std::size_t>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25))));
    if (max_lag + 1 >= diffs.size()) max_lag = diffs.size() > 1 ? diffs.size() - 2 : 0;
    if (diffs.size() - max_lag < 25) {
        throw Error(ErrorCode::TooShort,
                    "adf: " + std::to_string(diffs.size() - max_lag) + " usable rows after lagging");
    }

    // AIC lag selection over the common sample starting at max_lag.
    std::size_t best_p = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    const double m_common = static_cast<double>(diffs.size() - max_lag);
    for (std::size_t p = 0; p <= max_lag; ++p) {
        const auto design = build_design(levels, diffs, p, max_lag);
        const auto fit = core::ols(design.x, design.y);
        if (fit.rss <= 0.0) {
            throw Error(ErrorCode::SingularRegression, "zero residual variance in lag search");
        }
        const double aic = m_common * std::log(fit.rss / m_common) + 2.0 * static_cast<double>(p + 2);
        if (aic < best_aic) {
            best_aic = aic;
            best_p = p;
        }
    }

    // Full-sample refit at the chosen lag.
    const auto design = build_design(levels, diffs, best_p, best_p);
    const auto fit = core::ols(design.x, design.y);
    if (fit.std_err[1] <= 0.0 || fit.rss <= 0.0) {
        throw Error(ErrorCode::SingularRegression, "degenerate final regression");
    }

    AdfResult out;
    out.lags_used = best_p;
    out.n_obs = design.y.size();
    out.test_statistic = fit.coef[1] / fit.std_err[1];
    out.p_value = mackinnon_pvalue_const(out.test_statistic, &out.p_value_clamped);
    out.reject_at_5pct = out.p_value <= 0.05;
    return out;
}

UniverseAdf random_walk_share(const std::vector<data::PriceSeries>& universe, std::size_t min_len,
                              const AdfOptions& options, core::Exec exec) {
    UniverseAdf out;
    out.entries = core::parallel_map<UniverseAdfEntry>(exec, universe.size(), [&](std::size_t i) {
        UniverseAdfEntry entry;
        entry.symbol = universe[i].symbol;
        auto validated = data::validate_series(universe[i], min_len);
        if (auto* rejection = std::get_if<data::Rejection>(&validated)) {
            entry.rejection = rejection->describe();
            return entry;
        }
        try {
            entry.result = adf_test(universe[i].closes(), options);
            entry.ok = true;
        } catch (const Error& e) {
            entry.rejection = e.what();
        }
        return entry;
    });

    std::size_t random_walks = 0;
    for (const auto& entry : out.entries) {
        if (!entry.ok) continue;
        ++out.valid_assets;
        if (entry.result.p_value > 0.05) ++random_walks;
    }
    if (out.valid_assets == 0) {
        throw Error(ErrorCode::EmptyUniverse, "no asset passed validation");
    }
    out.random_walk_share_pct =
        static_cast<double>(random_walks) / static_cast<double>(out.valid_assets) * 100.0;
    return out;
}

} // namespace qlab::econ
