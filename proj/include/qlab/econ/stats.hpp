#pragma once

#include <span>
#include <string>
#include <vector>

#include "qlab/data/series.hpp"

namespace qlab::econ {

struct CorrelationResult {
    std::string symbol_a;
    std::string symbol_b;
    std::size_t n_overlap = 0;
    double pearson_r = 0.0;
};

/// Pearson correlation of two return series aligned by inner join on dates.
CorrelationResult pearson_corr(const data::ReturnSeries& a, const data::ReturnSeries& b);

struct DistributionStats {
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0; // population
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double jarque_bera_stat = 0.0;
    double jb_p_value = 1.0;
};

/// Moment-based diagnostics (population conventions) with the Jarque-Bera
/// normality statistic, JB = n/6*(g1^2 + g2^2/4), p from chi2(2).
DistributionStats distribution_stats(std::span<const double> returns);

inline DistributionStats distribution_stats(const data::ReturnSeries& returns) {
    return distribution_stats(std::span<const double>(returns.values()));
}

struct Histogram {
    std::vector<double> edges;       // bins + 1 edges
    std::vector<std::size_t> counts; // last bin closed on the right
};

Histogram histogram(std::span<const double> values, std::size_t bins);

} // namespace qlab::econ
