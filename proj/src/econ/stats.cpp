#include "qlab/econ/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::econ {

CorrelationResult pearson_corr(const data::ReturnSeries& a, const data::ReturnSeries& b) {
    std::map<std::int32_t, double> b_by_date;
    for (const auto& [date, value] : b.entries) b_by_date[date.serial()] = value;

    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [date, value] : a.entries) {
        auto it = b_by_date.find(date.serial());
        if (it != b_by_date.end()) {
            xs.push_back(value);
            ys.push_back(it->second);
        }
    }

    CorrelationResult out;
    out.symbol_a = a.symbol;
    out.symbol_b = b.symbol;
    out.n_overlap = xs.size();
    if (xs.size() < 2) {
        throw Error(ErrorCode::InsufficientOverlap,
                    a.symbol + "/" + b.symbol + " share " + std::to_string(xs.size()) + " dates");
    }

    const double mean_x = core::mean(xs);
    const double mean_y = core::mean(ys);
    double cov = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x == 0.0 || var_y == 0.0) {
        throw Error(ErrorCode::ZeroVariance, "constant series on the overlap");
    }
    out.pearson_r = std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
    return out;
}

DistributionStats distribution_stats(std::span<const double> returns) {
    if (returns.size() < 8) {
        throw Error(ErrorCode::TooShort, "distribution stats need n >= 8");
    }

    DistributionStats out;
    out.n = returns.size();
    out.mean = core::mean(returns);

    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : returns) {
        const double d = x - out.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double n = static_cast<double>(out.n);
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0) {
        throw Error(ErrorCode::ZeroVariance, "constant sample");
    }

    out.std_dev = std::sqrt(m2);
    out.skewness = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    out.jarque_bera_stat =
        n / 6.0 * (out.skewness * out.skewness + out.excess_kurtosis * out.excess_kurtosis / 4.0);
    out.jb_p_value = std::exp(-out.jarque_bera_stat / 2.0); // chi2(2) upper tail
    return out;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
    if (bins == 0 || values.empty()) {
        throw Error(ErrorCode::DomainError, "histogram needs values and bins >= 1");
    }
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    double lo = *min_it;
    double hi = *max_it;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    Histogram out;
    out.edges.resize(bins + 1);
    out.counts.assign(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) out.edges[i] = lo + width * static_cast<double>(i);
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - lo) / width);
        if (idx >= bins) idx = bins - 1; // right edge closes the last bin
        ++out.counts[idx];
    }
    return out;
}

} // namespace qlab::econ
