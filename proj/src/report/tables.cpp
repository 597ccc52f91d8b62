#include "qlab/report/tables.hpp"

#include <sstream>

#include "qlab/core/numeric.hpp"

namespace qlab::report {

namespace {

std::string rounded_int(double value) {
    return std::to_string(static_cast<long long>(core::round_half_even(value)));
}

double strategy_mean(const bt::UniverseComparison& comparison, const std::string& name) {
    for (const auto& entry : comparison.averages) {
        if (entry.strategy == name) return entry.mean_return_pct;
    }
    return 0.0;
}

} // namespace

std::string render_sma_table(const bt::UniverseComparison& comparison, std::size_t n, double r) {
    std::ostringstream out;
    out << "universe\tvalid\tR_hold\tR_sma\tR_random\tn\tr\tpct_better\tresult\n";
    out << comparison.universe_size << '\t' << comparison.valid_assets << '\t'
        << rounded_int(strategy_mean(comparison, "hold")) << '\t'
        << rounded_int(strategy_mean(comparison, "sma")) << '\t'
        << rounded_int(strategy_mean(comparison, "random")) << '\t' << n << '\t'
        << core::repr_double(r) << '\t' << core::format_fixed(comparison.pct_better, 2) << '\t'
        << (comparison.verdict ? "True" : "False") << '\n';
    return out.str();
}

std::string render_random_better_table(const bt::UniverseComparison& comparison, std::size_t n_iter,
                                       std::size_t k) {
    std::ostringstream out;
    out << "universe\tvalid\tR_hold\tn_iter\tk\tpct_better\tresult\n";
    out << comparison.universe_size << '\t' << comparison.valid_assets << '\t'
        << rounded_int(strategy_mean(comparison, "hold")) << '\t' << n_iter << '\t' << k << '\t'
        << core::format_fixed(comparison.pct_better, 2) << '\t'
        << (comparison.verdict ? "True" : "False") << '\n';
    return out.str();
}

std::string render_per_asset_returns(const std::vector<bt::PerAssetReturns>& rows) {
    std::ostringstream out;
    out << "symbol\thold\tsma\trandom\n";
    for (const auto& row : rows) {
        out << row.symbol << '\t' << rounded_int(row.hold) << '\t' << rounded_int(row.sma) << '\t'
            << rounded_int(row.random) << '\n';
    }
    return out.str();
}

std::string render_adf_table(const econ::UniverseAdf& screen) {
    std::ostringstream out;
    out << "symbol\tstatus\tstatistic\tp_value\tlags\tn_obs\treject_5pct\n";
    for (const auto& entry : screen.entries) {
        out << entry.symbol << '\t';
        if (!entry.ok) {
            out << entry.rejection << "\t\t\t\t\t\n";
            continue;
        }
        out << "ok\t" << core::format_fixed(entry.result.test_statistic, 4) << '\t'
            << core::format_fixed(entry.result.p_value, 4) << '\t' << entry.result.lags_used << '\t'
            << entry.result.n_obs << '\t' << (entry.result.reject_at_5pct ? "True" : "False") << '\n';
    }
    out << "# random_walk_share_pct=" << core::format_fixed(screen.random_walk_share_pct, 2) << '\n';
    return out.str();
}

std::string render_confusion(const ml::ConfusionMatrix& matrix) {
    std::ostringstream out;
    out << "true\\pred\t-1\t0\t+1\ttotal\n";
    for (int truth : {-1, 0, 1}) {
        out << truth << '\t';
        const auto& row = matrix.counts[ml::ConfusionMatrix::index_of(truth)];
        out << row[0] << '\t' << row[1] << '\t' << row[2] << '\t' << matrix.row_sum(truth) << '\n';
    }
    out << "total\t";
    std::size_t columns[3] = {0, 0, 0};
    for (const auto& row : matrix.counts) {
        for (std::size_t c = 0; c < 3; ++c) columns[c] += row[c];
    }
    out << columns[0] << '\t' << columns[1] << '\t' << columns[2] << '\t' << matrix.total() << '\n';
    out << "accuracy\t" << core::format_fixed(matrix.accuracy(), 4) << '\n';
    return out.str();
}

std::string render_indicator_csv(const std::vector<core::Date>& dates,
                                 const ind::IndicatorSeries& series) {
    std::ostringstream out;
    out << "date,value\n";
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out << dates[i].to_iso() << ',';
        if (series.defined(i)) out << core::repr_double(series.values[i]);
        out << '\n';
    }
    return out.str();
}

} // namespace qlab::report
