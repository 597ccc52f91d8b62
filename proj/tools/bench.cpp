// Compares the serial reference path with the OpenMP path for the
// data-parallel kernels and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qlab/core/parallel.hpp"
#include "qlab/core/rng.hpp"
#include "qlab/data/series.hpp"
#include "qlab/econ/adf.hpp"
#include "qlab/models/stochastic.hpp"
#include "qlab/nlp/sentiment.hpp"

using namespace qlab;

namespace {

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

struct BenchRow {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool identical = false;
};

void print(const BenchRow& row) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", row.name.c_str(), row.serial_ms,
                row.parallel_ms, row.parallel_ms > 0 ? row.serial_ms / row.parallel_ms : 0.0,
                row.identical ? "identical" : "MISMATCH");
}

data::PriceSeries synthetic_walk(std::uint64_t seed, std::size_t days) {
    core::Rng rng(seed);
    data::PriceSeries series;
    series.symbol = "W" + std::to_string(seed);
    double level = 100.0;
    for (std::size_t i = 0; i < days; ++i) {
        level += rng.normal();
        if (level < 1.0) level = 1.0;
        data::Candle candle;
        candle.date = core::Date(2015, 1, 1) + static_cast<int>(i);
        candle.open = candle.high = candle.low = candle.close = level;
        candle.volume = 1.0;
        series.candles.push_back(candle);
    }
    return series;
}

} // namespace

int main() {
    std::printf("workers available: %d\n", core::worker_count());
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

    {
        BenchRow row{"gbm terminal ensemble", 0, 0, false};
        models::GbmParams params{100.0, 0.05, 0.2};
        core::RngFactory rng(7);
        auto start = std::chrono::steady_clock::now();
        const auto serial = models::gbm_terminal_ensemble(params, 1.0 / 365, 365, 50000, rng,
                                                          core::Exec::serial);
        row.serial_ms = elapsed_ms(start);
        start = std::chrono::steady_clock::now();
        const auto parallel = models::gbm_terminal_ensemble(params, 1.0 / 365, 365, 50000, rng,
                                                            core::Exec::parallel);
        row.parallel_ms = elapsed_ms(start);
        row.identical = serial == parallel;
        print(row);
    }

    {
        BenchRow row{"adf universe screening", 0, 0, false};
        std::vector<data::PriceSeries> universe;
        for (std::uint64_t i = 0; i < 48; ++i) universe.push_back(synthetic_walk(i, 600));
        auto start = std::chrono::steady_clock::now();
        const auto serial = econ::random_walk_share(universe, 100, {}, core::Exec::serial);
        row.serial_ms = elapsed_ms(start);
        start = std::chrono::steady_clock::now();
        const auto parallel = econ::random_walk_share(universe, 100, {}, core::Exec::parallel);
        row.parallel_ms = elapsed_ms(start);
        row.identical = serial.random_walk_share_pct == parallel.random_walk_share_pct;
        for (std::size_t i = 0; row.identical && i < serial.entries.size(); ++i) {
            row.identical = serial.entries[i].result.p_value == parallel.entries[i].result.p_value;
        }
        print(row);
    }

    {
        BenchRow row{"sentiment batch scoring", 0, 0, false};
        const auto lexicon = nlp::Lexicon::from_pairs(
            {{"good", 0.6}, {"bad", -0.6}, {"great", 0.8}, {"awful", -0.9}, {"fine", 0.2}});
        nlp::TextBatch batch;
        batch.keyword = "BTC";
        batch.nb = 500;
        core::Rng rng(11);
        const char* words[] = {"good", "bad", "great", "awful", "fine", "the", "not"};
        for (std::size_t doc = 0; doc < 200000; ++doc) {
            std::string text;
            for (int w = 0; w < 12; ++w) {
                text += words[rng.uniform_int(0, 6)];
                text += ' ';
            }
            batch.texts.push_back(text);
        }
        std::vector<nlp::TextBatch> batches{batch};
        auto start = std::chrono::steady_clock::now();
        const auto serial = nlp::score_batches(batches, lexicon, false, core::Exec::serial);
        row.serial_ms = elapsed_ms(start);
        start = std::chrono::steady_clock::now();
        const auto parallel = nlp::score_batches(batches, lexicon, false, core::Exec::parallel);
        row.parallel_ms = elapsed_ms(start);
        row.identical = serial.total_score == parallel.total_score;
        print(row);
    }

    return 0;
}
