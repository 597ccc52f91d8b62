// quantlab: offline market-efficiency experiments on OHLCV flat files.
// Every subcommand writes its artifacts plus a run manifest under --out;
// reruns with identical arguments produce byte-identical output trees.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlab/arima/arima.hpp"
#include "qlab/bt/universe.hpp"
#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"
#include "qlab/core/parallel.hpp"
#include "qlab/core/rng.hpp"
#include "qlab/data/csv.hpp"
#include "qlab/econ/adf.hpp"
#include "qlab/econ/stats.hpp"
#include "qlab/ml/classify.hpp"
#include "qlab/models/stochastic.hpp"
#include "qlab/nlp/sentiment.hpp"
#include "qlab/report/manifest.hpp"
#include "qlab/report/tables.hpp"

namespace fs = std::filesystem;
using namespace qlab;

namespace {

struct CommonOpts {
    std::string out_dir = "out";
    std::uint64_t seed = 42;
    bool serial = false;

    core::Exec exec() const { return serial ? core::Exec::serial : core::Exec::parallel; }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
    }
    out << text;
}

fs::path prepare_out(const CommonOpts& opts) {
    fs::create_directories(opts.out_dir);
    return fs::path(opts.out_dir);
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed = true) {
    cmd->add_option("--out", opts.out_dir, "output directory");
    if (with_seed) cmd->add_option("--seed", opts.seed, "root seed for all random substreams");
    cmd->add_flag("--serial", opts.serial, "run data-parallel kernels on the serial reference path");
    cmd->fallthrough(); // lets --config appear after the subcommand name
}

void stamp_common(report::RunManifest& manifest, const CommonOpts& opts, bool with_seed = true) {
    if (with_seed) manifest.set("seed", static_cast<std::uint64_t>(opts.seed));
    manifest.set("exec", opts.serial ? "serial" : "parallel");
}

std::vector<data::PriceSeries> load_universe_sliced(const std::string& dir,
                                                    const std::optional<std::string>& start,
                                                    const std::optional<std::string>& end,
                                                    report::RunManifest& manifest) {
    auto universe = data::load_universe(dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) manifest.add_input(file);
    if (start || end) {
        const auto lo = start ? core::Date::parse_iso(*start) : core::Date(INT32_MIN);
        const auto hi = end ? core::Date::parse_iso(*end) : core::Date(INT32_MAX);
        for (auto& series : universe) series = data::slice_period(series, lo, hi);
        if (start) manifest.set("start", *start);
        if (end) manifest.set("end", *end);
    }
    return universe;
}

// --- subcommand handlers ---

int run_ingest(const CommonOpts& opts, const std::string& input, std::size_t min_len) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("ingest");
    stamp_common(manifest, opts, false);
    manifest.add_input(input);
    manifest.set("min_len", static_cast<std::uint64_t>(min_len));

    const auto series = data::load_ohlcv(input);
    const auto outcome = data::validate_series(series, min_len);
    int exit_code = 0;
    if (const auto* rejection = std::get_if<data::Rejection>(&outcome)) {
        manifest.add_rejection(series.symbol, rejection->describe());
        write_text(out / "validation.txt", series.symbol + "\trejected\t" + rejection->describe() + "\n");
        exit_code = 1;
    } else {
        write_text(out / "validation.txt",
                   series.symbol + "\taccepted\t" + std::to_string(series.size()) + " rows\n");
        data::save_ohlcv(series, out / (series.symbol + ".normalized.csv"));
    }
    manifest.write(out / "manifest.txt");
    return exit_code;
}

int run_backtest(const CommonOpts& opts, const std::string& universe_dir,
                 const bt::SmaExperimentConfig& config, std::size_t n, double r,
                 const std::optional<std::string>& start, const std::optional<std::string>& end) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("backtest");
    stamp_common(manifest, opts);
    manifest.set("n", static_cast<std::uint64_t>(n));
    manifest.set("r", r);
    manifest.set("min_len", static_cast<std::uint64_t>(config.min_len));
    manifest.set("mode", config.timing == bt::SignalTiming::same_day ? "same-day" : "causal");
    manifest.set("band", config.band == bt::BandMode::multiplicative ? "multiplicative" : "additive");

    const auto universe = load_universe_sliced(universe_dir, start, end, manifest);
    core::RngFactory rng(opts.seed);
    std::vector<bt::PerAssetReturns> per_asset;
    const auto comparison = bt::is_sma_better(universe, config, rng, opts.exec(), &per_asset);
    for (const auto& [symbol, reason] : comparison.rejections) manifest.add_rejection(symbol, reason);

    const auto table = report::render_sma_table(comparison, n, r);
    write_text(out / "backtest.tsv", table);
    write_text(out / "per_asset.tsv", report::render_per_asset_returns(per_asset));
    manifest.write(out / "manifest.txt");
    std::cout << table;
    return 0;
}

int run_randombetter(const CommonOpts& opts, const std::string& universe_dir,
                     const bt::RandomBetterConfig& config, const std::optional<std::string>& start,
                     const std::optional<std::string>& end) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("randombetter");
    stamp_common(manifest, opts);
    manifest.set("n_iter", static_cast<std::uint64_t>(config.n_iter));
    manifest.set("k", static_cast<std::uint64_t>(config.k));
    manifest.set("min_len", static_cast<std::uint64_t>(config.min_len));
    manifest.set("with_replacement", config.with_replacement ? "true" : "false");

    const auto universe = load_universe_sliced(universe_dir, start, end, manifest);
    core::RngFactory rng(opts.seed);
    const auto comparison = bt::is_random_better(universe, config, rng, opts.exec());
    for (const auto& [symbol, reason] : comparison.rejections) manifest.add_rejection(symbol, reason);

    const auto table = report::render_random_better_table(comparison, config.n_iter, config.k);
    write_text(out / "randombetter.tsv", table);
    manifest.write(out / "manifest.txt");
    std::cout << table;
    return 0;
}

int run_adf(const CommonOpts& opts, const std::string& universe_dir, std::size_t min_len,
            bool use_log, std::optional<std::size_t> max_lag) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("adf");
    stamp_common(manifest, opts, false);
    manifest.set("min_len", static_cast<std::uint64_t>(min_len));
    manifest.set("log", use_log ? "true" : "false");
    if (max_lag) manifest.set("max_lag", static_cast<std::uint64_t>(*max_lag));

    const auto universe = load_universe_sliced(universe_dir, std::nullopt, std::nullopt, manifest);
    econ::AdfOptions options;
    options.use_log = use_log;
    options.max_lag = max_lag;
    const auto screen = econ::random_walk_share(universe, min_len, options, opts.exec());
    for (const auto& entry : screen.entries) {
        if (!entry.ok) manifest.add_rejection(entry.symbol, entry.rejection);
    }

    const auto table = report::render_adf_table(screen);
    write_text(out / "adf.tsv", table);
    manifest.write(out / "manifest.txt");
    std::cout << table;
    return 0;
}

int run_correlate(const CommonOpts& opts, const std::string& file_a, const std::string& file_b) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("correlate");
    stamp_common(manifest, opts, false);
    manifest.add_input(file_a);
    manifest.add_input(file_b);

    const auto returns_a = data::daily_returns(data::load_ohlcv(file_a));
    const auto returns_b = data::daily_returns(data::load_ohlcv(file_b));
    const auto result = econ::pearson_corr(returns_a, returns_b);

    std::string table = "symbol_a\tsymbol_b\tn_overlap\tpearson_r\n";
    table += result.symbol_a + "\t" + result.symbol_b + "\t" + std::to_string(result.n_overlap) +
             "\t" + core::format_fixed(result.pearson_r, 6) + "\n";
    write_text(out / "correlate.tsv", table);
    manifest.write(out / "manifest.txt");
    std::cout << table;
    return 0;
}

int run_dist(const CommonOpts& opts, const std::string& input, std::size_t bins) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("dist");
    stamp_common(manifest, opts, false);
    manifest.add_input(input);
    manifest.set("bins", static_cast<std::uint64_t>(bins));

    const auto returns = data::daily_returns(data::load_ohlcv(input));
    const auto values = returns.values();
    const auto stats = econ::distribution_stats(values);
    const auto hist = econ::histogram(values, bins);

    std::string summary;
    summary += "n\t" + std::to_string(stats.n) + "\n";
    summary += "mean\t" + core::format_fixed(stats.mean, 6) + "\n";
    summary += "std\t" + core::format_fixed(stats.std_dev, 6) + "\n";
    summary += "skewness\t" + core::format_fixed(stats.skewness, 6) + "\n";
    summary += "excess_kurtosis\t" + core::format_fixed(stats.excess_kurtosis, 6) + "\n";
    summary += "jarque_bera\t" + core::format_fixed(stats.jarque_bera_stat, 6) + "\n";
    summary += "jb_p_value\t" + core::format_fixed(stats.jb_p_value, 6) + "\n";
    write_text(out / "dist_stats.tsv", summary);

    std::string hist_csv = "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        hist_csv += core::repr_double(hist.edges[i]) + "," + core::repr_double(hist.edges[i + 1]) +
                    "," + std::to_string(hist.counts[i]) + "\n";
    }
    write_text(out / "dist_hist.csv", hist_csv);
    manifest.write(out / "manifest.txt");
    std::cout << summary;
    return 0;
}

int run_classify(const CommonOpts& opts, const std::string& universe_dir, std::size_t n,
                 std::size_t min_len, const std::string& dump_features) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("classify");
    stamp_common(manifest, opts);
    manifest.set("n", static_cast<std::uint64_t>(n));
    manifest.set("min_len", static_cast<std::uint64_t>(min_len));

    const auto universe = load_universe_sliced(universe_dir, std::nullopt, std::nullopt, manifest);
    core::RngFactory rng(opts.seed);
    const auto result = ml::average_accuracy(universe, n, rng, min_len, opts.exec());

    std::string summary = "symbol\tstatus\tC\tgamma\taccuracy\tstrategy_return\n";
    for (const auto& entry : result.entries) {
        if (!entry.ok) {
            summary += entry.symbol + "\t" + entry.error + "\t\t\t\t\n";
            manifest.add_rejection(entry.symbol, entry.error);
            continue;
        }
        summary += entry.symbol + "\tok\t" + core::repr_double(entry.c) + "\t" +
                   core::repr_double(entry.gamma) + "\t" + core::format_fixed(entry.accuracy, 4) +
                   "\t" + core::format_fixed(entry.strategy_return, 6) + "\n";
        write_text(out / (entry.symbol + ".confusion.tsv"), report::render_confusion(entry.confusion));
    }
    summary += "# average_accuracy_pct=" +
               std::to_string(static_cast<long long>(result.average_accuracy_pct)) + "\n";
    write_text(out / "classify.tsv", summary);

    if (!dump_features.empty()) {
        std::string dump;
        for (const auto& series : universe) {
            auto validated = data::validate_series(series, min_len);
            if (std::holds_alternative<data::Rejection>(validated)) continue;
            try {
                const auto dataset = ml::build_features(std::get<data::ValidatedSeries>(validated), n);
                if (dump.empty()) {
                    dump = "symbol,date";
                    for (const auto& name : dataset.feature_names) dump += "," + name;
                    dump += ",Ret,label\n";
                }
                for (const auto& row : dataset.rows) {
                    dump += dataset.symbol + "," + row.date.to_iso();
                    for (double v : row.x) dump += "," + core::repr_double(v);
                    dump += "," + core::repr_double(row.ret) + "," + std::to_string(row.label) + "\n";
                }
            } catch (const Error&) {
                continue; // per-asset failures are already listed in the summary
            }
        }
        write_text(dump_features, dump);
    }

    manifest.write(out / "manifest.txt");
    std::cout << summary;
    return 0;
}

int run_arima(const CommonOpts& opts, const std::string& input, std::size_t p,
              const std::optional<std::string>& start, const std::optional<std::string>& end,
              std::size_t horizon) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("arima");
    stamp_common(manifest, opts, false);
    manifest.add_input(input);
    manifest.set("p", static_cast<std::uint64_t>(p));

    auto series = data::load_ohlcv(input);
    if (start || end) {
        const auto lo = start ? core::Date::parse_iso(*start) : core::Date(INT32_MIN);
        const auto hi = end ? core::Date::parse_iso(*end) : core::Date(INT32_MAX);
        series = data::slice_period(series, lo, hi);
        if (start) manifest.set("start", *start);
        if (end) manifest.set("end", *end);
    }
    auto validated = data::validate_series(series, p + 10);
    if (const auto* rejection = std::get_if<data::Rejection>(&validated)) {
        manifest.add_rejection(series.symbol, rejection->describe());
        manifest.write(out / "manifest.txt");
        std::cerr << rejection->describe() << "\n";
        return 1;
    }

    const auto fit = arima::fit_arima(std::get<data::ValidatedSeries>(validated), p);
    const auto text = arima::arima_report(fit);
    write_text(out / "arima_report.txt", text);
    std::cout << text;

    if (horizon > 0) {
        const auto closes = series.closes();
        const auto fc = arima::forecast(fit, closes, horizon);
        std::string csv = "step,forecast,std_err\n";
        for (std::size_t h = 0; h < fc.levels.size(); ++h) {
            csv += std::to_string(h + 1) + "," + core::repr_double(fc.levels[h]) + "," +
                   core::repr_double(fc.std_errs[h]) + "\n";
        }
        write_text(out / "forecast.csv", csv);
        manifest.set("forecast_horizon", static_cast<std::uint64_t>(horizon));
    }
    manifest.write(out / "manifest.txt");
    return 0;
}

int run_simulate_gbm(const CommonOpts& opts, const models::GbmParams& params, double dt,
                     std::size_t steps, std::size_t paths, bool arithmetic) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("simulate.gbm");
    stamp_common(manifest, opts);
    manifest.set("s0", params.s0);
    manifest.set("mu", params.mu);
    manifest.set("sigma", params.sigma);
    manifest.set("dt", dt);
    manifest.set("steps", static_cast<std::uint64_t>(steps));
    manifest.set("paths", static_cast<std::uint64_t>(paths));
    manifest.set("scheme", arithmetic ? "arithmetic-euler" : "log-euler-exact");

    core::RngFactory rng(opts.seed);
    std::vector<std::vector<double>> all(paths);
    core::parallel_for(opts.exec(), paths, [&](std::size_t i) {
        auto stream = rng.stream("gbm.path", i);
        all[i] = models::simulate_gbm(params, dt, steps, stream, arithmetic);
    });

    std::string csv = "step,time";
    for (std::size_t p = 0; p < paths; ++p) csv += ",path" + std::to_string(p);
    csv += "\n";
    for (std::size_t s = 0; s <= steps; ++s) {
        csv += std::to_string(s) + "," + core::repr_double(dt * static_cast<double>(s));
        for (std::size_t p = 0; p < paths; ++p) csv += "," + core::repr_double(all[p][s]);
        csv += "\n";
    }
    write_text(out / "paths.csv", csv);
    manifest.write(out / "manifest.txt");
    std::cout << "wrote " << paths << " paths x " << steps << " steps\n";
    return 0;
}

int run_simulate_heston(const CommonOpts& opts, const models::HestonParams& params, double dt,
                        std::size_t steps, std::size_t paths) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("simulate.heston");
    stamp_common(manifest, opts);
    manifest.set("s0", params.s0);
    manifest.set("v0", params.v0);
    manifest.set("r", params.r);
    manifest.set("kappa", params.kappa);
    manifest.set("theta", params.theta);
    manifest.set("sigma_v", params.sigma_v);
    manifest.set("rho", params.rho);
    manifest.set("dt", dt);
    manifest.set("steps", static_cast<std::uint64_t>(steps));
    manifest.set("paths", static_cast<std::uint64_t>(paths));
    manifest.set("scheme", "euler-full-truncation");
    manifest.set("feller_ratio", params.feller_ratio());

    core::RngFactory rng(opts.seed);
    std::vector<models::HestonPath> all(paths);
    core::parallel_for(opts.exec(), paths, [&](std::size_t i) {
        auto stream = rng.stream("heston.path", i);
        all[i] = models::simulate_heston(params, dt, steps, stream);
    });

    std::size_t floor_touches = 0;
    for (const auto& path : all) floor_touches += path.floor_touches;
    manifest.set("floor_touches", static_cast<std::uint64_t>(floor_touches));

    auto render = [&](auto getter) {
        std::string csv = "step,time";
        for (std::size_t p = 0; p < paths; ++p) csv += ",path" + std::to_string(p);
        csv += "\n";
        for (std::size_t s = 0; s <= steps; ++s) {
            csv += std::to_string(s) + "," + core::repr_double(dt * static_cast<double>(s));
            for (std::size_t p = 0; p < paths; ++p) csv += "," + core::repr_double(getter(all[p], s));
            csv += "\n";
        }
        return csv;
    };
    write_text(out / "prices.csv",
               render([](const models::HestonPath& p, std::size_t s) { return p.prices[s]; }));
    write_text(out / "variances.csv",
               render([](const models::HestonPath& p, std::size_t s) { return p.variances[s]; }));
    manifest.write(out / "manifest.txt");
    std::cout << "wrote " << paths << " paths, variance floor touches: " << floor_touches << "\n";
    return 0;
}

int run_price_bs(const CommonOpts& opts, double s, double k, double r, double t, double sigma) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("price.bs");
    stamp_common(manifest, opts, false);

    const auto quote = models::black_scholes_call(s, k, r, t, sigma);
    std::string table = "s\tk\tr\tt\tsigma\tcall\tput\tvega\n";
    table += core::repr_double(quote.s) + "\t" + core::repr_double(quote.k) + "\t" +
             core::repr_double(quote.r) + "\t" + core::repr_double(quote.t) + "\t" +
             core::repr_double(quote.sigma) + "\t" + core::format_fixed(quote.call_price, 6) + "\t" +
             core::format_fixed(quote.put_price, 6) + "\t" + core::format_fixed(quote.vega, 6) + "\n";
    write_text(out / "quote.tsv", table);
    manifest.write(out / "manifest.txt");
    std::cout << table;
    return 0;
}

int run_qtm(const CommonOpts& opts, const models::QtmInput& input) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("qtm");
    stamp_common(manifest, opts, false);

    const auto result = models::quantity_theory_solve(input);
    std::string text;
    if (result.consistent.has_value()) {
        text = std::string("consistent\t") + (*result.consistent ? "true" : "false") + "\n";
    } else {
        text = std::string(1, result.solved_for) + "\t" + core::repr_double(result.value) + "\n";
    }
    write_text(out / "qtm.tsv", text);
    manifest.write(out / "manifest.txt");
    std::cout << text;
    return 0;
}

int run_sentiment_replay(const CommonOpts& opts, const std::string& events_file) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("sentiment.replay");
    stamp_common(manifest, opts, false);
    manifest.add_input(events_file);

    std::ifstream in(events_file);
    if (!in) {
        throw Error(ErrorCode::MissingFile, events_file);
    }
    std::vector<std::pair<double, double>> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "score,price") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no));
        }
        events.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }

    const auto ledger = nlp::replay(events);
    const auto text = ledger.render();
    write_text(out / "output.txt", text);
    manifest.set("events", static_cast<std::uint64_t>(events.size()));
    manifest.set("trades", static_cast<std::uint64_t>(ledger.entries.size()));
    manifest.write(out / "manifest.txt");
    std::cout << text;
    return 0;
}

int run_sentiment_score(const CommonOpts& opts, const std::string& corpus_dir,
                        const std::string& keywords_csv, std::size_t nb,
                        const std::string& lexicon_file, bool precise) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("sentiment.score");
    stamp_common(manifest, opts, false);
    manifest.set("nb", static_cast<std::uint64_t>(nb));
    manifest.set("precise", precise ? "true" : "false");
    manifest.add_input(lexicon_file);

    const auto lexicon = nlp::Lexicon::load(lexicon_file);

    std::vector<nlp::TextBatch> batches;
    std::string keyword;
    std::istringstream keywords(keywords_csv);
    while (std::getline(keywords, keyword, ',')) {
        nlp::TextBatch batch;
        batch.keyword = keyword;
        batch.nb = nb;
        const fs::path file = fs::path(corpus_dir) / (keyword + ".txt");
        if (fs::exists(file)) {
            manifest.add_input(file);
            std::ifstream docs(file);
            std::string doc;
            while (std::getline(docs, doc)) {
                if (!doc.empty() && doc.back() == '\r') doc.pop_back();
                if (!doc.empty()) batch.texts.push_back(doc);
            }
        }
        batches.push_back(std::move(batch));
    }

    const auto score = nlp::score_batches(batches, lexicon, precise, opts.exec());
    std::string csv = "keyword,pos_pct,neg_pct,ratio\n";
    for (const auto& entry : score.per_keyword) {
        csv += entry.keyword + "," + core::format_fixed(entry.pos_pct, 2) + "," +
               core::format_fixed(entry.neg_pct, 2) + "," + core::repr_double(entry.ratio) + "\n";
    }
    csv += "total,,," + core::repr_double(score.total_score) + "\n";
    write_text(out / "score.csv", csv);
    manifest.write(out / "manifest.txt");
    std::cout << csv;
    return 0;
}

int run_report_indicator(const CommonOpts& opts, const std::string& input,
                         const std::string& indicator, std::size_t n, double k, bool lagged,
                         const std::string& input_b) {
    const auto out = prepare_out(opts);
    report::RunManifest manifest("report.indicator");
    stamp_common(manifest, opts, false);
    manifest.add_input(input);
    manifest.set("indicator", indicator);
    manifest.set("n", static_cast<std::uint64_t>(n));

    const auto series = data::load_ohlcv(input);
    const auto closes = series.closes();
    const auto dates = series.dates();

    auto dump = [&](const ind::IndicatorSeries& values, const std::string& name) {
        write_text(out / (name + ".csv"), report::render_indicator_csv(dates, values));
    };

    if (indicator == "sma") {
        dump(ind::sma(closes, n, lagged), "sma");
    } else if (indicator == "rsi") {
        dump(ind::rsi(closes, n), "rsi");
    } else if (indicator == "sar") {
        dump(ind::parabolic_sar(series.highs(), series.lows(), closes), "sar");
    } else if (indicator == "atr") {
        dump(ind::atr(series.highs(), series.lows(), closes, n), "atr");
    } else if (indicator == "adx") {
        dump(ind::adx(series.highs(), series.lows(), closes, n), "adx");
    } else if (indicator == "bbands") {
        const auto bands = ind::bbands(closes, n, k);
        dump(bands.upper, "bbands_upper");
        dump(bands.middle, "bbands_middle");
        dump(bands.lower, "bbands_lower");
    } else if (indicator == "corr") {
        if (input_b.empty()) {
            throw Error(ErrorCode::UsageError, "corr needs --input-b");
        }
        manifest.add_input(input_b);
        const auto other = data::load_ohlcv(input_b);
        dump(ind::rolling_corr(closes, other.closes(), n), "corr");
    } else {
        throw Error(ErrorCode::UsageError, "unknown indicator " + indicator);
    }
    manifest.write(out / "manifest.txt");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantlab: offline market-efficiency experiments on OHLCV flat files"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags override");

    CommonOpts opts;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "load, validate, and normalize one CSV");
    std::string ingest_input;
    std::size_t ingest_min_len = 1;
    ingest->add_option("--input", ingest_input, "OHLCV CSV file")->required();
    ingest->add_option("--min-len", ingest_min_len, "minimum accepted length");
    add_common(ingest, opts, false);

    // backtest
    auto* backtest = app.add_subcommand("backtest", "SMA mean-reversion vs hold vs random");
    std::string bt_universe;
    bt::SmaExperimentConfig bt_config;
    std::size_t bt_n = 50;
    double bt_r = 20.0;
    std::string bt_mode = "same-day";
    std::string bt_band = "multiplicative";
    std::optional<std::string> bt_start, bt_end;
    backtest->add_option("--universe", bt_universe, "directory of OHLCV CSVs")->required();
    backtest->add_option("--n", bt_n, "SMA window in days");
    backtest->add_option("--r", bt_r, "band threshold percent");
    backtest->add_option("--min-len", bt_config.min_len, "minimum accepted length (360)");
    backtest->add_option("--mode", bt_mode, "same-day|causal signal timing")
        ->check(CLI::IsMember({"same-day", "causal"}));
    backtest->add_option("--band", bt_band, "multiplicative|additive band geometry")
        ->check(CLI::IsMember({"multiplicative", "additive"}));
    backtest->add_option("--start", bt_start, "inclusive slice start YYYY-MM-DD");
    backtest->add_option("--end", bt_end, "inclusive slice end YYYY-MM-DD");
    add_common(backtest, opts);

    // randombetter
    auto* randombetter = app.add_subcommand("randombetter", "random portfolios vs universe mean");
    std::string rb_universe;
    bt::RandomBetterConfig rb_config;
    bool rb_no_replacement = false;
    std::optional<std::string> rb_start, rb_end;
    randombetter->add_option("--universe", rb_universe, "directory of OHLCV CSVs")->required();
    randombetter->add_option("--n-iter", rb_config.n_iter, "number of random portfolios");
    randombetter->add_option("--k", rb_config.k, "assets per portfolio");
    randombetter->add_option("--min-len", rb_config.min_len, "minimum accepted length (360)");
    randombetter->add_flag("--no-replacement", rb_no_replacement, "draw portfolios without replacement");
    randombetter->add_option("--start", rb_start, "inclusive slice start");
    randombetter->add_option("--end", rb_end, "inclusive slice end");
    add_common(randombetter, opts);

    // adf
    auto* adf = app.add_subcommand("adf", "unit-root screening of a universe");
    std::string adf_universe;
    std::size_t adf_min_len = 100;
    bool adf_log = false;
    std::optional<std::size_t> adf_max_lag;
    adf->add_option("--universe", adf_universe, "directory of OHLCV CSVs")->required();
    adf->add_option("--min-len", adf_min_len, "minimum accepted length (100)");
    adf->add_flag("--log", adf_log, "test log prices instead of raw levels");
    adf->add_option("--max-lag", adf_max_lag, "override the Schwert max lag");
    add_common(adf, opts, false);

    // correlate
    auto* correlate = app.add_subcommand("correlate", "Pearson correlation of two assets' daily returns");
    std::string corr_a, corr_b;
    correlate->add_option("file_a", corr_a, "first OHLCV CSV")->required();
    correlate->add_option("file_b", corr_b, "second OHLCV CSV")->required();
    add_common(correlate, opts, false);

    // dist
    auto* dist = app.add_subcommand("dist", "return-distribution diagnostics and histogram");
    std::string dist_input;
    std::size_t dist_bins = 80;
    dist->add_option("input", dist_input, "OHLCV CSV file")->required();
    dist->add_option("--bins", dist_bins, "histogram bin count");
    add_common(dist, opts, false);

    // classify
    auto* classify = app.add_subcommand("classify", "SVM trade classifier across a universe");
    std::string cls_universe;
    std::size_t cls_n = 14;
    std::size_t cls_min_len = 60;
    std::string cls_dump;
    classify->add_option("--universe", cls_universe, "directory of OHLCV CSVs")->required();
    classify->add_option("--n", cls_n, "indicator window");
    classify->add_option("--min-len", cls_min_len, "minimum accepted length");
    classify->add_option("--dump-features", cls_dump, "write the engineered feature matrix to FILE");
    add_common(classify, opts);

    // arima
    auto* arima_cmd = app.add_subcommand("arima", "ARIMA(p,1,0) fit report and forecasts");
    std::string arima_input;
    std::size_t arima_p = 4;
    std::size_t arima_horizon = 0;
    std::optional<std::string> arima_start, arima_end;
    arima_cmd->add_option("--input", arima_input, "OHLCV CSV file")->required();
    arima_cmd->add_option("--p", arima_p, "AR order");
    arima_cmd->add_option("--forecast", arima_horizon, "forecast horizon in days");
    arima_cmd->add_option("--start", arima_start, "inclusive slice start");
    arima_cmd->add_option("--end", arima_end, "inclusive slice end");
    add_common(arima_cmd, opts, false);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "stochastic price-path simulators");
    simulate->require_subcommand(1);
    auto* sim_gbm = simulate->add_subcommand("gbm", "geometric Brownian motion (exact log-Euler)");
    models::GbmParams gbm_params;
    double sim_dt = 1.0 / 365.0;
    std::size_t sim_steps = 365;
    std::size_t sim_paths = 1;
    bool gbm_arithmetic = false;
    sim_gbm->add_option("--s0", gbm_params.s0, "initial price");
    sim_gbm->add_option("--mu", gbm_params.mu, "drift per year");
    sim_gbm->add_option("--sigma", gbm_params.sigma, "volatility per sqrt(year)");
    sim_gbm->add_option("--dt", sim_dt, "step size in years");
    sim_gbm->add_option("--steps", sim_steps, "steps per path");
    sim_gbm->add_option("--paths", sim_paths, "number of paths");
    sim_gbm->add_flag("--arithmetic", gbm_arithmetic, "additive Brownian special case");
    add_common(sim_gbm, opts);

    auto* sim_heston = simulate->add_subcommand("heston", "Heston model (Euler full truncation)");
    models::HestonParams heston_params;
    sim_heston->add_option("--s0", heston_params.s0, "initial price");
    sim_heston->add_option("--v0", heston_params.v0, "initial variance");
    sim_heston->add_option("--r", heston_params.r, "risk-free rate");
    sim_heston->add_option("--kappa", heston_params.kappa, "variance reversion rate");
    sim_heston->add_option("--theta", heston_params.theta, "long-term variance");
    sim_heston->add_option("--sigma-v", heston_params.sigma_v, "volatility of volatility");
    sim_heston->add_option("--rho", heston_params.rho, "Brownian correlation");
    sim_heston->add_option("--dt", sim_dt, "step size in years");
    sim_heston->add_option("--steps", sim_steps, "steps per path");
    sim_heston->add_option("--paths", sim_paths, "number of paths");
    add_common(sim_heston, opts);

    // price
    auto* price = app.add_subcommand("price", "closed-form pricing");
    price->require_subcommand(1);
    auto* price_bs = price->add_subcommand("bs", "Black-Scholes European call");
    double bs_s = 100, bs_k = 100, bs_r = 0.05, bs_t = 1.0, bs_sigma = 0.2;
    price_bs->add_option("--s", bs_s, "spot")->required();
    price_bs->add_option("--k", bs_k, "strike")->required();
    price_bs->add_option("--r", bs_r, "risk-free rate")->required();
    price_bs->add_option("--t", bs_t, "years to maturity")->required();
    price_bs->add_option("--sigma", bs_sigma, "volatility")->required();
    add_common(price_bs, opts, false);

    // qtm
    auto* qtm = app.add_subcommand("qtm", "quantity-theory identity MV = PY");
    models::QtmInput qtm_input;
    qtm->add_option("--m", qtm_input.m, "money supply");
    qtm->add_option("--v", qtm_input.v, "velocity");
    qtm->add_option("--p", qtm_input.p, "price level");
    qtm->add_option("--y", qtm_input.y, "output");
    add_common(qtm, opts, false);

    // sentiment
    auto* sentiment = app.add_subcommand("sentiment", "lexicon scoring and the threshold bot");
    sentiment->require_subcommand(1);
    auto* senti_replay = sentiment->add_subcommand("replay", "replay (score, price) events into a trade ledger");
    std::string senti_events;
    senti_replay->add_option("--events", senti_events, "CSV of score,price rows")->required();
    add_common(senti_replay, opts, false);

    auto* senti_score = sentiment->add_subcommand("score", "score keyword corpora");
    std::string senti_corpus, senti_keywords = "BTC,#BTC,Bitcoin";
    std::size_t senti_nb = 500;
    std::string senti_lexicon = "data/lexicon.txt";
    bool senti_precise = false;
    senti_score->add_option("--corpus", senti_corpus, "directory with <keyword>.txt document files")->required();
    senti_score->add_option("--keywords", senti_keywords, "comma-separated keywords");
    senti_score->add_option("--nb", senti_nb, "batch denominator");
    senti_score->add_option("--lexicon", senti_lexicon, "word-score lexicon file");
    senti_score->add_flag("--precise", senti_precise, "skip the two-decimal percentage rounding");
    add_common(senti_score, opts, false);

    // report
    auto* report_cmd = app.add_subcommand("report", "figure-data dumps");
    report_cmd->require_subcommand(1);
    auto* rep_ind = report_cmd->add_subcommand("indicator", "dump an indicator as date,value CSV");
    std::string rep_input, rep_name, rep_input_b;
    std::size_t rep_n = 14;
    double rep_k = 2.0;
    bool rep_lagged = false;
    rep_ind->add_option("--input", rep_input, "OHLCV CSV file")->required();
    rep_ind->add_option("--indicator", rep_name, "sma|rsi|sar|atr|adx|bbands|corr")->required();
    rep_ind->add_option("--n", rep_n, "window");
    rep_ind->add_option("--k", rep_k, "bollinger std-dev multiple");
    rep_ind->add_flag("--lagged", rep_lagged, "one-day-lagged sma variant");
    rep_ind->add_option("--input-b", rep_input_b, "second series for corr");
    add_common(rep_ind, opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*ingest) return run_ingest(opts, ingest_input, ingest_min_len);
        if (*backtest) {
            bt_config.timing = bt_mode == "causal" ? bt::SignalTiming::causal : bt::SignalTiming::same_day;
            bt_config.band =
                bt_band == "additive" ? bt::BandMode::additive : bt::BandMode::multiplicative;
            bt_config.n = bt_n;
            bt_config.r = bt_r;
            return run_backtest(opts, bt_universe, bt_config, bt_n, bt_r, bt_start, bt_end);
        }
        if (*randombetter) {
            rb_config.with_replacement = !rb_no_replacement;
            return run_randombetter(opts, rb_universe, rb_config, rb_start, rb_end);
        }
        if (*adf) return run_adf(opts, adf_universe, adf_min_len, adf_log, adf_max_lag);
        if (*correlate) return run_correlate(opts, corr_a, corr_b);
        if (*dist) return run_dist(opts, dist_input, dist_bins);
        if (*classify) return run_classify(opts, cls_universe, cls_n, cls_min_len, cls_dump);
        if (*arima_cmd)
            return run_arima(opts, arima_input, arima_p, arima_start, arima_end, arima_horizon);
        if (*sim_gbm) return run_simulate_gbm(opts, gbm_params, sim_dt, sim_steps, sim_paths, gbm_arithmetic);
        if (*sim_heston) return run_simulate_heston(opts, heston_params, sim_dt, sim_steps, sim_paths);
        if (*price_bs) return run_price_bs(opts, bs_s, bs_k, bs_r, bs_t, bs_sigma);
        if (*qtm) return run_qtm(opts, qtm_input);
        if (*senti_replay) return run_sentiment_replay(opts, senti_events);
        if (*senti_score)
            return run_sentiment_score(opts, senti_corpus, senti_keywords, senti_nb, senti_lexicon,
                                       senti_precise);
        if (*rep_ind)
            return run_report_indicator(opts, rep_input, rep_name, rep_n, rep_k, rep_lagged, rep_input_b);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::UsageError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
