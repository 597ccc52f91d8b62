#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "qlab/core/errors.hpp"
#include "qlab/data/csv.hpp"
#include "qlab/data/series.hpp"

using namespace qlab;
namespace fs = std::filesystem;

namespace {

fs::path write_temp_csv(const std::string& name, const std::string& body) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

} // namespace

TEST_SUITE("market_data") {

TEST_CASE("load_ohlcv parses a well-formed file in date order") {
    const auto path = write_temp_csv("qlab_ok.csv",
                                     "date,open,high,low,close,volume\n"
                                     "2021-05-03,3.0,3.5,2.5,3.2,10\n"
                                     "2021-05-01,1.0,2.0,0.5,1.5,100\n"
                                     "2021-05-02,2.0,2.5,1.5,2.2,50\n");
    const auto series = data::load_ohlcv(path);
    REQUIRE(series.size() == 3);
    CHECK(series.symbol == "qlab_ok");
    CHECK(series.candles[0].date.to_iso() == "2021-05-01");
    CHECK(series.candles[2].date.to_iso() == "2021-05-03");
    CHECK(series.candles[0].close == 1.5);
}

TEST_CASE("duplicate dates are an error") {
    const auto path = write_temp_csv("qlab_dup.csv",
                                     "date,open,high,low,close,volume\n"
                                     "2021-05-01,1,2,0.5,1.5,100\n"
                                     "2021-05-01,2,3,1,2,100\n");
    CHECK_THROWS_WITH_AS(data::load_ohlcv(path), doctest::Contains("2021-05-01"), Error);
}

TEST_CASE("malformed numeric field reports the line number") {
    const auto path = write_temp_csv("qlab_bad.csv",
                                     "date,open,high,low,close,volume\n"
                                     "2021-01-01,1,2,0.5,1.5,abc\n");
    try {
        data::load_ohlcv(path);
        FAIL("expected MalformedRow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedRow);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("missing file and extra columns are rejected") {
    CHECK_THROWS_AS(data::load_ohlcv("/nonexistent/nowhere.csv"), Error);
    const auto extra = write_temp_csv("qlab_extra.csv",
                                      "date,open,high,low,close,volume,adjclose\n"
                                      "2021-01-01,1,2,0.5,1.5,10,1.4\n");
    CHECK_THROWS_AS(data::load_ohlcv(extra), Error);
}

TEST_CASE("load -> save -> load is the identity") {
    const auto original = test::make_series("RT", {100.125, 99.875, 101.0625, 0.1 + 0.2});
    const fs::path path = fs::temp_directory_path() / "qlab_roundtrip.csv";
    data::save_ohlcv(original, path);
    const auto reloaded = data::load_ohlcv(path);
    REQUIRE(reloaded.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(reloaded.candles[i].date == original.candles[i].date);
        CHECK(reloaded.candles[i].open == original.candles[i].open);
        CHECK(reloaded.candles[i].high == original.candles[i].high);
        CHECK(reloaded.candles[i].low == original.candles[i].low);
        CHECK(reloaded.candles[i].close == original.candles[i].close);
        CHECK(reloaded.candles[i].volume == original.candles[i].volume);
    }
}

TEST_CASE("slice_period is inclusive on both ends") {
    std::vector<double> closes(365);
    for (std::size_t i = 0; i < closes.size(); ++i) closes[i] = 100.0 + static_cast<double>(i);
    const auto series = test::make_series("Y", closes, core::Date(2021, 1, 1));

    const auto whole = data::slice_period(series, core::Date(2021, 1, 1), core::Date(2021, 12, 31));
    CHECK(whole.size() == 365);

    const auto one = data::slice_period(series, core::Date(2021, 6, 1), core::Date(2021, 6, 1));
    REQUIRE(one.size() == 1);
    CHECK(one.candles[0].date.to_iso() == "2021-06-01");

    CHECK_THROWS_AS(data::slice_period(series, core::Date(2022, 1, 1), core::Date(2021, 1, 1)), Error);

    // identity property: slicing at the series' own bounds is a no-op
    const auto same = data::slice_period(series, series.candles.front().date, series.candles.back().date);
    CHECK(same.size() == series.size());
}

TEST_CASE("validate_series screens exactly as specified") {
    std::vector<double> closes(365, 50.0);
    const auto accepted = data::validate_series(test::make_series("OK", closes), 360);
    CHECK(std::holds_alternative<data::ValidatedSeries>(accepted));

    std::vector<double> short_closes(200, 50.0);
    const auto too_short = data::validate_series(test::make_series("S", short_closes), 360);
    const auto* rejection = std::get_if<data::Rejection>(&too_short);
    REQUIRE(rejection != nullptr);
    CHECK(rejection->reason == data::RejectReason::TooShort);
    CHECK(rejection->actual_len == 200);
    CHECK(rejection->required_len == 360);

    std::vector<double> zeroed(400, 50.0);
    zeroed[123] = 0.0;
    const auto zero = data::validate_series(test::make_series("Z", zeroed), 360);
    const auto* zero_rejection = std::get_if<data::Rejection>(&zero);
    REQUIRE(zero_rejection != nullptr);
    CHECK(zero_rejection->reason == data::RejectReason::ZeroClose);

    const auto empty = data::validate_series(data::PriceSeries{"E", {}}, 1);
    CHECK(std::get_if<data::Rejection>(&empty)->reason == data::RejectReason::Empty);
}

TEST_CASE("validate_series is monotone in min_len") {
    core::Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const auto len = static_cast<std::size_t>(rng.uniform_int(1, 500));
        std::vector<double> closes(len, 10.0);
        const auto m = static_cast<std::size_t>(rng.uniform_int(0, 600));
        const auto series = test::make_series("M", closes);
        const bool accepted_at_m = std::holds_alternative<data::ValidatedSeries>(
            data::validate_series(series, m));
        if (accepted_at_m) {
            for (std::size_t lower = 0; lower <= m; lower += std::max<std::size_t>(1, m / 3)) {
                CHECK(std::holds_alternative<data::ValidatedSeries>(
                    data::validate_series(series, lower)));
            }
        }
    }
}

TEST_CASE("daily_returns: values, dates, and reconstruction") {
    const auto series = test::make_series("R", {100, 110});
    const auto returns = data::daily_returns(series);
    REQUIRE(returns.entries.size() == 1);
    CHECK(returns.entries[0].second == doctest::Approx(10.0));
    CHECK(returns.entries[0].first.to_iso() == "2021-01-02");

    const auto flat = data::daily_returns(test::make_series("F", {100, 100, 100}));
    CHECK(flat.entries[0].second == 0.0);
    CHECK(flat.entries[1].second == 0.0);

    const auto swing = data::daily_returns(test::make_series("V", {100, 50, 100}));
    CHECK(swing.entries[0].second == doctest::Approx(-50.0));
    CHECK(swing.entries[1].second == doctest::Approx(100.0));

    CHECK_THROWS_AS(data::daily_returns(test::make_series("T", {100.0})), Error);

    // reconstruction property on a seeded walk
    const auto closes = test::random_walk_closes(17, 300);
    const auto walk = test::make_series("W", closes);
    const auto walk_returns = data::daily_returns(walk);
    CHECK(walk_returns.entries.size() == closes.size() - 1);
    double level = closes[0];
    for (std::size_t i = 0; i < walk_returns.entries.size(); ++i) {
        level *= 1.0 + walk_returns.entries[i].second / 100.0;
        CHECK(test::approx_rel(level, closes[i + 1], 1e-12));
    }
}

} // TEST_SUITE
