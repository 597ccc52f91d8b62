#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "qlab/report/manifest.hpp"
#include "qlab/report/tables.hpp"

using namespace qlab;
namespace fs = std::filesystem;

TEST_SUITE("report") {

TEST_CASE("universe tables carry the experiment columns") {
    bt::UniverseComparison comparison;
    comparison.universe_size = 5;
    comparison.valid_assets = 4;
    comparison.averages = {{"hold", 1179.4}, {"sma", -484.2}, {"random", -3.6}};
    comparison.pct_better = 0.0;
    comparison.verdict = false;

    const auto table = report::render_sma_table(comparison, 50, 20.0);
    CHECK(table.find("R_hold\tR_sma\tR_random") != std::string::npos);
    CHECK(table.find("1179\t-484\t-4\t50\t20.0\t0.00\tFalse") != std::string::npos);

    comparison.averages = {{"hold", 997.6}};
    comparison.pct_better = 60.0;
    comparison.verdict = true;
    const auto random_table = report::render_random_better_table(comparison, 20, 30);
    CHECK(random_table.find("998\t20\t30\t60.00\tTrue") != std::string::npos);
}

TEST_CASE("confusion render shows counts, marginals, accuracy") {
    ml::ConfusionMatrix matrix;
    for (int i = 0; i < 5; ++i) matrix.add(-1, -1);
    for (int i = 0; i < 3; ++i) matrix.add(-1, 0);
    for (int i = 0; i < 7; ++i) matrix.add(0, 0);
    for (int i = 0; i < 5; ++i) matrix.add(1, 1);
    const auto text = report::render_confusion(matrix);
    CHECK(text.find("-1\t5\t3\t0\t8") != std::string::npos);
    CHECK(text.find("total\t5\t10\t5\t20") != std::string::npos);
    CHECK(text.find("accuracy\t0.8500") != std::string::npos);
}

TEST_CASE("indicator csv leaves warm-up fields empty") {
    const auto series = test::make_series("X", {1, 2, 3, 4});
    const auto sma = ind::sma(series.closes(), 2);
    const auto csv = report::render_indicator_csv(series.dates(), sma);
    CHECK(csv.find("2021-01-01,\n") != std::string::npos);
    CHECK(csv.find("2021-01-02,1.5\n") != std::string::npos);
}

TEST_CASE("manifest renders deterministically and digests inputs") {
    const fs::path file = fs::temp_directory_path() / "qlab_manifest_input.txt";
    {
        std::ofstream out(file, std::ios::binary);
        out << "payload";
    }
    report::RunManifest a("demo");
    a.set("seed", std::uint64_t{42});
    a.add_input(file);
    a.add_rejection("SHORT", "TooShort(10,360)");

    report::RunManifest b("demo");
    b.set("seed", std::uint64_t{42});
    b.add_input(file);
    b.add_rejection("SHORT", "TooShort(10,360)");

    CHECK(a.render() == b.render());
    CHECK(a.render().find("toolkit_version=0.1.0\n") != std::string::npos);
    CHECK(a.render().find("rejected.SHORT=TooShort(10,360)\n") != std::string::npos);

    // digest changes with content
    {
        std::ofstream out(file, std::ios::binary);
        out << "other payload";
    }
    report::RunManifest c("demo");
    c.set("seed", std::uint64_t{42});
    c.add_input(file);
    CHECK(a.render() != c.render());
}

} // TEST_SUITE
