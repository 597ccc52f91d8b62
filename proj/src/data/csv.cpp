#include "qlab/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::data {

namespace {

constexpr const char* kHeader = "date,open,high,low,close,volume";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

PriceSeries load_ohlcv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }

    PriceSeries series;
    series.symbol = path.stem().string();

    std::string line;
    std::size_t line_no = 0;
    std::set<std::int32_t> seen_dates;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != kHeader) {
                throw Error(ErrorCode::MalformedRow, "line 1: expected header '" + std::string(kHeader) + "'");
            }
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw Error(ErrorCode::MalformedRow,
                        "line " + std::to_string(line_no) + ": expected 6 fields, got " +
                            std::to_string(fields.size()));
        }
        Candle candle;
        try {
            candle.date = core::Date::parse_iso(fields[0]);
        } catch (const Error&) {
            throw Error(ErrorCode::MalformedRow,
                        "line " + std::to_string(line_no) + ": bad date '" + std::string(fields[0]) + "'");
        }
        candle.open = parse_number(fields[1], line_no);
        candle.high = parse_number(fields[2], line_no);
        candle.low = parse_number(fields[3], line_no);
        candle.close = parse_number(fields[4], line_no);
        candle.volume = parse_number(fields[5], line_no);
        if (!seen_dates.insert(candle.date.serial()).second) {
            throw Error(ErrorCode::DuplicateDate, candle.date.to_iso() + " in " + path.string());
        }
        series.candles.push_back(candle);
    }

    std::sort(series.candles.begin(), series.candles.end(),
              [](const Candle& a, const Candle& b) { return a.date < b.date; });
    return series;
}

void save_ohlcv(const PriceSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
    }
    out << kHeader << "\n";
    for (const auto& c : series.candles) {
        out << c.date.to_iso() << ',' << core::repr_double(c.open) << ',' << core::repr_double(c.high)
            << ',' << core::repr_double(c.low) << ',' << core::repr_double(c.close) << ','
            << core::repr_double(c.volume) << "\n";
    }
}

std::vector<PriceSeries> load_universe(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::MissingFile, dir.string() + " is not a directory");
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<PriceSeries> universe;
    universe.reserve(files.size());
    for (const auto& file : files) universe.push_back(load_ohlcv(file));
    return universe;
}

} // namespace qlab::data
