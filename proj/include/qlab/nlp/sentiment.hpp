#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlab/core/parallel.hpp"

namespace qlab::nlp {

/// Word -> score in [-1, 1], loaded from a plain "word score" data file.
class Lexicon {
public:
    static Lexicon load(const std::filesystem::path& path);
    static Lexicon from_pairs(std::initializer_list<std::pair<std::string, double>> pairs);

    std::optional<double> lookup(const std::string& token) const;
    std::size_t size() const { return words_.size(); }

private:
    std::map<std::string, double> words_;
};

/// Mean of matched lexicon scores after lowercasing and splitting on
/// non-alphanumerics; "not"/"no"/"never" immediately before a matched word
/// flips its sign. No matches -> 0. Total over [-1, 1].
double polarity(std::string_view text, const Lexicon& lexicon);

struct TextBatch {
    std::string keyword;
    std::vector<std::string> texts;
    std::size_t nb = 500; // the percentage denominator, even when fewer texts arrived
};

struct KeywordScore {
    std::string keyword;
    double pos_pct = 0.0;
    double neg_pct = 0.0;
    double ratio = 0.0;
};

struct SentimentScore {
    std::vector<KeywordScore> per_keyword;
    double total_score = 0.0; // sum of per-keyword ratios
};

/// Percentage arithmetic: polarity in [0, 1] counts positive
/// (neutral included), in [-1, 0) negative; percentages string-rounded to two
/// decimals before the pos/neg ratio (disabled by `precise`); zero negatives
/// fall back to the positive percentage itself.
SentimentScore score_batches(const std::vector<TextBatch>& batches, const Lexicon& lexicon,
                             bool precise = false, core::Exec exec = core::Exec::parallel);

enum class Phase { flat, waiting_buy, in_position };

struct SentimentState {
    Phase phase = Phase::flat;
    double baseline_score = 0.0;  // re-baselined every idle cycle
    double reference_score = 0.0; // the score that triggered the buy; fixed per cycle
    double entry_price = 0.0;     // present iff in_position
};

struct TradeLogEntry {
    enum class Action { buy, sell } action = Action::buy;
    double price = 0.0;
    std::optional<double> profit_pct; // sell only, rounded to 3 decimals
};

/// Threshold state machine: buy when the score rises 30% above the previous
/// one, then sell when it falls 30% below the score held at buy time.
std::optional<TradeLogEntry> bot_step(SentimentState& state, double score, double price);

struct Ledger {
    std::vector<TradeLogEntry> entries;
    std::string render() const; // `BUY : {price}` / `SELL : {price} | Profit = {pct} %`
};

/// Pure fold of bot_step over (score, price) events.
Ledger replay(std::span<const std::pair<double, double>> events);

} // namespace qlab::nlp
