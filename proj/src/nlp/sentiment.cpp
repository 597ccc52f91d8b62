#include "qlab/nlp/sentiment.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::nlp {

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    Lexicon out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string word;
        double score = 0.0;
        if (row >> word >> score) {
            out.words_[word] = score;
        }
    }
    return out;
}

Lexicon Lexicon::from_pairs(std::initializer_list<std::pair<std::string, double>> pairs) {
    Lexicon out;
    for (const auto& [word, score] : pairs) out.words_[word] = score;
    return out;
}

std::optional<double> Lexicon::lookup(const std::string& token) const {
    auto it = words_.find(token);
    if (it == words_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool is_negator(const std::string& token) {
    return token == "not" || token == "no" || token == "never";
}

} // namespace

double polarity(std::string_view text, const Lexicon& lexicon) {
    const auto tokens = tokenize(text);
    double sum = 0.0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto score = lexicon.lookup(tokens[i]);
        if (!score) continue;
        const bool negated = i > 0 && is_negator(tokens[i - 1]);
        sum += negated ? -*score : *score;
        ++matched;
    }
    return matched == 0 ? 0.0 : sum / static_cast<double>(matched);
}

SentimentScore score_batches(const std::vector<TextBatch>& batches, const Lexicon& lexicon,
                             bool precise, core::Exec exec) {
    SentimentScore out;
    for (const auto& batch : batches) {
        const auto signs = core::parallel_map<int>(exec, batch.texts.size(), [&](std::size_t i) {
            const double p = polarity(batch.texts[i], lexicon);
            if (p >= 0.0 && p <= 1.0) return 1; // neutral counts positive, by convention
            return -1;
        });
        std::size_t pos = 0;
        std::size_t neg = 0;
        for (int sign : signs) {
            if (sign > 0) ++pos;
            else ++neg;
        }

        KeywordScore score;
        score.keyword = batch.keyword;
        const double denom = static_cast<double>(batch.nb);
        score.pos_pct = 100.0 * static_cast<double>(pos) / denom;
        score.neg_pct = 100.0 * static_cast<double>(neg) / denom;
        if (!precise) {
            score.pos_pct = core::fixed_round(score.pos_pct, 2);
            score.neg_pct = core::fixed_round(score.neg_pct, 2);
        }
        score.ratio = score.neg_pct > 0.0 ? score.pos_pct / score.neg_pct : score.pos_pct;
        out.total_score += score.ratio;
        out.per_keyword.push_back(score);
    }
    return out;
}

std::optional<TradeLogEntry> bot_step(SentimentState& state, double score, double price) {
    switch (state.phase) {
        case Phase::flat:
            state.baseline_score = score;
            state.phase = Phase::waiting_buy;
            return std::nullopt;
        case Phase::waiting_buy: {
            const double min1 = state.baseline_score + state.baseline_score * 30.0 / 100.0;
            if (score > min1) {
                state.reference_score = score;
                state.entry_price = price;
                state.phase = Phase::in_position;
                return TradeLogEntry{TradeLogEntry::Action::buy, price, std::nullopt};
            }
            state.baseline_score = score; // each idle cycle re-baselines
            return std::nullopt;
        }
        case Phase::in_position: {
            const double min2 = state.reference_score - state.reference_score * 30.0 / 100.0;
            if (score < min2) {
                const double profit =
                    core::round_half_even((price - state.entry_price) / state.entry_price * 100.0, 3);
                state.phase = Phase::flat;
                state.entry_price = 0.0;
                return TradeLogEntry{TradeLogEntry::Action::sell, price, profit};
            }
            return std::nullopt; // reference stays fixed for the whole cycle
        }
    }
    return std::nullopt;
}

std::string Ledger::render() const {
    std::string out;
    for (const auto& entry : entries) {
        if (entry.action == TradeLogEntry::Action::buy) {
            out += "BUY : " + core::repr_double(entry.price) + "\n";
        } else {
            // str(round(x, 3)) semantics: fixed three decimals, trailing
            // zeros trimmed, at least one digit kept after the point.
            std::string profit = core::format_fixed(entry.profit_pct.value_or(0.0), 3);
            while (profit.size() > 1 && profit.back() == '0' && profit[profit.size() - 2] != '.') {
                profit.pop_back();
            }
            out += "SELL : " + core::repr_double(entry.price) + " | Profit = " + profit + " %\n";
        }
    }
    return out;
}

Ledger replay(std::span<const std::pair<double, double>> events) {
    Ledger ledger;
    SentimentState state;
    for (const auto& [score, price] : events) {
        if (auto entry = bot_step(state, score, price)) {
            ledger.entries.push_back(*entry);
        }
    }
    return ledger;
}

} // namespace qlab::nlp
