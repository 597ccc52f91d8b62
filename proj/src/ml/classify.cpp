#include "qlab/ml/classify.hpp"

#include <algorithm>
#include <set>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::ml {

namespace {

struct ScaledSplit {
    Scaler scaler;
    std::vector<std::vector<double>> train_x;
    std::vector<int> train_y;
};

ScaledSplit scale_rows(const std::vector<FeatureRow>& rows, std::size_t begin, std::size_t end) {
    ScaledSplit out;
    std::vector<std::vector<double>> raw;
    raw.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) raw.push_back(rows[i].x);
    out.scaler = Scaler::fit(raw);
    out.train_x.reserve(raw.size());
    for (const auto& row : raw) out.train_x.push_back(out.scaler.transform(row));
    out.train_y.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.train_y.push_back(rows[i].label);
    return out;
}

SvmModel train_on(const ScaledSplit& split, double c, double gamma, double tol,
                  std::size_t max_passes) {
    std::set<int> classes(split.train_y.begin(), split.train_y.end());
    if (classes.size() < 2) {
        throw Error(ErrorCode::SingleClassTraining, "training rows contain one class");
    }

    SvmModel model;
    model.c = c;
    model.gamma = gamma;
    model.scaler = split.scaler;

    const std::array<std::pair<int, int>, 3> pairs{{{-1, 0}, {-1, 1}, {0, 1}}};
    for (const auto& [neg, pos] : pairs) {
        if (!classes.count(neg) || !classes.count(pos)) continue;
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        for (std::size_t i = 0; i < split.train_x.size(); ++i) {
            if (split.train_y[i] == neg) {
                x.push_back(split.train_x[i]);
                y.push_back(-1);
            } else if (split.train_y[i] == pos) {
                x.push_back(split.train_x[i]);
                y.push_back(1);
            }
        }
        SmoParams params;
        params.c = c;
        params.gamma = gamma;
        params.tol = tol;
        params.max_passes = max_passes;
        SvmModel::Subproblem sub;
        sub.class_neg = neg;
        sub.class_pos = pos;
        sub.svm = BinarySvm::train(x, y, params);
        if (!sub.svm.converged()) model.converged = false;
        model.subproblems.push_back(std::move(sub));
    }
    return model;
}

} // namespace

int SvmModel::predict(std::span<const double> raw_features) const {
    const auto scaled = scaler.transform(raw_features);
    int votes[3] = {0, 0, 0};
    for (const auto& sub : subproblems) {
        const int winner = sub.svm.decision(scaled) >= 0.0 ? sub.class_pos : sub.class_neg;
        ++votes[ConfusionMatrix::index_of(winner)];
    }
    int best = 0; // ties go to the no-trade class
    int best_votes = votes[ConfusionMatrix::index_of(0)];
    for (int label : {-1, 1}) {
        if (votes[ConfusionMatrix::index_of(label)] > best_votes) {
            best_votes = votes[ConfusionMatrix::index_of(label)];
            best = label;
        }
    }
    return best;
}

SvmModel train_svm(const FeatureDataset& dataset, double c, double gamma, double tol,
                   std::size_t max_passes) {
    if (dataset.split_index == 0) {
        throw Error(ErrorCode::TooFewRows, "no training rows");
    }
    const auto split = scale_rows(dataset.rows, 0, dataset.split_index);
    return train_on(split, c, gamma, tol, max_passes);
}

std::size_t ConfusionMatrix::total() const {
    std::size_t acc = 0;
    for (const auto& row : counts) {
        for (std::size_t v : row) acc += v;
    }
    return acc;
}

std::size_t ConfusionMatrix::row_sum(int label) const {
    std::size_t acc = 0;
    for (std::size_t v : counts[index_of(label)]) acc += v;
    return acc;
}

double ConfusionMatrix::accuracy() const {
    const std::size_t all = total();
    if (all == 0) return 0.0;
    std::size_t trace = 0;
    for (std::size_t i = 0; i < 3; ++i) trace += counts[i][i];
    return static_cast<double>(trace) / static_cast<double>(all);
}

ConfusionMatrix evaluate(const SvmModel& model, const FeatureDataset& dataset) {
    if (dataset.split_index >= dataset.rows.size()) {
        throw Error(ErrorCode::EmptyTestSet, dataset.symbol);
    }
    ConfusionMatrix out;
    for (std::size_t i = dataset.split_index; i < dataset.rows.size(); ++i) {
        out.add(dataset.rows[i].label, model.predict(dataset.rows[i].x));
    }
    return out;
}

SearchResult hyperparam_search(const FeatureDataset& dataset, std::span<const double> c_grid,
                               std::span<const double> gamma_grid, std::size_t n_samples,
                               core::Rng& rng) {
    if (c_grid.empty() || gamma_grid.empty()) {
        throw Error(ErrorCode::EmptyGrid, "empty hyperparameter grid");
    }
    const std::size_t grid_size = c_grid.size() * gamma_grid.size();
    if (n_samples == 0 || n_samples > grid_size) {
        throw Error(ErrorCode::DomainError, "n_samples must be in [1, grid size]");
    }

    const std::size_t train_rows = dataset.split_index;
    const std::size_t third = train_rows / 3;
    if (third == 0) {
        throw Error(ErrorCode::TooFewRows, "expanding-window split needs >= 3 training rows");
    }

    // Sample pair indices without replacement, partial Fisher-Yates.
    std::vector<std::size_t> order(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) order[i] = i;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(grid_size) - 1));
        std::swap(order[i], order[j]);
    }

    SearchResult best;
    bool first = true;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double c = c_grid[order[s] / gamma_grid.size()];
        const double gamma = gamma_grid[order[s] % gamma_grid.size()];

        double score_sum = 0.0;
        for (std::size_t fold = 0; fold < 2; ++fold) {
            const std::size_t train_end = (fold + 1) * third;
            const std::size_t valid_end = (fold + 2) * third;
            double accuracy = 0.0;
            try {
                const auto split = scale_rows(dataset.rows, 0, train_end);
                const auto model = train_on(split, c, gamma, 1e-3, 2000);
                std::size_t hits = 0;
                for (std::size_t i = train_end; i < valid_end; ++i) {
                    if (model.predict(dataset.rows[i].x) == dataset.rows[i].label) ++hits;
                }
                accuracy = static_cast<double>(hits) / static_cast<double>(valid_end - train_end);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingleClassTraining) throw;
                accuracy = 0.0; // degenerate fold scores zero
            }
            score_sum += accuracy;
        }
        const double mean_score = score_sum / 2.0;
        if (first || mean_score > best.mean_accuracy) {
            best.c = c;
            best.gamma = gamma;
            best.mean_accuracy = mean_score;
            first = false;
        }
        ++best.evaluated;
    }
    return best;
}

UniverseAccuracy average_accuracy(const std::vector<data::PriceSeries>& universe, std::size_t n,
                                  const core::RngFactory& rng, std::size_t min_len, core::Exec exec,
                                  std::size_t n_samples) {
    UniverseAccuracy out;
    out.entries =
        core::parallel_map<AssetClassification>(exec, universe.size(), [&](std::size_t i) {
            AssetClassification entry;
            entry.symbol = universe[i].symbol;
            try {
                auto validated = data::validate_series(universe[i], min_len);
                if (auto* rejection = std::get_if<data::Rejection>(&validated)) {
                    entry.error = rejection->describe();
                    return entry;
                }
                const auto dataset = build_features(std::get<data::ValidatedSeries>(validated), n);
                auto stream = rng.stream("classify.search", i);
                const auto picked =
                    hyperparam_search(dataset, default_c_grid(), default_gamma_grid(), n_samples, stream);
                const auto model = train_svm(dataset, picked.c, picked.gamma);
                entry.confusion = evaluate(model, dataset);
                entry.accuracy = entry.confusion.accuracy();
                for (std::size_t row = dataset.split_index; row < dataset.rows.size(); ++row) {
                    entry.strategy_return +=
                        dataset.rows[row].ret * static_cast<double>(model.predict(dataset.rows[row].x));
                }
                entry.c = picked.c;
                entry.gamma = picked.gamma;
                entry.ok = true;
            } catch (const Error& e) {
                entry.error = e.what();
            }
            return entry;
        });

    double acc_sum = 0.0;
    for (const auto& entry : out.entries) {
        if (!entry.ok) continue;
        ++out.valid_assets;
        acc_sum += entry.accuracy;
    }
    if (out.valid_assets == 0) {
        throw Error(ErrorCode::EmptyUniverse, "no asset survived feature construction");
    }
    out.mean_accuracy = acc_sum / static_cast<double>(out.valid_assets);
    out.average_accuracy_pct = core::round_half_even(out.mean_accuracy * 100.0);
    return out;
}

} // namespace qlab::ml
