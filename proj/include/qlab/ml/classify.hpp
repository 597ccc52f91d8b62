#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlab/core/parallel.hpp"
#include "qlab/core/rng.hpp"
#include "qlab/ml/features.hpp"
#include "qlab/ml/svm.hpp"

namespace qlab::ml {

/// One-vs-one multi-class SVM over labels {-1, 0, +1}; prediction by
/// majority vote with ties resolved toward 0 (no trade).
struct SvmModel {
    double c = 0.0;
    double gamma = 0.0;
    Scaler scaler; // fitted on training rows only

    struct Subproblem {
        int class_neg = 0;
        int class_pos = 0;
        BinarySvm svm;
    };
    std::vector<Subproblem> subproblems;
    bool converged = true;

    int predict(std::span<const double> raw_features) const;
};

/// Trains on rows [0, dataset.split_index) with z-scored features.
SvmModel train_svm(const FeatureDataset& dataset, double c, double gamma,
                   double tol = 1e-3, std::size_t max_passes = 10000);

/// 3x3 counts indexed by (true, predicted) over {-1, 0, +1}.
struct ConfusionMatrix {
    std::array<std::array<std::size_t, 3>, 3> counts{};

    static std::size_t index_of(int label) { return static_cast<std::size_t>(label + 1); }
    void add(int truth, int predicted) { ++counts[index_of(truth)][index_of(predicted)]; }
    std::size_t total() const;
    std::size_t row_sum(int label) const;
    double accuracy() const; // trace / total
};

ConfusionMatrix evaluate(const SvmModel& model, const FeatureDataset& dataset);

struct SearchResult {
    double c = 0.0;
    double gamma = 0.0;
    double mean_accuracy = 0.0;
    std::size_t evaluated = 0;
};

inline const std::vector<double>& default_c_grid() {
    static const std::vector<double> grid{10, 100, 1000, 10000, 100000, 1000000};
    return grid;
}
inline const std::vector<double>& default_gamma_grid() {
    static const std::vector<double> grid{1e-4, 1e-3, 1e-2, 1e-1, 1e0};
    return grid;
}

/// Samples n_samples (C, gamma) pairs without replacement and scores each by
/// mean accuracy over two expanding-window splits of the training rows
/// (split j trains on the first (j+1)/3 and validates on the next 1/3).
/// Ties keep the earlier sampled pair.
SearchResult hyperparam_search(const FeatureDataset& dataset, std::span<const double> c_grid,
                               std::span<const double> gamma_grid, std::size_t n_samples,
                               core::Rng& rng);

struct AssetClassification {
    std::string symbol;
    bool ok = false;
    std::string error;
    double c = 0.0;
    double gamma = 0.0;
    ConfusionMatrix confusion;
    double accuracy = 0.0;
    double strategy_return = 0.0; // sum of ret * predicted signal over test rows; report-only
};

struct UniverseAccuracy {
    std::vector<AssetClassification> entries;
    std::size_t valid_assets = 0;
    double mean_accuracy = 0.0;        // fraction, full precision
    double average_accuracy_pct = 0.0; // rounded integer percent
};

/// Full pipeline per asset (features, randomized search, final fit,
/// confusion matrix), averaged across the universe.
UniverseAccuracy average_accuracy(const std::vector<data::PriceSeries>& universe, std::size_t n,
                                  const core::RngFactory& rng, std::size_t min_len = 60,
                                  core::Exec exec = core::Exec::parallel,
                                  std::size_t n_samples = 10);

} // namespace qlab::ml
