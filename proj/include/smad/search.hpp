#pragma once

#include "smad/baselines.hpp"
#include "smad/dataset.hpp"
#include "smad/mlp.hpp"
#include "smad/random.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smad {

/// Sampling ranges for the network hyper-parameters. eta and lambda are
/// log-uniform in 10^[min, max]; the rest are uniform integers. Hidden layer i+1
/// is never wider than layer i.
struct SmadSearchSpace {
    double log10_eta_min = -2.5;
    double log10_eta_max = 0.0;
    double log10_lambda_min = -2.5;
    double log10_lambda_max = 0.0;
    int gamma_min = 1;
    int gamma_max = 10;
    int layers_min = 1;
    int layers_max = 3;
    int size_min = 4;
    int size_max = 100;

    HyperParams sample(Rng& rng) const;
};

/// Sampling ranges for the selector trees: max_features uniform over
/// {sqrt, log2, all}, max_depth = 10 * U{1..10},
/// min_samples_leaf = U{1..5}, min_samples_split log-uniform in 10^[-4, -1].
struct TreeSearchSpace {
    int depth_steps_min = 1;
    int depth_steps_max = 10;
    int leaf_min = 1;
    int leaf_max = 5;
    double log10_split_min = -4.0;
    double log10_split_max = -1.0;

    TreeHyperParams sample(Rng& rng) const;
};

template <class Config>
struct SearchResult {
    Config best{};
    double best_score = -std::numeric_limits<double>::infinity();
    std::size_t best_trial = 0;
    std::vector<Config> configs;
    std::vector<double> scores;
};

/// Samples `trials` configurations from one generator seeded with `seed` and keeps
/// the highest score; the earliest trial wins ties. `score(config, trial)` must be
/// deterministic. Throws std::invalid_argument when trials < 1.
template <class Config>
SearchResult<Config> random_search(int trials, std::uint64_t seed, const std::function<Config(Rng&)>& sample,
                                   const std::function<double(const Config&, std::size_t)>& score) {
    if (trials < 1) {
        throw std::invalid_argument("random_search needs at least one trial");
    }
    Rng rng(seed);
    SearchResult<Config> result;
    for (int t = 0; t < trials; ++t) {
        result.configs.push_back(sample(rng));
    }
    for (std::size_t t = 0; t < result.configs.size(); ++t) {
        const double value = score(result.configs[t], t);
        result.scores.push_back(value);
        if (value > result.best_score) {
            result.best_score = value;
            result.best = result.configs[t];
            result.best_trial = t;
        }
    }
    return result;
}

/// Networks trained during inner cross-validation, keyed by hyper-parameters,
/// seed, epochs and the exact set of training systems. A hit returns the network
/// that the same training would have produced.
class TrainingCache {
public:
    std::shared_ptr<const MlpModel> find(const std::string& key) const;
    void insert(const std::string& key, std::shared_ptr<const MlpModel> model);
    std::size_t size() const noexcept { return models_.size(); }
    std::size_t hits() const noexcept { return hits_; }
    void clear();

private:
    std::map<std::string, std::shared_ptr<const MlpModel>> models_;
    mutable std::size_t hits_ = 0;
};

struct InnerCvOptions {
    int epochs = 100;
    TrainingCache* cache = nullptr;
};

/// Leave-one-system-out over `systems`: each system is predicted by a single
/// network trained on the others; returns the MCC of the merged predictions.
/// A fold whose training data holds a single class predicts all negatives.
double smad_inner_cv_mcc(std::span<const InstanceTable* const> systems, const HyperParams& hp, std::uint64_t seed,
                         const InnerCvOptions& options = {});

/// T* over the stacked rows of labelled tables, with verdicts under `thresholds`.
SelectorSet asci_training_set(std::span<const InstanceTable* const> tables, const DetectorThresholds& thresholds);

/// Selector hyper-parameters: leave-one-system-out with the given detector
/// thresholds; returns the merged-prediction MCC.
double asci_inner_cv_mcc(std::span<const InstanceTable* const> systems, const TreeHyperParams& hp,
                         const DetectorThresholds& thresholds, std::uint64_t seed);

/// Random search over SmadSearchSpace scored by smad_inner_cv_mcc. Trial t trains
/// with seed mix_seed(seed, t). Throws std::invalid_argument with fewer than two systems.
SearchResult<HyperParams> tune_smad(std::span<const InstanceTable* const> systems, int trials, std::uint64_t seed,
                                    const InnerCvOptions& options = {}, const SmadSearchSpace& space = {});
SearchResult<TreeHyperParams> tune_asci(std::span<const InstanceTable* const> systems, int trials, std::uint64_t seed,
                                        const DetectorThresholds& thresholds, const TreeSearchSpace& space = {});

std::string serialize_hyper_params(const HyperParams& hp);
HyperParams load_hyper_params(const std::string& document);
std::string serialize_tree_hyper_params(const TreeHyperParams& hp);
TreeHyperParams load_tree_hyper_params(const std::string& document);

} // namespace smad
