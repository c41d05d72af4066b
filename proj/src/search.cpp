#include "smad/search.hpp"

#include "smad/confusion.hpp"
#include "smad/errors.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace smad {

HyperParams SmadSearchSpace::sample(Rng& rng) const {
    HyperParams hp;
    hp.eta = std::pow(10.0, rng.real(log10_eta_min, log10_eta_max));
    hp.lambda = std::pow(10.0, rng.real(log10_lambda_min, log10_lambda_max));
    hp.gamma = rng.uniform(gamma_min, gamma_max);
    const int layers = rng.uniform(layers_min, layers_max);
    hp.layer_sizes.clear();
    int widest = size_max;
    for (int l = 0; l < layers; ++l) {
        const int size = rng.uniform(size_min, widest);
        hp.layer_sizes.push_back(size);
        widest = size;
    }
    return hp;
}

TreeHyperParams TreeSearchSpace::sample(Rng& rng) const {
    static constexpr MaxFeatures modes[] = {MaxFeatures::Sqrt, MaxFeatures::Log2, MaxFeatures::All};
    TreeHyperParams hp;
    hp.max_features = modes[rng.uniform(0, 2)];
    hp.max_depth = 10 * rng.uniform(depth_steps_min, depth_steps_max);
    hp.min_samples_leaf = rng.uniform(leaf_min, leaf_max);
    hp.min_samples_split = std::pow(10.0, rng.real(log10_split_min, log10_split_max));
    return hp;
}

std::shared_ptr<const MlpModel> TrainingCache::find(const std::string& key) const {
    const auto it = models_.find(key);
    if (it == models_.end()) {
        return nullptr;
    }
    ++hits_;
    return it->second;
}

void TrainingCache::insert(const std::string& key, std::shared_ptr<const MlpModel> model) {
    models_.emplace(key, std::move(model));
}

void TrainingCache::clear() {
    models_.clear();
    hits_ = 0;
}

namespace {

void require_systems(std::span<const InstanceTable* const> systems) {
    if (systems.size() < 2) {
        throw std::invalid_argument("inner cross-validation needs at least two systems");
    }
}

std::string cache_key(const HyperParams& hp, std::uint64_t seed, int epochs, std::vector<std::string> ids) {
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "%.17g|%.17g|%.17g|", hp.eta, hp.lambda, hp.gamma);
    std::string key = buffer;
    for (int size : hp.layer_sizes) {
        key += std::to_string(size) + ",";
    }
    key += "|" + std::to_string(seed) + "|" + std::to_string(epochs) + "|";
    std::sort(ids.begin(), ids.end());
    for (const std::string& id : ids) {
        key += id + ";";
    }
    return key;
}

std::vector<const InstanceTable*> all_but(std::span<const InstanceTable* const> systems, std::size_t held_out) {
    std::vector<const InstanceTable*> rest;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        if (i != held_out) {
            rest.push_back(systems[i]);
        }
    }
    return rest;
}

} // namespace

double smad_inner_cv_mcc(std::span<const InstanceTable* const> systems, const HyperParams& hp, std::uint64_t seed,
                         const InnerCvOptions& options) {
    require_systems(systems);
    TrainOptions train_options;
    train_options.epochs = options.epochs;
    ConfusionMatrix merged;
    for (std::size_t v = 0; v < systems.size(); ++v) {
        const std::vector<const InstanceTable*> training = all_but(systems, v);
        std::vector<std::string> ids;
        for (const InstanceTable* table : training) {
            ids.push_back(table->system_id);
        }
        const std::string key = cache_key(hp, seed, options.epochs, ids);
        std::shared_ptr<const MlpModel> model = options.cache ? options.cache->find(key) : nullptr;
        bool trainable = true;
        if (!model) {
            const LabeledBatch batch = to_batch(training);
            try {
                model = std::make_shared<const MlpModel>(train(batch, hp, seed, train_options, training.front()->schema));
            } catch (const TrainingError&) {
                trainable = false;
            }
            if (model && options.cache) {
                options.cache->insert(key, model);
            }
        }
        const InstanceTable& validation = *systems[v];
        if (!trainable) {
            for (std::uint8_t y : validation.labels) {
                merged.add(false, y != 0);
            }
            continue;
        }
        const LabeledBatch raw = to_batch(std::span<const InstanceTable* const>(&systems[v], 1));
        const std::vector<double> logits = network_logits(model->net, standardized(model->norm, raw));
        for (std::size_t i = 0; i < logits.size(); ++i) {
            merged.add(logits[i] > 0.0, raw.labels[i] != 0);
        }
    }
    return mcc(merged);
}

SelectorSet asci_training_set(std::span<const InstanceTable* const> tables, const DetectorThresholds& thresholds) {
    if (tables.empty()) {
        throw std::invalid_argument("asci_training_set needs at least one table");
    }
    std::size_t rows = 0;
    for (const InstanceTable* table : tables) {
        rows += table->size();
    }
    // std::vector<bool> cannot back a span
    std::unique_ptr<bool[]> labels(new bool[rows]);
    std::vector<ToolVerdicts> verdicts;
    verdicts.reserve(rows);
    for (const InstanceTable* table : tables) {
        for (std::size_t i = 0; i < table->size(); ++i) {
            labels[verdicts.size()] = table->labels.at(i) != 0;
            verdicts.push_back(detector_verdicts(*table, i, thresholds));
        }
    }
    const std::vector<Tool> choices = asci_build_training(std::span<const bool>(labels.get(), rows), verdicts);
    SelectorSet set(tables.front()->dim());
    std::size_t k = 0;
    for (const InstanceTable* table : tables) {
        for (std::size_t i = 0; i < table->size(); ++i) {
            set.add(table->row(i), choices[k++]);
        }
    }
    return set;
}

double asci_inner_cv_mcc(std::span<const InstanceTable* const> systems, const TreeHyperParams& hp,
                         const DetectorThresholds& thresholds, std::uint64_t seed) {
    require_systems(systems);
    ConfusionMatrix merged;
    for (std::size_t v = 0; v < systems.size(); ++v) {
        const AsciModel model = asci_train(asci_training_set(all_but(systems, v), thresholds), hp, seed);
        const InstanceTable& validation = *systems[v];
        for (std::size_t i = 0; i < validation.size(); ++i) {
            merged.add(asci_predict(model, validation.row(i), detector_verdicts(validation, i, thresholds)),
                       validation.labels.at(i) != 0);
        }
    }
    return mcc(merged);
}

SearchResult<HyperParams> tune_smad(std::span<const InstanceTable* const> systems, int trials, std::uint64_t seed,
                                    const InnerCvOptions& options, const SmadSearchSpace& space) {
    require_systems(systems);
    return random_search<HyperParams>(
        trials, seed, [&space](Rng& rng) { return space.sample(rng); },
        [&](const HyperParams& hp, std::size_t trial) {
            return smad_inner_cv_mcc(systems, hp, mix_seed(seed, trial), options);
        });
}

SearchResult<TreeHyperParams> tune_asci(std::span<const InstanceTable* const> systems, int trials, std::uint64_t seed,
                                        const DetectorThresholds& thresholds, const TreeSearchSpace& space) {
    require_systems(systems);
    return random_search<TreeHyperParams>(
        trials, seed, [&space](Rng& rng) { return space.sample(rng); },
        [&](const TreeHyperParams& hp, std::size_t trial) {
            return asci_inner_cv_mcc(systems, hp, thresholds, mix_seed(seed, trial));
        });
}

std::string serialize_hyper_params(const HyperParams& hp) {
    json out = {{"eta", hp.eta}, {"lambda", hp.lambda}, {"gamma", hp.gamma}, {"layer_sizes", hp.layer_sizes}};
    return out.dump(2) + "\n";
}

HyperParams load_hyper_params(const std::string& document) {
    const json doc = parse_json_document(document);
    HyperParams hp;
    hp.eta = require_number(doc, "eta", "hyper-parameters");
    hp.lambda = require_number(doc, "lambda", "hyper-parameters");
    hp.gamma = require_number(doc, "gamma", "hyper-parameters");
    hp.layer_sizes.clear();
    for (const json& size : require_array(doc, "layer_sizes", "hyper-parameters")) {
        if (!size.is_number_integer()) {
            throw ParseError("layer_sizes must hold integers");
        }
        hp.layer_sizes.push_back(size.get<int>());
    }
    try {
        hp.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return hp;
}

std::string serialize_tree_hyper_params(const TreeHyperParams& hp) {
    json out = {{"max_features", std::string(to_string(hp.max_features))},
                {"max_depth", hp.max_depth},
                {"min_samples_leaf", hp.min_samples_leaf},
                {"min_samples_split", hp.min_samples_split}};
    return out.dump(2) + "\n";
}

TreeHyperParams load_tree_hyper_params(const std::string& document) {
    const json doc = parse_json_document(document);
    TreeHyperParams hp;
    try {
        hp.max_features = parse_max_features(require_string(doc, "max_features", "tree hyper-parameters"));
        hp.max_depth = require_int(doc, "max_depth", "tree hyper-parameters");
        hp.min_samples_leaf = require_int(doc, "min_samples_leaf", "tree hyper-parameters");
        hp.min_samples_split = require_number(doc, "min_samples_split", "tree hyper-parameters");
        hp.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return hp;
}

} // namespace smad
