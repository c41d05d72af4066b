#include "smad/baselines.hpp"

#include "smad/confusion.hpp"
#include "smad/mlp.hpp"

#include <algorithm>
#include <stdexcept>

namespace smad {

bool vote(const ToolVerdicts& verdicts, int k) {
    if (k < 1 || k > 3) {
        throw std::invalid_argument("vote policy k must lie in [1, 3], got " + std::to_string(k));
    }
    int flagged = 0;
    for (bool v : verdicts) {
        flagged += v ? 1 : 0;
    }
    return flagged >= k;
}

std::array<double, 3> detector_mcc(std::span<const bool> labels, std::span<const ToolVerdicts> verdicts) {
    if (labels.size() != verdicts.size()) {
        throw std::invalid_argument("label and verdict counts differ");
    }
    std::array<ConfusionMatrix, 3> matrices{};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t t = 0; t < 3; ++t) {
            matrices[t].add(verdicts[i][t], labels[i]);
        }
    }
    return {mcc(matrices[0]), mcc(matrices[1]), mcc(matrices[2])};
}

std::vector<Tool> asci_build_training(std::span<const bool> labels, std::span<const ToolVerdicts> verdicts) {
    const std::array<double, 3> quality = detector_mcc(labels, verdicts);
    // Preference order: descending MCC, then the fixed Tool order.
    std::array<std::size_t, 3> ranked{0, 1, 2};
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t a, std::size_t b) { return quality[a] > quality[b]; });
    std::vector<Tool> out;
    out.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Tool chosen = static_cast<Tool>(ranked[0]);
        for (std::size_t t : ranked) {
            if (verdicts[i][t] == labels[i]) {
                chosen = static_cast<Tool>(t);
                break;
            }
        }
        out.push_back(chosen);
    }
    return out;
}

AsciModel asci_train(const SelectorSet& data, const TreeHyperParams& hp, std::uint64_t seed, std::size_t trees) {
    if (trees == 0) {
        throw std::invalid_argument("ASCI needs at least one tree");
    }
    AsciModel model;
    model.hp = hp;
    for (std::size_t i = 0; i < trees; ++i) {
        model.trees.push_back(tree_train(data, hp, mix_seed(seed, i)));
    }
    return model;
}

Tool asci_select(const AsciModel& model, std::span<const double> features) {
    if (model.trees.empty()) {
        throw std::invalid_argument("ASCI model has no trees");
    }
    std::array<int, 3> ballots{};
    for (const DecisionTree& tree : model.trees) {
        ++ballots[static_cast<std::size_t>(tree.predict(features))];
    }
    std::size_t best = 0;
    for (std::size_t t = 1; t < 3; ++t) {
        if (ballots[t] > ballots[best]) {
            best = t;
        }
    }
    return static_cast<Tool>(best);
}

bool asci_predict(const AsciModel& model, std::span<const double> features, const ToolVerdicts& verdicts) {
    return verdict_of(verdicts, asci_select(model, features));
}

} // namespace smad
