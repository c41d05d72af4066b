#pragma once

#include "smad/types.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smad {

/// Verdicts of the three detector families, indexed by Tool.
using ToolVerdicts = std::array<bool, 3>;

inline bool verdict_of(const ToolVerdicts& verdicts, Tool tool) {
    return verdicts[static_cast<std::size_t>(tool)];
}

/// True iff at least k of the three verdicts are true. Throws std::invalid_argument unless 1 <= k <= 3.
bool vote(const ToolVerdicts& verdicts, int k);

/// Per-instance label for the selector: which detector to trust.
/// Among the detectors whose verdict matches the oracle, the one with the highest
/// training MCC wins, then the fixed Tool order. When none is correct the
/// highest-MCC detector is used.
std::vector<Tool> asci_build_training(std::span<const bool> labels, std::span<const ToolVerdicts> verdicts);

/// Training-set MCC of each detector, indexed by Tool.
std::array<double, 3> detector_mcc(std::span<const bool> labels, std::span<const ToolVerdicts> verdicts);

enum class MaxFeatures { Sqrt, Log2, All };

std::string_view to_string(MaxFeatures mode);
MaxFeatures parse_max_features(std::string_view text);
/// Features examined per split: floor(sqrt d) or floor(log2 d), at least 1.
std::size_t features_per_split(MaxFeatures mode, std::size_t feature_count);

struct TreeHyperParams {
    MaxFeatures max_features = MaxFeatures::All;
    int max_depth = 100;
    int min_samples_leaf = 1;
    double min_samples_split = 1e-4;  ///< fraction of the training set size

    /// Throws std::invalid_argument unless max_depth in {10, 20, ..., 100},
    /// min_samples_leaf in [1, 5] and min_samples_split in [10^-4, 10^-1].
    void validate() const;
    bool operator==(const TreeHyperParams&) const = default;
};

/// Row-major feature matrix labelled with the detector to trust.
struct SelectorSet {
    std::size_t dim = 0;
    std::vector<double> values;
    std::vector<Tool> labels;

    SelectorSet() = default;
    explicit SelectorSet(std::size_t dimension) : dim(dimension) {}

    std::size_t size() const noexcept { return labels.size(); }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
    void add(std::span<const double> x, Tool label);
};

struct TreeNode {
    int feature = -1;  ///< -1 marks a leaf
    double threshold = 0.0;  ///< x[feature] <= threshold goes left
    int left = -1;
    int right = -1;
    Tool label = Tool::RuleCard;  ///< majority label of the node's samples
    std::size_t samples = 0;

    bool leaf() const noexcept { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
    std::size_t feature_count = 0;
    std::vector<TreeNode> nodes;  ///< nodes[0] is the root

    /// Throws std::invalid_argument on a dimension mismatch.
    Tool predict(std::span<const double> x) const;
    /// Longest root-to-leaf path counted in internal nodes.
    int depth() const;
    bool operator==(const DecisionTree&) const = default;
};

/// CART with Gini impurity. Throws std::invalid_argument on an empty set or bad hp.
DecisionTree tree_train(const SelectorSet& data, const TreeHyperParams& hp, std::uint64_t seed);

std::string serialize_tree(const DecisionTree& tree);
DecisionTree load_tree(const std::string& document);

/// Ten trees trained with derived seeds; each votes for a detector.
struct AsciModel {
    TreeHyperParams hp;
    std::vector<DecisionTree> trees;

    bool operator==(const AsciModel&) const = default;
};

inline constexpr std::size_t kAsciTrees = 10;

AsciModel asci_train(const SelectorSet& data, const TreeHyperParams& hp, std::uint64_t seed,
                     std::size_t trees = kAsciTrees);
/// Plurality of the trees' choices, ties broken by the fixed Tool order.
Tool asci_select(const AsciModel& model, std::span<const double> features);
/// Verdict of the selected detector.
bool asci_predict(const AsciModel& model, std::span<const double> features, const ToolVerdicts& verdicts);

std::string serialize_asci(const AsciModel& model);
AsciModel load_asci(const std::string& document);

} // namespace smad
