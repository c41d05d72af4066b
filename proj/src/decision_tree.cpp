#include "json_util.hpp"
#include "smad/baselines.hpp"
#include "smad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace smad {

std::string_view to_string(MaxFeatures mode) {
    switch (mode) {
    case MaxFeatures::Sqrt:
        return "sqrt";
    case MaxFeatures::Log2:
        return "log2";
    case MaxFeatures::All:
        break;
    }
    return "all";
}

MaxFeatures parse_max_features(std::string_view text) {
    if (text == "sqrt") {
        return MaxFeatures::Sqrt;
    }
    if (text == "log2") {
        return MaxFeatures::Log2;
    }
    if (text == "all" || text == "none" || text == "None") {
        return MaxFeatures::All;
    }
    throw std::invalid_argument("max_features must be sqrt|log2|all, got '" + std::string(text) + "'");
}

std::size_t features_per_split(MaxFeatures mode, std::size_t feature_count) {
    const double d = static_cast<double>(feature_count);
    std::size_t k = feature_count;
    if (mode == MaxFeatures::Sqrt) {
        k = static_cast<std::size_t>(std::floor(std::sqrt(d)));
    } else if (mode == MaxFeatures::Log2) {
        k = feature_count > 0 ? static_cast<std::size_t>(std::floor(std::log2(d))) : 0;
    }
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(feature_count, 1));
}

void TreeHyperParams::validate() const {
    if (max_depth < 10 || max_depth > 100 || max_depth % 10 != 0) {
        throw std::invalid_argument("max_depth must be one of 10, 20, ..., 100");
    }
    if (min_samples_leaf < 1 || min_samples_leaf > 5) {
        throw std::invalid_argument("min_samples_leaf must lie in [1, 5]");
    }
    if (!(min_samples_split >= 1e-4 * (1.0 - 1e-12) && min_samples_split <= 1e-1 * (1.0 + 1e-12))) {
        throw std::invalid_argument("min_samples_split must lie in [10^-4, 10^-1]");
    }
}

void SelectorSet::add(std::span<const double> x, Tool label) {
    if (x.size() != dim) {
        throw std::invalid_argument("selector instance has the wrong dimension");
    }
    values.insert(values.end(), x.begin(), x.end());
    labels.push_back(label);
}

Tool DecisionTree::predict(std::span<const double> x) const {
    if (x.size() != feature_count) {
        throw std::invalid_argument("tree expects " + std::to_string(feature_count) + " features, got " +
                                    std::to_string(x.size()));
    }
    if (nodes.empty()) {
        throw std::invalid_argument("empty tree");
    }
    std::size_t at = 0;
    while (!nodes[at].leaf()) {
        const TreeNode& node = nodes[at];
        at = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                                  : node.right);
    }
    return nodes[at].label;
}

int DecisionTree::depth() const {
    if (nodes.empty()) {
        return 0;
    }
    int deepest = 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [index, level] = stack.back();
        stack.pop_back();
        const TreeNode& node = nodes[static_cast<std::size_t>(index)];
        if (node.leaf()) {
            deepest = std::max(deepest, level);
        } else {
            stack.emplace_back(node.left, level + 1);
            stack.emplace_back(node.right, level + 1);
        }
    }
    return deepest;
}

namespace {

using Counts = std::array<std::size_t, 3>;

double gini(const Counts& counts, std::size_t total) {
    if (total == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t c : counts) {
        const double share = static_cast<double>(c) / static_cast<double>(total);
        sum += share * share;
    }
    return 1.0 - sum;
}

Tool majority(const Counts& counts) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < counts.size(); ++t) {
        if (counts[t] > counts[best]) {
            best = t;
        }
    }
    return static_cast<Tool>(best);
}

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
};

class Builder {
public:
    Builder(const SelectorSet& data, const TreeHyperParams& hp, std::uint64_t seed)
        : data_(data), hp_(hp), rng_(seed), per_split_(features_per_split(hp.max_features, data.dim)),
          min_split_(hp.min_samples_split * static_cast<double>(data.size())) {
        tree_.feature_count = data.dim;
    }

    DecisionTree run() {
        std::vector<std::size_t> all(data_.size());
        std::iota(all.begin(), all.end(), 0);
        build(all, 0);
        return std::move(tree_);
    }

private:
    int build(std::vector<std::size_t>& members, int depth) {
        Counts counts{};
        for (std::size_t i : members) {
            ++counts[static_cast<std::size_t>(data_.labels[i])];
        }
        const int index = static_cast<int>(tree_.nodes.size());
        TreeNode node;
        node.label = majority(counts);
        node.samples = members.size();
        tree_.nodes.push_back(node);

        const std::size_t n = members.size();
        const double impurity = gini(counts, n);
        const std::size_t min_leaf = static_cast<std::size_t>(hp_.min_samples_leaf);
        if (impurity == 0.0 || depth >= hp_.max_depth || static_cast<double>(n) < min_split_ || n < 2 * min_leaf) {
            return index;
        }
        const Split split = best_split(members, n);
        if (split.feature < 0) {
            return index;
        }
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t i : members) {
            (value(i, static_cast<std::size_t>(split.feature)) <= split.threshold ? left : right).push_back(i);
        }
        members.clear();
        members.shrink_to_fit();
        const int left_index = build(left, depth + 1);
        const int right_index = build(right, depth + 1);
        TreeNode& stored = tree_.nodes[static_cast<std::size_t>(index)];
        stored.feature = split.feature;
        stored.threshold = split.threshold;
        stored.left = left_index;
        stored.right = right_index;
        return index;
    }

    /// Examines a random subset of features; when none of them admits a valid
    /// split the remaining features are tried in the same shuffled order.
    Split best_split(const std::vector<std::size_t>& members, std::size_t n) {
        std::vector<std::size_t> order(data_.dim);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng_);
        Split best;
        std::vector<std::size_t> sorted(members);
        for (std::size_t visited = 0; visited < order.size(); ++visited) {
            if (visited >= per_split_ && best.feature >= 0) {
                break;
            }
            const std::size_t f = order[visited];
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                const double va = value(a, f);
                const double vb = value(b, f);
                return va < vb || (va == vb && a < b);
            });
            Counts left{};
            Counts right{};
            for (std::size_t i : sorted) {
                ++right[static_cast<std::size_t>(data_.labels[i])];
            }
            const std::size_t min_leaf = static_cast<std::size_t>(hp_.min_samples_leaf);
            for (std::size_t pos = 0; pos + 1 < n; ++pos) {
                const std::size_t label = static_cast<std::size_t>(data_.labels[sorted[pos]]);
                ++left[label];
                --right[label];
                const double here = value(sorted[pos], f);
                const double next = value(sorted[pos + 1], f);
                const std::size_t n_left = pos + 1;
                if (here == next || n_left < min_leaf || n - n_left < min_leaf) {
                    continue;
                }
                const double weighted =
                    (static_cast<double>(n_left) * gini(left, n_left) +
                     static_cast<double>(n - n_left) * gini(right, n - n_left)) /
                    static_cast<double>(n);
                if (best.feature < 0 || weighted < best.impurity) {
                    double threshold = here + (next - here) / 2.0;
                    if (!(threshold < next)) {
                        threshold = here;
                    }
                    best = Split{static_cast<int>(f), threshold, weighted};
                }
            }
        }
        return best;
    }

    double value(std::size_t row, std::size_t feature) const { return data_.values[row * data_.dim + feature]; }

    const SelectorSet& data_;
    const TreeHyperParams& hp_;
    std::mt19937_64 rng_;
    std::size_t per_split_;
    double min_split_;
    DecisionTree tree_;
};

} // namespace

DecisionTree tree_train(const SelectorSet& data, const TreeHyperParams& hp, std::uint64_t seed) {
    hp.validate();
    if (data.size() == 0) {
        throw std::invalid_argument("cannot train a tree on an empty set");
    }
    if (data.dim == 0 || data.values.size() != data.size() * data.dim) {
        throw std::invalid_argument("malformed selector set");
    }
    return Builder(data, hp, seed).run();
}

namespace {

json node_to_json(const DecisionTree& tree, int index) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
    json out;
    out["label"] = std::string(to_string(node.label));
    out["samples"] = node.samples;
    if (!node.leaf()) {
        out["feature"] = node.feature;
        out["threshold"] = node.threshold;
        out["left"] = node_to_json(tree, node.left);
        out["right"] = node_to_json(tree, node.right);
    }
    return out;
}

int node_from_json(const json& doc, DecisionTree& tree, int depth) {
    if (depth > 1000) {
        throw ValidationError("tree nesting is too deep");
    }
    TreeNode node;
    try {
        node.label = parse_tool(require_string(doc, "label", "tree node"));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    node.samples = static_cast<std::size_t>(require_int(doc, "samples", "tree node"));
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);
    if (doc.contains("feature")) {
        const int feature = require_int(doc, "feature", "tree node");
        if (feature < 0 || static_cast<std::size_t>(feature) >= tree.feature_count) {
            throw ValidationError("tree node references feature " + std::to_string(feature));
        }
        const double threshold = require_number(doc, "threshold", "tree node");
        const int left = node_from_json(require(doc, "left", "tree node"), tree, depth + 1);
        const int right = node_from_json(require(doc, "right", "tree node"), tree, depth + 1);
        TreeNode& stored = tree.nodes[static_cast<std::size_t>(index)];
        stored.feature = feature;
        stored.threshold = threshold;
        stored.left = left;
        stored.right = right;
    }
    return index;
}

json tree_to_json(const DecisionTree& tree) {
    return {{"feature_count", tree.feature_count}, {"root", node_to_json(tree, 0)}};
}

DecisionTree tree_from_json(const json& doc) {
    DecisionTree tree;
    const int count = require_int(doc, "feature_count", "tree");
    if (count <= 0) {
        throw ValidationError("tree feature_count must be positive");
    }
    tree.feature_count = static_cast<std::size_t>(count);
    node_from_json(require(doc, "root", "tree"), tree, 0);
    return tree;
}

} // namespace

std::string serialize_tree(const DecisionTree& tree) {
    if (tree.nodes.empty()) {
        throw std::invalid_argument("cannot serialize an empty tree");
    }
    return tree_to_json(tree).dump(1);
}

DecisionTree load_tree(const std::string& document) {
    return tree_from_json(parse_json_document(document));
}

std::string serialize_asci(const AsciModel& model) {
    json out;
    out["format"] = "smad-asci";
    out["hyper_params"] = {{"max_features", std::string(to_string(model.hp.max_features))},
                           {"max_depth", model.hp.max_depth},
                           {"min_samples_leaf", model.hp.min_samples_leaf},
                           {"min_samples_split", model.hp.min_samples_split}};
    json trees = json::array();
    for (const DecisionTree& tree : model.trees) {
        trees.push_back(tree_to_json(tree));
    }
    out["trees"] = std::move(trees);
    return out.dump(1);
}

AsciModel load_asci(const std::string& document) {
    const json doc = parse_json_document(document);
    if (require_string(doc, "format", "asci model") != "smad-asci") {
        throw ParseError("not an ASCI model document");
    }
    AsciModel model;
    const json& hp = require(doc, "hyper_params", "asci model");
    try {
        model.hp.max_features = parse_max_features(require_string(hp, "max_features", "hyper_params"));
        model.hp.max_depth = require_int(hp, "max_depth", "hyper_params");
        model.hp.min_samples_leaf = require_int(hp, "min_samples_leaf", "hyper_params");
        model.hp.min_samples_split = require_number(hp, "min_samples_split", "hyper_params");
        model.hp.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    for (const json& tree : require_array(doc, "trees", "asci model")) {
        model.trees.push_back(tree_from_json(tree));
    }
    if (model.trees.empty()) {
        throw ValidationError("ASCI model has no trees");
    }
    return model;
}

} // namespace smad
