#include "mlp_internal.hpp"
#include "smad/errors.hpp"
#include "smad/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smad {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finaliser over the combined value
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double learning_rate(double eta, int epoch, const TrainOptions& options) {
    const double excess = std::max(0.0, static_cast<double>(epoch - options.decay_start) / options.decay_period);
    return eta * std::pow(0.5, excess);
}

namespace {

Network descend(const LabeledBatch& inputs, const HyperParams& hp, std::uint64_t seed, const TrainOptions& options) {
    Network net = initialize_network(inputs.dim, hp.layer_sizes, seed);
    const MccSurrogateObjective surrogate(hp.gamma);
    const Objective& objective = options.objective ? *options.objective : surrogate;
    const std::size_t n = inputs.size();
    const double* x = inputs.values.data();

    detail::Workspace ws;
    ws.prepare(net, n);
    NetworkGradient grad = detail::zero_gradient(net);
    for (int epoch = 1; epoch <= options.epochs; ++epoch) {
        const double* z = detail::forward_pass(net, x, n, ws);
        double value = objective.evaluate(std::span<const double>(z, n), inputs.labels, ws.dlogit);
        detail::backward_pass(net, x, n, ws, grad);
        value += detail::add_l2(net, hp.lambda, grad);
        if (!std::isfinite(value)) {
            throw TrainingError("loss became non-finite at epoch " + std::to_string(epoch));
        }
        const double rate = learning_rate(hp.eta, epoch, options);
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            DenseLayer& layer = net.layers[l];
            const std::vector<double>& gw = grad.weights[l];
            for (std::size_t i = 0; i < layer.weights.size(); ++i) {
                layer.weights[i] -= rate * gw[i];
            }
            const std::vector<double>& gb = grad.bias[l];
            for (std::size_t j = 0; j < layer.bias.size(); ++j) {
                layer.bias[j] -= rate * gb[j];
            }
        }
        if (options.on_epoch) {
            options.on_epoch(epoch, value, net);
        }
    }
    return net;
}

void check_trainable(const LabeledBatch& batch, const HyperParams& hp, const TrainOptions& options) {
    hp.validate();
    if (options.epochs < 0 || options.decay_period <= 0.0) {
        throw std::invalid_argument("invalid training schedule");
    }
    if (batch.dim == 0 || batch.values.size() != batch.size() * batch.dim) {
        throw std::invalid_argument("malformed training batch");
    }
    const std::size_t positives = batch.positives();
    if (positives == 0 || positives == batch.size()) {
        throw TrainingError("training data must contain both positive and negative instances (" +
                            std::to_string(positives) + " of " + std::to_string(batch.size()) + " positive)");
    }
}

} // namespace

MlpModel train(const LabeledBatch& batch, const HyperParams& hp, std::uint64_t seed, const TrainOptions& options,
               std::optional<FeatureSchema> schema) {
    check_trainable(batch, hp, options);
    MlpModel model;
    model.schema = schema;
    model.hp = hp;
    model.norm = fit_norm(batch, schema);
    model.net = descend(standardized(model.norm, batch), hp, seed, options);
    return model;
}

MlpEnsemble train_ensemble(const LabeledBatch& batch, const HyperParams& hp, std::uint64_t seed,
                           const TrainOptions& options, std::optional<FeatureSchema> schema, std::size_t members) {
    check_trainable(batch, hp, options);
    const NormStats norm = fit_norm(batch, schema);
    const LabeledBatch inputs = standardized(norm, batch);
    MlpEnsemble ensemble;
    for (std::size_t i = 0; i < members; ++i) {
        MlpModel model;
        model.schema = schema;
        model.hp = hp;
        model.norm = norm;
        model.net = descend(inputs, hp, mix_seed(seed, i), options);
        ensemble.members.push_back(std::move(model));
    }
    return ensemble;
}

} // namespace smad
