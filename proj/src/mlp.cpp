#include "smad/mlp.hpp"

#include "json_util.hpp"
#include "mlp_internal.hpp"
#include "smad/errors.hpp"
#include "smad/kernels/dense.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace smad {

namespace {

constexpr double kMinLogScale = -2.5;

bool in_log_range(double value) {
    const double lo = std::pow(10.0, kMinLogScale);
    return value >= lo * (1.0 - 1e-12) && value <= 1.0 * (1.0 + 1e-12);
}

} // namespace

void HyperParams::validate() const {
    if (!in_log_range(eta)) {
        throw std::invalid_argument("eta must lie in [10^-2.5, 1]");
    }
    if (!in_log_range(lambda)) {
        throw std::invalid_argument("lambda must lie in [10^-2.5, 1]");
    }
    if (!(gamma >= 1.0 && gamma <= 10.0)) {
        throw std::invalid_argument("gamma must lie in [1, 10]");
    }
    if (layer_sizes.empty() || layer_sizes.size() > 3) {
        throw std::invalid_argument("an MLP needs 1 to 3 hidden layers");
    }
    for (std::size_t i = 0; i < layer_sizes.size(); ++i) {
        if (layer_sizes[i] < 4 || layer_sizes[i] > 100) {
            throw std::invalid_argument("hidden layer sizes must lie in [4, 100]");
        }
        if (i > 0 && layer_sizes[i] > layer_sizes[i - 1]) {
            throw std::invalid_argument("hidden layer sizes must be non-increasing");
        }
    }
}

void Network::validate() const {
    if (layers.empty()) {
        throw std::invalid_argument("network has no layers");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const DenseLayer& layer = layers[l];
        if (layer.in == 0 || layer.out == 0 || layer.weights.size() != layer.in * layer.out ||
            layer.bias.size() != layer.out) {
            throw std::invalid_argument("layer " + std::to_string(l) + " has inconsistent shapes");
        }
        if (l > 0 && layers[l - 1].out != layer.in) {
            throw std::invalid_argument("layer " + std::to_string(l) + " input does not match previous output");
        }
    }
    if (layers.back().out != 1) {
        throw std::invalid_argument("output layer must have a single unit");
    }
}

Network initialize_network(std::size_t input_dim, std::span<const int> hidden_sizes, std::uint64_t seed) {
    if (input_dim == 0) {
        throw std::invalid_argument("input dimension must be positive");
    }
    std::mt19937_64 rng(seed);
    Network net;
    std::size_t in = input_dim;
    auto add_layer = [&](std::size_t out) {
        DenseLayer layer;
        layer.in = in;
        layer.out = out;
        layer.weights.resize(in * out);
        layer.bias.assign(out, 0.0);
        std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(in)));
        for (double& w : layer.weights) {
            w = normal(rng);
        }
        net.layers.push_back(std::move(layer));
        in = out;
    };
    for (int size : hidden_sizes) {
        if (size <= 0) {
            throw std::invalid_argument("hidden layer sizes must be positive");
        }
        add_layer(static_cast<std::size_t>(size));
    }
    add_layer(1);
    return net;
}

std::size_t LabeledBatch::positives() const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
}

void LabeledBatch::add(std::span<const double> x, bool label) {
    if (x.size() != dim) {
        throw std::invalid_argument("instance has " + std::to_string(x.size()) + " features, batch expects " +
                                    std::to_string(dim));
    }
    values.insert(values.end(), x.begin(), x.end());
    labels.push_back(label ? 1 : 0);
}

NormStats identity_norm(std::size_t dim) {
    NormStats norm;
    norm.mean.assign(dim, 0.0);
    norm.scale.assign(dim, 1.0);
    return norm;
}

NormStats fit_norm(const LabeledBatch& batch, std::optional<FeatureSchema> schema) {
    if (batch.size() == 0) {
        throw std::invalid_argument("cannot fit normalisation on an empty batch");
    }
    NormStats norm = identity_norm(batch.dim);
    if (schema) {
        norm.schema = *schema;
    }
    const std::size_t n = batch.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < batch.dim; ++d) {
            norm.mean[d] += batch.values[i * batch.dim + d];
        }
    }
    for (double& m : norm.mean) {
        m /= static_cast<double>(n);
    }
    std::vector<double> squares(batch.dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < batch.dim; ++d) {
            const double diff = batch.values[i * batch.dim + d] - norm.mean[d];
            squares[d] += diff * diff;
        }
    }
    for (std::size_t d = 0; d < batch.dim; ++d) {
        const double stddev = std::sqrt(squares[d] / static_cast<double>(n));
        norm.scale[d] = stddev > 0.0 ? stddev : 1.0;
    }
    return norm;
}

LabeledBatch standardized(const NormStats& norm, const LabeledBatch& batch) {
    if (norm.mean.size() != batch.dim) {
        throw std::invalid_argument("normalisation width does not match the batch");
    }
    LabeledBatch out = batch;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        standardize_in_place(norm, std::span<double>(out.values.data() + i * batch.dim, batch.dim));
    }
    return out;
}

namespace detail {

void Workspace::prepare(const Network& net, std::size_t n) {
    const std::size_t layers = net.layers.size();
    activations.resize(layers);
    deltas.resize(layers);
    transposed.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const DenseLayer& layer = net.layers[l];
        activations[l].resize(n * layer.out);
        deltas[l].resize(n * layer.out);
        transposed[l].resize(layer.in * layer.out);
    }
    dlogit.resize(n);
    rows = n;
}

const double* forward_pass(const Network& net, const double* x, std::size_t n, Workspace& ws) {
    if (ws.rows != n || ws.activations.size() != net.layers.size()) {
        ws.prepare(net, n);
    }
    const double* input = x;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const DenseLayer& layer = net.layers[l];
        double* z = ws.activations[l].data();
        kernels::matmul(input, layer.in, 1, layer.weights.data(), z, n, layer.in, layer.out, false);
        kernels::add_row_bias(z, layer.bias.data(), n, layer.out);
        if (l + 1 < net.layers.size()) {
            kernels::tanh_inplace(z, n * layer.out);
        }
        input = z;
    }
    return ws.activations.back().data();
}

void backward_pass(const Network& net, const double* x, std::size_t n, Workspace& ws, NetworkGradient& grad) {
    const std::size_t last = net.layers.size() - 1;
    std::copy(ws.dlogit.begin(), ws.dlogit.end(), ws.deltas[last].begin());
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const DenseLayer& layer = net.layers[l];
        const double* delta = ws.deltas[l].data();
        const double* input = l == 0 ? x : ws.activations[l - 1].data();
        // dW = input^T * delta, read through strides without materialising input^T.
        kernels::matmul(input, 1, layer.in, delta, grad.weights[l].data(), layer.in, n, layer.out, false);
        kernels::column_sums(delta, n, layer.out, grad.bias[l].data());
        if (l == 0) {
            break;
        }
        double* wt = ws.transposed[l].data();
        for (std::size_t i = 0; i < layer.in; ++i) {
            for (std::size_t j = 0; j < layer.out; ++j) {
                wt[j * layer.in + i] = layer.weights[i * layer.out + j];
            }
        }
        double* previous = ws.deltas[l - 1].data();
        kernels::matmul(delta, layer.out, 1, wt, previous, n, layer.out, layer.in, false);
        kernels::tanh_backward(previous, ws.activations[l - 1].data(), n * layer.in);
    }
}

double add_l2(const Network& net, double lambda, NetworkGradient& grad) {
    double total = 0.0;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const std::vector<double>& w = net.layers[l].weights;
        const double norm = std::sqrt(kernels::dot(w.data(), w.data(), w.size()));
        total += norm;
        if (lambda != 0.0 && norm > 0.0) {
            const double factor = lambda / norm;
            std::vector<double>& g = grad.weights[l];
            for (std::size_t i = 0; i < w.size(); ++i) {
                g[i] += factor * w[i];
            }
        }
    }
    return lambda * total;
}

NetworkGradient zero_gradient(const Network& net) {
    NetworkGradient grad;
    for (const DenseLayer& layer : net.layers) {
        grad.weights.emplace_back(layer.weights.size(), 0.0);
        grad.bias.emplace_back(layer.bias.size(), 0.0);
    }
    return grad;
}

} // namespace detail

namespace {

void check_batch(const Network& net, const LabeledBatch& batch) {
    net.validate();
    if (batch.dim != net.input_dim()) {
        throw std::invalid_argument("batch has " + std::to_string(batch.dim) + " features, network expects " +
                                    std::to_string(net.input_dim()));
    }
    if (batch.values.size() != batch.size() * batch.dim) {
        throw std::invalid_argument("batch values do not match its label count");
    }
}

std::vector<double> model_logits(const MlpModel& model, const LabeledBatch& batch) {
    return network_logits(model.net, standardized(model.norm, batch));
}

} // namespace

ForwardResult forward(const MlpModel& model, std::span<const double> instance) {
    model.net.validate();
    if (instance.size() != model.input_dim()) {
        throw std::invalid_argument("instance has " + std::to_string(instance.size()) + " features, model expects " +
                                    std::to_string(model.input_dim()));
    }
    std::vector<double> x(instance.begin(), instance.end());
    standardize_in_place(model.norm, x);
    detail::Workspace ws;
    const double z = *detail::forward_pass(model.net, x.data(), 1, ws);
    return {z, sigmoid(z)};
}

ForwardResult forward(const MlpModel& model, const FeatureVector& instance) {
    if (model.schema && *model.schema != instance.schema) {
        throw std::invalid_argument("instance schema " + std::string(to_string(instance.schema)) +
                                    " does not match model schema " + std::string(to_string(*model.schema)));
    }
    return forward(model, std::span<const double>(instance.values));
}

std::vector<double> network_logits(const Network& net, const LabeledBatch& inputs) {
    check_batch(net, inputs);
    if (inputs.size() == 0) {
        return {};
    }
    detail::Workspace ws;
    const double* z = detail::forward_pass(net, inputs.values.data(), inputs.size(), ws);
    return std::vector<double>(z, z + inputs.size());
}

double MccSurrogateObjective::evaluate(std::span<const double> logits, std::span<const std::uint8_t> labels,
                                       std::span<double> dlogit) const {
    const std::size_t count = logits.size();
    std::fill(dlogit.begin(), dlogit.end(), 0.0);
    double pos = 0.0;
    for (std::uint8_t y : labels) {
        pos += y;
    }
    const double n = static_cast<double>(count);
    const double neg = n - pos;
    if (pos == 0.0 || neg == 0.0) {
        return 0.0;
    }
    double tp = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double p = sigmoid(gamma_ * logits[i]);
        dlogit[i] = p;
        m += p;
        if (labels[i]) {
            tp += p;
        }
    }
    const double numerator = tp * n - pos * m;
    const double denominator = std::sqrt(pos * neg * m * (n - m) + kMccEpsilon);
    const double mcc = numerator / denominator;
    const double shared = numerator * pos * neg * (n - 2.0 * m) / (2.0 * denominator * denominator * denominator);
    for (std::size_t i = 0; i < count; ++i) {
        const double p = dlogit[i];
        const double dmcc_dp = (n * labels[i] - pos) / denominator - shared;
        dlogit[i] = -dmcc_dp * gamma_ * p * (1.0 - p);
    }
    return -mcc;
}

double CrossEntropyObjective::evaluate(std::span<const double> logits, std::span<const std::uint8_t> labels,
                                       std::span<double> dlogit) const {
    const double n = static_cast<double>(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        const double z = logits[i];
        // log(1 + e^z) - y z, evaluated without overflow
        total += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - (labels[i] ? z : 0.0);
        dlogit[i] = (sigmoid(z) - labels[i]) / n;
    }
    return total / n;
}

double surrogate_mcc_from_logits(std::span<const double> logits, std::span<const std::uint8_t> labels, double gamma) {
    if (logits.size() != labels.size()) {
        throw std::invalid_argument("logit and label counts differ");
    }
    std::vector<double> scratch(logits.size());
    return -MccSurrogateObjective(gamma).evaluate(logits, labels, scratch);
}

double hard_mcc_from_logits(std::span<const double> logits, std::span<const std::uint8_t> labels) {
    if (logits.size() != labels.size()) {
        throw std::invalid_argument("logit and label counts differ");
    }
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    double tn = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        const bool predicted = logits[i] > 0.0;
        if (labels[i]) {
            (predicted ? tp : fn) += 1.0;
        } else {
            (predicted ? fp : tn) += 1.0;
        }
    }
    const double denominator = (tp + fn) * (tp + fp) * (tn + fp) * (tn + fn);
    if (denominator == 0.0) {
        return 0.0;
    }
    const double n = tp + fp + fn + tn;
    return (tp * n - (tp + fn) * (tp + fp)) / std::sqrt(denominator);
}

double surrogate_mcc(const MlpModel& model, const LabeledBatch& batch, double gamma) {
    return surrogate_mcc_from_logits(model_logits(model, batch), batch.labels, gamma);
}

double hard_mcc(const MlpModel& model, const LabeledBatch& batch) {
    return hard_mcc_from_logits(model_logits(model, batch), batch.labels);
}

double weight_norm_sum(const Network& net) {
    double total = 0.0;
    for (const DenseLayer& layer : net.layers) {
        double squares = 0.0;
        for (double w : layer.weights) {
            squares += w * w;
        }
        total += std::sqrt(squares);
    }
    return total;
}

double loss(const MlpModel& model, const LabeledBatch& batch, const HyperParams& hp) {
    return -surrogate_mcc(model, batch, hp.gamma) + hp.lambda * weight_norm_sum(model.net);
}

LossAndGradient network_loss_gradient(const Network& net, const LabeledBatch& inputs, const Objective& objective,
                                      double lambda) {
    check_batch(net, inputs);
    LossAndGradient result;
    result.gradient = detail::zero_gradient(net);
    if (inputs.size() == 0) {
        throw std::invalid_argument("gradient needs a non-empty batch");
    }
    detail::Workspace ws;
    const double* z = detail::forward_pass(net, inputs.values.data(), inputs.size(), ws);
    result.loss = objective.evaluate(std::span<const double>(z, inputs.size()), inputs.labels, ws.dlogit);
    detail::backward_pass(net, inputs.values.data(), inputs.size(), ws, result.gradient);
    result.loss += detail::add_l2(net, lambda, result.gradient);
    return result;
}

NetworkGradient gradient(const MlpModel& model, const LabeledBatch& batch, const HyperParams& hp) {
    return network_loss_gradient(model.net, standardized(model.norm, batch), MccSurrogateObjective(hp.gamma),
                                 hp.lambda)
        .gradient;
}

void MlpEnsemble::validate() const {
    if (members.size() != kEnsembleSize) {
        throw std::invalid_argument("an ensemble holds exactly " + std::to_string(kEnsembleSize) + " networks, got " +
                                    std::to_string(members.size()));
    }
    for (const MlpModel& member : members) {
        member.net.validate();
        if (member.schema != members.front().schema || member.norm != members.front().norm) {
            throw std::invalid_argument("ensemble members disagree on schema or normalisation");
        }
    }
}

BoostedPrediction boosted_predict(const MlpEnsemble& ensemble, std::span<const double> instance) {
    ensemble.validate();
    double sum = 0.0;
    for (const MlpModel& member : ensemble.members) {
        sum += forward(member, instance).probability;
    }
    const double probability = sum / static_cast<double>(ensemble.members.size());
    return {probability, probability > 0.5};
}

BoostedPrediction boosted_predict(const MlpEnsemble& ensemble, const FeatureVector& instance) {
    ensemble.validate();
    const auto& schema = ensemble.members.front().schema;
    if (schema && *schema != instance.schema) {
        throw std::invalid_argument("instance schema does not match the ensemble");
    }
    return boosted_predict(ensemble, std::span<const double>(instance.values));
}

namespace {

json model_to_json(const MlpModel& model) {
    json out;
    out["format"] = "smad-mlp";
    out["version"] = 1;
    out["schema"] = model.schema ? json(std::string(to_string(*model.schema))) : json(nullptr);
    out["hyper_params"] = {{"eta", model.hp.eta},
                           {"lambda", model.hp.lambda},
                           {"gamma", model.hp.gamma},
                           {"layer_sizes", model.hp.layer_sizes}};
    out["norm"] = {{"mean", model.norm.mean}, {"scale", model.norm.scale}};
    json layers = json::array();
    for (const DenseLayer& layer : model.net.layers) {
        layers.push_back({{"in", layer.in}, {"out", layer.out}, {"weights", layer.weights}, {"bias", layer.bias}});
    }
    out["layers"] = std::move(layers);
    return out;
}

std::vector<double> number_array(const json& object, const char* key, const std::string& where) {
    const json& array = require_array(object, key, where);
    std::vector<double> values;
    values.reserve(array.size());
    for (const json& v : array) {
        if (!v.is_number()) {
            throw ParseError("field '" + std::string(key) + "' in " + where + " must hold numbers");
        }
        values.push_back(v.get<double>());
    }
    return values;
}

MlpModel model_from_json(const json& doc) {
    const std::string where = "model";
    if (require_string(doc, "format", where) != "smad-mlp") {
        throw ParseError("not an MLP model document");
    }
    MlpModel model;
    const json& schema = require(doc, "schema", where);
    if (!schema.is_null()) {
        if (!schema.is_string()) {
            throw ParseError("field 'schema' must be a string or null");
        }
        try {
            model.schema = parse_feature_schema(schema.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        model.norm.schema = *model.schema;
    }
    const json& hp = require(doc, "hyper_params", where);
    model.hp.eta = require_number(hp, "eta", "hyper_params");
    model.hp.lambda = require_number(hp, "lambda", "hyper_params");
    model.hp.gamma = require_number(hp, "gamma", "hyper_params");
    model.hp.layer_sizes.clear();
    for (const json& size : require_array(hp, "layer_sizes", "hyper_params")) {
        if (!size.is_number_integer()) {
            throw ParseError("layer_sizes must hold integers");
        }
        model.hp.layer_sizes.push_back(size.get<int>());
    }
    const json& norm = require(doc, "norm", where);
    model.norm.mean = number_array(norm, "mean", "norm");
    model.norm.scale = number_array(norm, "scale", "norm");
    for (const json& layer_doc : require_array(doc, "layers", where)) {
        DenseLayer layer;
        layer.in = static_cast<std::size_t>(require_int(layer_doc, "in", "layer"));
        layer.out = static_cast<std::size_t>(require_int(layer_doc, "out", "layer"));
        layer.weights = number_array(layer_doc, "weights", "layer");
        layer.bias = number_array(layer_doc, "bias", "layer");
        model.net.layers.push_back(std::move(layer));
    }
    try {
        model.net.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (model.norm.mean.size() != model.input_dim() || model.norm.scale.size() != model.input_dim()) {
        throw ValidationError("normalisation width does not match the first layer");
    }
    if (model.net.hidden_layer_count() != model.hp.layer_sizes.size()) {
        throw ValidationError("layer_sizes does not match the stored layers");
    }
    for (std::size_t l = 0; l < model.hp.layer_sizes.size(); ++l) {
        if (static_cast<std::size_t>(model.hp.layer_sizes[l]) != model.net.layers[l].out) {
            throw ValidationError("layer_sizes does not match the stored layers");
        }
    }
    if (model.schema && feature_count(*model.schema) != model.input_dim()) {
        throw ValidationError("first layer width does not match the feature schema");
    }
    return model;
}

} // namespace

std::string serialize_model(const MlpModel& model) {
    return model_to_json(model).dump(1);
}

MlpModel load_model(const std::string& document) {
    return model_from_json(parse_json_document(document));
}

std::string serialize_ensemble(const MlpEnsemble& ensemble) {
    json out;
    out["format"] = "smad-ensemble";
    out["version"] = 1;
    json members = json::array();
    for (const MlpModel& member : ensemble.members) {
        members.push_back(model_to_json(member));
    }
    out["members"] = std::move(members);
    return out.dump(1);
}

MlpEnsemble load_ensemble(const std::string& document) {
    const json doc = parse_json_document(document);
    if (require_string(doc, "format", "ensemble") != "smad-ensemble") {
        throw ParseError("not an ensemble document");
    }
    MlpEnsemble ensemble;
    for (const json& member : require_array(doc, "members", "ensemble")) {
        ensemble.members.push_back(model_from_json(member));
    }
    try {
        ensemble.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return ensemble;
}

} // namespace smad
