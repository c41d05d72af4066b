#pragma once

#include "smad/features.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smad {

struct HyperParams {
    double eta = 0.1;
    double lambda = 0.01;
    double gamma = 5.0;
    std::vector<int> layer_sizes{16};

    /// Throws std::invalid_argument unless eta, lambda in [10^-2.5, 1], gamma in [1, 10],
    /// 1..3 hidden layers sized in [4, 100] and non-increasing.
    void validate() const;
    bool operator==(const HyperParams&) const = default;
};

/// Dense layer y = x W + b with W stored [in x out] row-major.
struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    bool operator==(const DenseLayer&) const = default;
};

/// tanh hidden layers followed by one sigmoid output unit. The last layer has out == 1.
struct Network {
    std::vector<DenseLayer> layers;

    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in; }
    std::size_t hidden_layer_count() const { return layers.empty() ? 0 : layers.size() - 1; }
    /// Throws std::invalid_argument when adjacent dimensions disagree or the output is not scalar.
    void validate() const;
    bool operator==(const Network&) const = default;
};

/// Gaussian init with standard deviation 1/sqrt(fan_in); biases start at 0.
Network initialize_network(std::size_t input_dim, std::span<const int> hidden_sizes, std::uint64_t seed);

/// Row-major instance matrix with binary labels.
struct LabeledBatch {
    std::size_t dim = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> labels;

    LabeledBatch() = default;
    explicit LabeledBatch(std::size_t dimension) : dim(dimension) {}

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t positives() const noexcept;
    std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
    /// Throws std::invalid_argument on a dimension mismatch.
    void add(std::span<const double> x, bool label);
};

struct MlpModel {
    std::optional<FeatureSchema> schema;  ///< absent for ad-hoc inputs
    HyperParams hp;
    NormStats norm;  ///< applied to raw inputs before the first layer
    Network net;

    std::size_t input_dim() const { return net.input_dim(); }
    bool operator==(const MlpModel&) const = default;
};

/// Identity normalisation of the given width.
NormStats identity_norm(std::size_t dim);
/// Population mean / stddev per column; zero-variance columns keep scale 1.
NormStats fit_norm(const LabeledBatch& batch, std::optional<FeatureSchema> schema = {});
LabeledBatch standardized(const NormStats& norm, const LabeledBatch& batch);

inline double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

struct ForwardResult {
    double logit = 0.0;
    double probability = 0.5;
};

/// Raw instance in, normalised by model.norm. Throws std::invalid_argument on a
/// dimension or schema mismatch.
ForwardResult forward(const MlpModel& model, std::span<const double> instance);
ForwardResult forward(const MlpModel& model, const FeatureVector& instance);

/// Logits of already-normalised rows.
std::vector<double> network_logits(const Network& net, const LabeledBatch& inputs);

/// Per-batch objective on logits. evaluate returns the loss term and writes
/// dLoss/dlogit into `dlogit` (same length as logits).
class Objective {
public:
    virtual ~Objective() = default;
    virtual double evaluate(std::span<const double> logits, std::span<const std::uint8_t> labels,
                            std::span<double> dlogit) const = 0;
};

/// -MCC surrogate with p_i = sigmoid(gamma * z_i). Single-class batches return 0
/// loss with zero gradient.
class MccSurrogateObjective final : public Objective {
public:
    explicit MccSurrogateObjective(double gamma) : gamma_(gamma) {}
    double evaluate(std::span<const double> logits, std::span<const std::uint8_t> labels,
                    std::span<double> dlogit) const override;

private:
    double gamma_;
};

/// Mean binary cross-entropy of sigmoid(z). Used as the reference loss when
/// contrasting with the MCC surrogate on imbalanced data.
class CrossEntropyObjective final : public Objective {
public:
    double evaluate(std::span<const double> logits, std::span<const std::uint8_t> labels,
                    std::span<double> dlogit) const override;
};

inline constexpr double kMccEpsilon = 1e-7;

/// Surrogate MCC from logits. Returns 0 for a single-class batch.
double surrogate_mcc_from_logits(std::span<const double> logits, std::span<const std::uint8_t> labels, double gamma);
/// Thresholded MCC (logit > 0 is positive); 0 when the denominator vanishes.
double hard_mcc_from_logits(std::span<const double> logits, std::span<const std::uint8_t> labels);

/// Batch of raw instances, normalised by model.norm.
double surrogate_mcc(const MlpModel& model, const LabeledBatch& batch, double gamma);
double hard_mcc(const MlpModel& model, const LabeledBatch& batch);

/// sum over weight matrices of the Frobenius norm; biases excluded.
double weight_norm_sum(const Network& net);

/// -surrogate_mcc + lambda * weight_norm_sum. Uses hp.gamma and hp.lambda.
double loss(const MlpModel& model, const LabeledBatch& batch, const HyperParams& hp);

struct NetworkGradient {
    std::vector<std::vector<double>> weights;  ///< same shapes as the layers
    std::vector<std::vector<double>> bias;
};

struct LossAndGradient {
    double loss = 0.0;
    NetworkGradient gradient;
};

/// Exact gradient of objective + lambda * weight_norm_sum on normalised inputs.
LossAndGradient network_loss_gradient(const Network& net, const LabeledBatch& inputs, const Objective& objective,
                                      double lambda);

/// Gradient of `loss` with respect to the model's weights and biases.
NetworkGradient gradient(const MlpModel& model, const LabeledBatch& batch, const HyperParams& hp);

struct TrainOptions {
    int epochs = 120;
    int decay_start = 100;
    double decay_period = 20.0;
    /// Replaces the MCC surrogate when set (e.g. for a cross-entropy contrast).
    const Objective* objective = nullptr;
    /// Called after every update with the 1-based epoch and the loss measured before it.
    std::function<void(int epoch, double loss, const Network& net)> on_epoch;
};

/// eta * 0.5^max(0, (epoch - decay_start) / decay_period), epochs counted from 1.
double learning_rate(double eta, int epoch, const TrainOptions& options = {});

/// Full-batch gradient descent on a raw batch. Fits norm stats on the batch.
/// Throws TrainingError when the batch lacks either label, std::invalid_argument on bad hp.
MlpModel train(const LabeledBatch& batch, const HyperParams& hp, std::uint64_t seed, const TrainOptions& options = {},
               std::optional<FeatureSchema> schema = {});

inline constexpr std::size_t kEnsembleSize = 10;

struct MlpEnsemble {
    std::vector<MlpModel> members;

    /// Throws std::invalid_argument unless there are kEnsembleSize members with one schema and norm.
    void validate() const;
    bool operator==(const MlpEnsemble&) const = default;
};

/// Members are seeded from (seed, index) and share the batch's norm stats.
MlpEnsemble train_ensemble(const LabeledBatch& batch, const HyperParams& hp, std::uint64_t seed,
                           const TrainOptions& options = {}, std::optional<FeatureSchema> schema = {},
                           std::size_t members = kEnsembleSize);

struct BoostedPrediction {
    double probability = 0.0;
    bool flagged = false;
};

/// Mean member probability; flagged iff strictly above 0.5.
BoostedPrediction boosted_predict(const MlpEnsemble& ensemble, std::span<const double> instance);
BoostedPrediction boosted_predict(const MlpEnsemble& ensemble, const FeatureVector& instance);

/// JSON with full round-trip precision. Loading throws ParseError / ValidationError.
std::string serialize_model(const MlpModel& model);
MlpModel load_model(const std::string& document);
std::string serialize_ensemble(const MlpEnsemble& ensemble);
MlpEnsemble load_ensemble(const std::string& document);

/// Deterministic 64-bit mix used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace smad
