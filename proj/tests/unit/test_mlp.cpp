#include "smad/errors.hpp"
#include "smad/mlp.hpp"

#include "../support/gradcheck.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace smad;
using namespace smad::testing;

namespace {

LabeledBatch separable_toy() {
    LabeledBatch batch(2);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int i = 0; i < 20; ++i) {
        const bool positive = i % 2 == 0;
        const double x = positive ? u(rng) : -u(rng);
        batch.add(std::vector<double>{x, u(rng) - 1.1}, positive);
    }
    return batch;
}

MlpModel constant_model(double probability) {
    MlpModel m;
    m.norm = identity_norm(2);
    m.net.layers.push_back({2, 1, {0.0, 0.0}, {std::log(probability / (1.0 - probability))}});
    return m;
}

} // namespace

TEST_CASE("analytic gradient matches central differences") {
    for (int layers = 1; layers <= 3; ++layers) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const GradCheck check = check_gradient(random_grad_case(seed + 17 * static_cast<std::uint64_t>(layers), layers));
            CAPTURE(layers);
            CHECK(check.components > 0);
            CHECK(check.max_relative_error <= 1e-4);
        }
    }
}

TEST_CASE("gradient special cases") {
    Network net;
    net.layers.push_back({2, 1, {3.0, 4.0}, {0.0}});
    CHECK(weight_norm_sum(net) == 5.0);

    LabeledBatch one_class(2);
    one_class.add(std::vector<double>{1.0, 2.0}, true);
    one_class.add(std::vector<double>{-1.0, 0.5}, true);
    const LossAndGradient g = network_loss_gradient(net, one_class, MccSurrogateObjective(5.0), 0.1);
    CHECK(g.loss == doctest::Approx(0.5));
    CHECK(g.gradient.weights[0][0] == doctest::Approx(0.1 * 3.0 / 5.0));
    CHECK(g.gradient.weights[0][1] == doctest::Approx(0.1 * 4.0 / 5.0));
    CHECK(g.gradient.bias[0][0] == 0.0);

    // zero weights: every logit equals the output bias, and at bias 0 the surrogate is flat in it
    Network flat = initialize_network(3, std::vector<int>{4}, 1);
    for (DenseLayer& layer : flat.layers) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
    }
    LabeledBatch batch(3);
    for (std::size_t i = 0; i < 12; ++i) {
        batch.add(std::vector<double>{double(i), -double(i), 1.0}, i % 3 == 0);
    }
    const LossAndGradient z = network_loss_gradient(flat, batch, MccSurrogateObjective(5.0), 0.0);
    CHECK(std::abs(z.gradient.bias.back()[0]) < 1e-12);
}

TEST_CASE("surrogate MCC examples") {
    const std::vector<double> logits{10.0, -10.0};
    const std::vector<std::uint8_t> labels{1, 0};
    CHECK(surrogate_mcc_from_logits(logits, labels, 10.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(hard_mcc_from_logits(logits, labels) == 1.0);

    const std::vector<double> zeros(6, 0.0);
    const std::vector<std::uint8_t> balanced{1, 0, 1, 0, 1, 0};
    CHECK(std::abs(surrogate_mcc_from_logits(zeros, balanced, 3.0)) < 1e-6);

    const std::vector<std::uint8_t> single{1, 1};
    CHECK(surrogate_mcc_from_logits(logits, single, 10.0) == 0.0);
}

TEST_CASE("surrogate approaches the hard MCC as gamma grows") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> magnitude(0.1, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> logits(30);
        std::vector<std::uint8_t> labels(30);
        for (std::size_t i = 0; i < logits.size(); ++i) {
            labels[i] = i % 4 == 0 ? 1 : 0;
            logits[i] = magnitude(rng) * ((rng() % 3 == 0) == (labels[i] == 1) ? 1.0 : -1.0);
        }
        const double hard = hard_mcc_from_logits(logits, labels);
        double previous = 2.0;
        for (double gamma : {20.0, 100.0, 1000.0}) {
            const double gap = std::abs(surrogate_mcc_from_logits(logits, labels, gamma) - hard);
            CHECK(gap < previous + 1e-12);
            previous = gap;
        }
        CHECK(previous < 1e-9);
    }
}

TEST_CASE("loss examples") {
    const GradCase c = random_grad_case(2, 2);
    MlpModel model;
    model.net = c.net;
    model.norm = identity_norm(c.batch.dim);
    HyperParams hp;
    hp.lambda = 0.0;
    hp.gamma = c.gamma;
    CHECK(loss(model, c.batch, hp) == -surrogate_mcc(model, c.batch, c.gamma));
    hp.lambda = 0.1;
    CHECK(loss(model, c.batch, hp) == doctest::Approx(reference_loss(c.net, c.batch, c.gamma, 0.1)).epsilon(1e-12));
}

TEST_CASE("learning rate schedule") {
    CHECK(learning_rate(0.2, 1) == 0.2);
    CHECK(learning_rate(0.2, 100) == 0.2);
    CHECK(learning_rate(0.2, 101) < learning_rate(0.2, 100));
    CHECK(learning_rate(0.2, 120) == doctest::Approx(0.1));
}

TEST_CASE("hyper-parameter validation") {
    HyperParams hp;
    CHECK_NOTHROW(hp.validate());
    hp.eta = 2.0;
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
    hp = {};
    hp.layer_sizes = {8, 16};
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
    hp.layer_sizes = {8, 8, 8, 8};
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
    hp.layer_sizes = {3};
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
    hp = {};
    hp.gamma = 0.5;
    CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
}

TEST_CASE("training separates a separable toy set and is reproducible") {
    const LabeledBatch batch = separable_toy();
    HyperParams hp;
    hp.eta = 0.1;
    hp.lambda = 0.005;
    hp.layer_sizes = {8};
    std::vector<double> trajectory;
    TrainOptions options;
    options.on_epoch = [&](int, double l, const Network&) { trajectory.push_back(l); };
    const MlpModel a = train(batch, hp, 42, options);
    CHECK(trajectory.size() == 120);
    CHECK(surrogate_mcc(a, batch, hp.gamma) > 0.95);
    for (std::size_t e = 1; e < 10; ++e) {
        CHECK(trajectory[e] <= trajectory[e - 1] + 1e-12);
    }
    const std::vector<double> first = trajectory;
    trajectory.clear();
    const MlpModel b = train(batch, hp, 42, options);
    CHECK(a == b);
    CHECK(trajectory == first);
    CHECK_FALSE(train(batch, hp, 43) == a);
}

TEST_CASE("training rejects degenerate batches") {
    LabeledBatch batch(2);
    batch.add(std::vector<double>{1.0, 2.0}, true);
    batch.add(std::vector<double>{2.0, 2.0}, true);
    CHECK_THROWS_AS(train(batch, HyperParams{}, 1), TrainingError);
    CHECK_THROWS_AS(batch.add(std::vector<double>{1.0}, false), std::invalid_argument);
}

TEST_CASE("boosted prediction") {
    MlpEnsemble same;
    same.members.assign(kEnsembleSize, constant_model(0.9));
    const std::vector<double> x{0.3, -0.2};
    CHECK(boosted_predict(same, x).probability == doctest::Approx(0.9));
    CHECK(boosted_predict(same, x).flagged);
    CHECK(boosted_predict(same, x).probability == doctest::Approx(forward(same.members[0], x).probability));

    MlpEnsemble split;
    for (std::size_t i = 0; i < kEnsembleSize; ++i) {
        split.members.push_back(constant_model(i < 5 ? 0.4 : 0.6));
    }
    CHECK(boosted_predict(split, x).probability == doctest::Approx(0.5));
    CHECK_FALSE(boosted_predict(split, x).flagged);

    const LabeledBatch batch = separable_toy();
    HyperParams hp;
    hp.layer_sizes = {4};
    MlpEnsemble trained = train_ensemble(batch, hp, 9);
    CHECK(trained.members.size() == kEnsembleSize);
    CHECK_FALSE(trained.members[0] == trained.members[1]);
    const double before = boosted_predict(trained, x).probability;
    std::reverse(trained.members.begin(), trained.members.end());
    CHECK(boosted_predict(trained, x).probability == doctest::Approx(before).epsilon(1e-15));
}

TEST_CASE("model files round-trip exactly") {
    const LabeledBatch batch = separable_toy();
    HyperParams hp;
    hp.layer_sizes = {6, 4};
    const MlpModel model = train(batch, hp, 5);
    const MlpModel again = load_model(serialize_model(model));
    CHECK(again == model);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(forward(again, batch.row(i)).probability == forward(model, batch.row(i)).probability);
    }
    const MlpEnsemble ensemble = train_ensemble(batch, hp, 5);
    CHECK(load_ensemble(serialize_ensemble(ensemble)) == ensemble);
    CHECK_THROWS_AS(load_model("{"), ParseError);
    CHECK_THROWS(load_model(R"({"schema": null})"));
}
