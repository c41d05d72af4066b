#pragma once

#include "smad/candidates.hpp"
#include "smad/code_model.hpp"
#include "smad/history.hpp"
#include "smad/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smad {

struct SmellRates {
    double god_class = 0.05;     ///< injected God Classes per generated class
    double feature_envy = 0.05;  ///< injected Feature Envy methods per generated class
};

/// Generator knobs. Every value is written to the corpus manifest.
struct SynthParams {
    int n_classes = 200;
    SmellRates rates;
    int history_length = 400;           ///< background commits before injected ones
    double data_class_share = 0.15;
    double noise_rate = 0.04;           ///< single-symptom decoys per symptom, per generated class
    double symptom_probability = 0.75;  ///< chance of each symptom on an injected smell; two are always kept

    /// Throws std::invalid_argument unless n_classes >= 10, history_length >= 1 and every
    /// rate lies in [0, 0.2] (shares and probabilities in [0, 1]).
    void validate() const;
};

struct GroundTruth {
    std::vector<std::string> god_classes;     ///< sorted
    std::vector<CandidatePair> feature_envy;  ///< sorted

    bool operator==(const GroundTruth&) const = default;
};

/// One injected smell or decoy with the symptoms it was given.
/// God Class symptoms: "structure", "history", "concepts".
/// Feature Envy symptoms: "data_access", "move", "history".
struct Injection {
    AntiPattern pattern = AntiPattern::GodClass;
    std::string entity;  ///< class name or CandidatePair::label()
    bool smell = true;   ///< false for decoys
    std::vector<std::string> symptoms;

    bool operator==(const Injection&) const = default;
};

struct SyntheticSystem {
    std::uint64_t seed = 0;
    SynthParams params;
    SystemModel model;
    ChangeHistory history;
    GroundTruth truth;
    std::vector<Injection> injections;
};

/// Cohesive baseline classes and DataClasses, then God Classes and Feature Envy
/// methods injected at the requested rates, each showing at least two of its three
/// detector-facing symptoms, plus single-symptom decoys. Deterministic in the seed.
SyntheticSystem synth_generate(std::uint64_t seed, const SynthParams& params, const std::string& system_id = "synth");

/// Systems "sys0".."sys<n-1>", each generated with mix_seed(seed, i).
std::vector<SyntheticSystem> synth_corpus(std::uint64_t seed, int systems, const SynthParams& params);

} // namespace smad
