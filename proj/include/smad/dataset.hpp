#pragma once

#include "smad/baselines.hpp"
#include "smad/config.hpp"
#include "smad/detectors.hpp"
#include "smad/features.hpp"
#include "smad/mlp.hpp"
#include "smad/synth.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace smad {

/// A system with its oracle.
struct LabeledSystem {
    std::string id;
    SystemModel model;
    ChangeHistory history;
    GroundTruth truth;
};

LabeledSystem labeled_system(SyntheticSystem system);

/// Thresholds of the detectors that have tunable parameters.
struct DetectorThresholds {
    double hist_gc_alpha = 8.0;  ///< percent
    double hist_fe_beta = 80.0;  ///< percent
    InCodeThresholds incode;

    static DetectorThresholds from(const AnalysisConfig& config);
    bool operator==(const DetectorThresholds&) const = default;
};

/// Instances of one anti-pattern in one system: entity, features, optional label and
/// the raw signals from which every detector verdict can be recomputed under other
/// thresholds.
struct InstanceTable {
    std::string system_id;
    FeatureSchema schema = FeatureSchema::GodClass6;
    std::vector<std::string> entities;     ///< class name or CandidatePair::label()
    std::vector<double> features;          ///< row-major
    std::vector<std::uint8_t> labels;      ///< empty when unlabeled

    std::vector<bool> rule_card;           ///< God Class: rule-card verdict (no tunable threshold)
    std::vector<bool> jdeodorant;          ///< concepts found / move suggested
    std::vector<double> hist_ratio;        ///< class or method co-change ratio
    std::vector<InCodeMethodStats> incode; ///< Feature Envy: method-level inputs
    std::vector<bool> incode_envied;       ///< Feature Envy: InCode attributes the envy to this pair's class

    std::size_t size() const noexcept { return entities.size(); }
    std::size_t dim() const noexcept { return feature_count(schema); }
    bool labeled() const noexcept { return !labels.empty(); }
    AntiPattern pattern() const noexcept {
        return schema == FeatureSchema::GodClass6 ? AntiPattern::GodClass : AntiPattern::FeatureEnvy;
    }
    std::span<const double> row(std::size_t i) const { return {features.data() + i * dim(), dim()}; }
    std::size_t positives() const noexcept;
};

/// Every class (God Class) or every filtered candidate pair (Feature Envy), in model
/// and candidate order. Labels come from the system's ground truth.
InstanceTable build_instances(const LabeledSystem& system, AntiPattern pattern, const AnalysisConfig& config = {});

ToolVerdicts detector_verdicts(const InstanceTable& table, std::size_t row, const DetectorThresholds& thresholds);
std::vector<ToolVerdicts> detector_verdicts(const InstanceTable& table, const DetectorThresholds& thresholds);

/// Rows of several tables stacked into a labelled batch of raw features.
LabeledBatch to_batch(std::span<const InstanceTable* const> tables);

/// Header "entity,label,<feature names>" followed by one row per instance; the label
/// cell is empty for unlabeled tables. Numbers are written round-trip exact.
void write_instances(std::ostream& out, const InstanceTable& table);
/// Reads entities, features and labels back. The schema is recognised from the
/// header. Throws ParseError on malformed text.
InstanceTable read_instances(const std::string& text);

} // namespace smad
