#pragma once

#include "smad/candidates.hpp"
#include "smad/code_model.hpp"
#include "smad/config.hpp"
#include "smad/detectors.hpp"
#include "smad/history.hpp"
#include "smad/types.hpp"

#include <array>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smad {

enum class FeatureSchema { GodClass6, FeatureEnvy7 };

std::size_t feature_count(FeatureSchema schema);
std::string_view to_string(FeatureSchema schema);
FeatureSchema parse_feature_schema(std::string_view text);
FeatureSchema schema_for(AntiPattern pattern);
/// Column names in vector order. This order is part of the model file format.
const std::vector<std::string>& feature_names(FeatureSchema schema);

struct FeatureVector {
    FeatureSchema schema = FeatureSchema::GodClass6;
    std::vector<double> values;

    bool operator==(const FeatureVector&) const = default;
};

/// Caches the per-system state (thresholds, DataClasses, move suggestions) so
/// that extracting every candidate of a system stays linear.
class FeatureExtractor {
public:
    FeatureExtractor(const SystemModel& model, const ChangeHistory& history, AnalysisConfig config);

    /// [associated DataClasses, [controller], (nmd+nad)/threshold, lcom/threshold,
    ///  class co-change ratio, extractable concepts]
    FeatureVector god_class_features(std::string_view class_name) const;

    /// [ATFD, LAA, FDP, method co-change ratio, access ratio envied/own,
    ///  distance ratio envied/own, [move suggested]]. Zero denominators follow the
    /// ratio-cap rule. Throws std::invalid_argument for an invalid pair.
    FeatureVector feature_envy_features(const CandidatePair& pair) const;

    const ThresholdSet& thresholds() const noexcept { return thresholds_; }
    const AnalysisConfig& config() const noexcept { return config_; }
    int associated_data_classes(std::size_t class_index) const;
    std::size_t concept_count(std::size_t class_index) const;
    bool move_suggested(const CandidatePair& pair) const { return suggestions_.contains(pair); }

private:
    const SystemModel& model_;
    const ChangeHistory& history_;
    AnalysisConfig config_;
    ThresholdSet thresholds_;
    std::vector<bool> data_classes_;
    std::set<CandidatePair> suggestions_;
};

FeatureVector god_class_features(std::string_view class_name, const SystemModel& model, const ChangeHistory& history,
                                 const AnalysisConfig& config);
FeatureVector feature_envy_features(const CandidatePair& pair, const SystemModel& model, const ChangeHistory& history,
                                    const AnalysisConfig& config);

/// Per-dimension z-score statistics. Zero-variance dimensions keep scale 1.
struct NormStats {
    FeatureSchema schema = FeatureSchema::GodClass6;
    std::vector<double> mean;
    std::vector<double> scale;

    bool operator==(const NormStats&) const = default;
};

/// Throws std::invalid_argument on empty input or mixed schemas.
NormStats standardize_fit(std::span<const FeatureVector> train);
FeatureVector standardize_apply(const NormStats& stats, const FeatureVector& vector);
void standardize_in_place(const NormStats& stats, std::span<double> values);

} // namespace smad
