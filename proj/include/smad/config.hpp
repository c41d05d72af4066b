#pragma once

#include "smad/history.hpp"
#include "smad/metrics.hpp"

#include <string>

namespace smad {

struct InCodeThresholds {
    int atfd = 3;
    int laa = 3;  ///< own-access share must stay below 1/laa
    int fdp = 3;
};

/// Every knob of the detectors and feature extraction. Loadable from a JSON config
/// file; absent keys keep their defaults.
struct AnalysisConfig {
    Lexicon controller_lexicon = Lexicon::controller_default();
    int many_data_class_threshold = 1;
    int data_class_accessor_threshold = 2;
    ThresholdPolicy threshold_policy;
    double merge_threshold = 0.5;
    std::size_t min_concept_size = 2;
    double ratio_cap = kDefaultRatioCap;
    double hist_gc_alpha = 8.0;   ///< percent
    double hist_fe_beta = 80.0;   ///< percent
    InCodeThresholds incode;
};

AnalysisConfig load_analysis_config(const std::string& document);

} // namespace smad
