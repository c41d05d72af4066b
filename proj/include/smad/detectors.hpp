#pragma once

#include "smad/candidates.hpp"
#include "smad/code_model.hpp"
#include "smad/config.hpp"
#include "smad/history.hpp"
#include "smad/types.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace smad {

struct Verdict {
    Tool tool;
    AntiPattern pattern;
    std::string entity;  ///< class name, or CandidatePair::label()
    bool flagged;
};

struct ConceptCluster {
    std::vector<std::string> members;  ///< entity ids, all owned by one class
};

// ---- God Class -------------------------------------------------------------

/// accessor_count >= threshold and at least half of the methods are accessors.
bool is_data_class(const ClassStructuralProfile& profile, int accessor_threshold);
std::vector<bool> data_class_flags(const SystemModel& model, const AnalysisConfig& config);
/// DataClasses (other than the class itself) named by the class's attribute types.
int associated_data_class_count(std::size_t class_index, const SystemModel& model, const std::vector<bool>& data_classes);

/// Rule card: (associated DataClasses >= many) AND (controller OR large OR low cohesion).
bool decor_rule(int associated_data_classes, const ClassStructuralProfile& profile, const ThresholdSet& thresholds,
                int many_threshold);
std::vector<std::string> decor_god_class(const SystemModel& model, const AnalysisConfig& config);

bool hist_god_class_rule(double cochange_ratio, double alpha_percent);
std::vector<std::string> hist_god_class(const SystemModel& model, const ChangeHistory& history, double alpha_percent);

/// Extractable concepts of one class: average-linkage clusters over the class's own
/// members (each entity's set extended with the entity itself) that reach the minimum
/// size and are not the whole class.
std::vector<ConceptCluster> extract_class_concepts(std::size_t class_index, const SystemModel& model,
                                                   double merge_threshold, std::size_t min_concept_size);
std::map<std::string, std::vector<ConceptCluster>> jdeodorant_extract_class(const SystemModel& model,
                                                                            double merge_threshold,
                                                                            std::size_t min_concept_size);

// ---- Feature Envy ----------------------------------------------------------

/// Method-level inputs of the InCode rule.
struct InCodeMethodStats {
    int foreign_atfd = 0;    ///< distinct foreign attributes accessed
    double own_share = 0.0;  ///< own / (own + foreign) attribute accesses; 0 without accesses
    int fdp = 0;
    std::string envied_class;  ///< foreign class providing most distinct attributes (ties: lowest name)
};

InCodeMethodStats incode_method_stats(EntityHandle method, const SystemModel& model);
bool incode_rule(const InCodeMethodStats& stats, const InCodeThresholds& thresholds);
std::vector<CandidatePair> incode_feature_envy(const SystemModel& model, const InCodeThresholds& thresholds);

bool hist_feature_envy_rule(double cochange_ratio, double beta_percent);
std::vector<CandidatePair> hist_feature_envy(const SystemModel& model, const ChangeHistory& history,
                                             double beta_percent, double cap = kDefaultRatioCap);

struct MoveMethodDiagnostics {
    CandidatePair pair;
    std::size_t accessed_entities = 0;  ///< distinct entities of the target reached by the method
    double distance_to_target = 1.0;
    double distance_to_owner = 1.0;
    bool modifies_target = false;  ///< writes an attribute or calls a non-accessor method of the target
    bool suggested = false;
};

struct MoveMethodResult {
    std::vector<CandidatePair> suggestions;
    std::vector<MoveMethodDiagnostics> diagnostics;  ///< one row per examined pair, in walk order
};

MoveMethodResult jdeodorant_move_method(const SystemModel& model);

// ---- reports ---------------------------------------------------------------

/// Every detector on both anti-patterns with the thresholds in `config`.
std::vector<Verdict> run_detectors(const SystemModel& model, const ChangeHistory& history,
                                   const AnalysisConfig& config);
/// Rows "tool,anti_pattern,entity,flagged" with a header.
void write_verdicts(std::ostream& out, const std::vector<Verdict>& verdicts);

} // namespace smad
