#pragma once

#include "smad/code_model.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smad {

/// Case-insensitive tokens matched against camel-case splits of class names.
struct Lexicon {
    std::vector<std::string> tokens;  ///< stored lower-case

    static Lexicon controller_default();
    explicit Lexicon(std::vector<std::string> words = {});
    bool contains(std::string_view token) const;
};

struct ClassStructuralProfile {
    int nmd = 0;
    int nad = 0;
    double lcom5 = 0.0;
    int accessor_count = 0;
    bool is_controller = false;
};

struct ThresholdSet {
    double nmd_nad_threshold = 1.0;
    double lcom_threshold = 1.0;
    int data_class_accessor_threshold = 2;
};

/// Jaccard distance between entity sets; 1 when both sets are empty.
double jaccard_distance(const EntitySet& a, const EntitySet& b);
double jaccard_entity(EntityHandle a, EntityHandle b, const SystemModel& model);
double jaccard_entity(std::string_view a, std::string_view b, const SystemModel& model);

/// Distance from an entity's set to the set of the class's own attributes and methods.
double jaccard_entity_class(EntityHandle e, std::size_t class_index, const SystemModel& model);
double jaccard_entity_class(std::string_view entity_id, std::string_view class_name, const SystemModel& model);

/// Henderson-Sellers LCOM*, clamped to [0,1]; 0 with fewer than two methods or no attributes.
double lcom5(std::size_t class_index, const SystemModel& model);

/// "HTTPRequestHandler2" -> {"HTTP", "Request", "Handler", "2"}. Only the simple name
/// (after the last '.') is split.
std::vector<std::string> split_identifier(std::string_view qualified_name);
bool is_controller_name(std::string_view qualified_name, const Lexicon& lexicon);

ClassStructuralProfile class_profile(std::size_t class_index, const SystemModel& model, const Lexicon& lexicon);
ClassStructuralProfile class_profile(std::string_view class_name, const SystemModel& model, const Lexicon& lexicon);

struct InCodeMetrics {
    int atfd = 0;      ///< distinct attributes of the target class accessed
    double laa = 0.0;  ///< target accesses / (target + own accesses), with multiplicity
    int fdp = 0;       ///< distinct foreign classes whose attributes are accessed
};

/// Throws std::invalid_argument when the target is the method's own class.
InCodeMetrics incode_metrics(EntityHandle method, std::size_t target_class, const SystemModel& model);
InCodeMetrics incode_metrics(std::string_view method_id, std::string_view target_class, const SystemModel& model);

struct ThresholdPolicy {
    double stddev_factor = 1.5;
    double floor = 1.0;
};

/// mean + k * population stddev, floored. Throws std::invalid_argument on empty input.
double system_threshold(std::span<const double> values, const ThresholdPolicy& policy = {});

/// Thresholds for the DECOR-style rule card, computed over every class of the model.
ThresholdSet compute_thresholds(const SystemModel& model, int data_class_accessor_threshold = 2,
                                const ThresholdPolicy& policy = {});

} // namespace smad
