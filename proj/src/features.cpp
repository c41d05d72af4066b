#include "smad/features.hpp"

#include "smad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smad {

// ---- candidates ------------------------------------------------------------

std::vector<std::size_t> accessed_foreign_classes(EntityHandle method_handle, const SystemModel& model) {
    const std::size_t owner = model.owner_index(method_handle);
    std::vector<std::size_t> classes;
    for (EntityHandle reached : model.entity_set(method_handle).members) {
        const std::size_t cls = model.owner_index(reached);
        if (cls != owner) {
            classes.push_back(cls);
        }
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

std::vector<CandidatePair> enumerate_fe_candidates(const SystemModel& model) {
    std::vector<CandidatePair> pairs;
    for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
        const ClassDecl& cls = model.class_decl(ci);
        for (std::size_t mi = 0; mi < cls.methods.size(); ++mi) {
            const MethodDecl& method = cls.methods[mi];
            if (method.is_static || method.is_accessor) {
                continue;
            }
            for (std::size_t target : accessed_foreign_classes(model.method_handle(ci, mi), model)) {
                pairs.push_back({method.entity_id, model.class_decl(target).qualified_name});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

// ---- schemas ---------------------------------------------------------------

std::size_t feature_count(FeatureSchema schema) {
    return schema == FeatureSchema::GodClass6 ? 6 : 7;
}

std::string_view to_string(FeatureSchema schema) {
    return schema == FeatureSchema::GodClass6 ? "GOD_CLASS_6" : "FEATURE_ENVY_7";
}

FeatureSchema parse_feature_schema(std::string_view text) {
    if (text == "GOD_CLASS_6") {
        return FeatureSchema::GodClass6;
    }
    if (text == "FEATURE_ENVY_7") {
        return FeatureSchema::FeatureEnvy7;
    }
    throw std::invalid_argument("unknown feature schema '" + std::string(text) + "'");
}

FeatureSchema schema_for(AntiPattern pattern) {
    return pattern == AntiPattern::GodClass ? FeatureSchema::GodClass6 : FeatureSchema::FeatureEnvy7;
}

const std::vector<std::string>& feature_names(FeatureSchema schema) {
    static const std::vector<std::string> god_class{"data_class_associations", "is_controller", "nmd_nad",
                                                    "lcom",                    "class_cochange", "concepts"};
    static const std::vector<std::string> feature_envy{"atfd",         "laa",           "fdp",           "method_cochange",
                                                       "access_ratio", "distance_ratio", "move_suggested"};
    return schema == FeatureSchema::GodClass6 ? god_class : feature_envy;
}

// ---- extraction ------------------------------------------------------------

namespace {

double kronecker(bool value) {
    return value ? 1.0 : 0.0;
}

double capped_ratio(double numerator, double denominator, double cap) {
    return denominator == 0.0 ? numerator * cap : numerator / denominator;
}

} // namespace

FeatureExtractor::FeatureExtractor(const SystemModel& model, const ChangeHistory& history, AnalysisConfig config)
    : model_(model), history_(history), config_(std::move(config)) {
    thresholds_ = compute_thresholds(model_, config_.data_class_accessor_threshold, config_.threshold_policy);
    data_classes_ = data_class_flags(model_, config_);
    const auto moves = jdeodorant_move_method(model_).suggestions;
    suggestions_.insert(moves.begin(), moves.end());
}

int FeatureExtractor::associated_data_classes(std::size_t class_index) const {
    return associated_data_class_count(class_index, model_, data_classes_);
}

std::size_t FeatureExtractor::concept_count(std::size_t class_index) const {
    return extract_class_concepts(class_index, model_, config_.merge_threshold, config_.min_concept_size).size();
}

FeatureVector FeatureExtractor::god_class_features(std::string_view class_name) const {
    const std::size_t ci = model_.class_index(class_name);
    const ClassStructuralProfile profile = class_profile(ci, model_, config_.controller_lexicon);
    FeatureVector vector{FeatureSchema::GodClass6, {}};
    vector.values = {
        static_cast<double>(associated_data_classes(ci)),
        kronecker(profile.is_controller),
        static_cast<double>(profile.nmd + profile.nad) / thresholds_.nmd_nad_threshold,
        profile.lcom5 / thresholds_.lcom_threshold,
        class_cochange_ratio(class_name, history_),
        static_cast<double>(concept_count(ci)),
    };
    return vector;
}

FeatureVector FeatureExtractor::feature_envy_features(const CandidatePair& pair) const {
    const auto method_handle = model_.find_entity(pair.method_id);
    const auto envied = model_.find_class(pair.envied_class);
    if (!method_handle || !envied || model_.info(*method_handle).kind != EntityKind::Method) {
        throw std::invalid_argument("unknown candidate pair '" + pair.label() + "'");
    }
    const std::size_t owner = model_.owner_index(*method_handle);
    if (owner == *envied) {
        throw std::invalid_argument("candidate pair '" + pair.label() + "' envies its own class");
    }
    const MethodDecl& method = model_.method(*method_handle);
    const InCodeMetrics incode = incode_metrics(*method_handle, *envied, model_);

    double envied_accesses = 0.0;
    double own_accesses = 0.0;
    for (const AttributeAccess& access : method.accesses) {
        if (access.external()) {
            continue;
        }
        const std::size_t cls = model_.owner_index(access.resolved);
        envied_accesses += cls == *envied ? access.count : 0;
        own_accesses += cls == owner ? access.count : 0;
    }
    for (const MethodCall& call : method.calls) {
        if (call.external()) {
            continue;
        }
        const std::size_t cls = model_.owner_index(call.resolved);
        envied_accesses += cls == *envied ? call.count : 0;
        own_accesses += cls == owner ? call.count : 0;
    }
    const double distance_envied = jaccard_entity_class(*method_handle, *envied, model_);
    const double distance_own = jaccard_entity_class(*method_handle, owner, model_);

    FeatureVector vector{FeatureSchema::FeatureEnvy7, {}};
    vector.values = {
        static_cast<double>(incode.atfd),
        incode.laa,
        static_cast<double>(incode.fdp),
        method_cochange_ratio(pair.method_id, pair.envied_class, history_, config_.ratio_cap),
        capped_ratio(envied_accesses, own_accesses, config_.ratio_cap),
        capped_ratio(distance_envied, distance_own, config_.ratio_cap),
        kronecker(move_suggested(pair)),
    };
    return vector;
}

FeatureVector god_class_features(std::string_view class_name, const SystemModel& model, const ChangeHistory& history,
                                 const AnalysisConfig& config) {
    return FeatureExtractor(model, history, config).god_class_features(class_name);
}

FeatureVector feature_envy_features(const CandidatePair& pair, const SystemModel& model, const ChangeHistory& history,
                                    const AnalysisConfig& config) {
    return FeatureExtractor(model, history, config).feature_envy_features(pair);
}

// ---- normalization ---------------------------------------------------------

NormStats standardize_fit(std::span<const FeatureVector> train) {
    if (train.empty()) {
        throw std::invalid_argument("standardize_fit needs at least one vector");
    }
    NormStats stats;
    stats.schema = train.front().schema;
    const std::size_t dims = feature_count(stats.schema);
    stats.mean.assign(dims, 0.0);
    stats.scale.assign(dims, 1.0);
    for (const FeatureVector& v : train) {
        if (v.schema != stats.schema || v.values.size() != dims) {
            throw std::invalid_argument("standardize_fit: mixed feature schemas");
        }
        for (std::size_t d = 0; d < dims; ++d) {
            stats.mean[d] += v.values[d];
        }
    }
    const double n = static_cast<double>(train.size());
    for (double& m : stats.mean) {
        m /= n;
    }
    std::vector<double> squares(dims, 0.0);
    for (const FeatureVector& v : train) {
        for (std::size_t d = 0; d < dims; ++d) {
            squares[d] += (v.values[d] - stats.mean[d]) * (v.values[d] - stats.mean[d]);
        }
    }
    for (std::size_t d = 0; d < dims; ++d) {
        const double stddev = std::sqrt(squares[d] / n);
        stats.scale[d] = stddev > 0.0 ? stddev : 1.0;
    }
    return stats;
}

void standardize_in_place(const NormStats& stats, std::span<double> values) {
    if (values.size() != stats.mean.size()) {
        throw std::invalid_argument("standardize: dimension mismatch");
    }
    for (std::size_t d = 0; d < values.size(); ++d) {
        values[d] = (values[d] - stats.mean[d]) / stats.scale[d];
    }
}

FeatureVector standardize_apply(const NormStats& stats, const FeatureVector& vector) {
    if (vector.schema != stats.schema) {
        throw std::invalid_argument("standardize_apply: schema mismatch");
    }
    FeatureVector out = vector;
    standardize_in_place(stats, out.values);
    return out;
}

} // namespace smad
