#include "smad/detectors.hpp"

#include "smad/clustering.hpp"
#include "smad/csv.hpp"
#include "smad/metrics.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

namespace smad {

// ---- God Class -------------------------------------------------------------

bool is_data_class(const ClassStructuralProfile& profile, int accessor_threshold) {
    const int half_of_methods = (profile.nmd + 1) / 2;
    return profile.accessor_count >= accessor_threshold && profile.accessor_count >= half_of_methods;
}

std::vector<bool> data_class_flags(const SystemModel& model, const AnalysisConfig& config) {
    std::vector<bool> flags(model.classes().size());
    for (std::size_t ci = 0; ci < flags.size(); ++ci) {
        flags[ci] = is_data_class(class_profile(ci, model, config.controller_lexicon), config.data_class_accessor_threshold);
    }
    return flags;
}

int associated_data_class_count(std::size_t class_index, const SystemModel& model, const std::vector<bool>& data_classes) {
    int count = 0;
    for (const std::string& type : model.class_decl(class_index).referenced_class_types) {
        const std::size_t other = model.class_index(type);
        if (other != class_index && data_classes[other]) {
            ++count;
        }
    }
    return count;
}

bool decor_rule(int associated_data_classes, const ClassStructuralProfile& profile, const ThresholdSet& thresholds,
                int many_threshold) {
    if (associated_data_classes < many_threshold) {
        return false;
    }
    const double size_ratio = static_cast<double>(profile.nmd + profile.nad) / thresholds.nmd_nad_threshold;
    const double cohesion_ratio = profile.lcom5 / thresholds.lcom_threshold;
    return profile.is_controller || size_ratio >= 1.0 || cohesion_ratio >= 1.0;
}

std::vector<std::string> decor_god_class(const SystemModel& model, const AnalysisConfig& config) {
    const ThresholdSet thresholds =
        compute_thresholds(model, config.data_class_accessor_threshold, config.threshold_policy);
    const std::vector<bool> data_classes = data_class_flags(model, config);
    std::vector<std::string> flagged;
    for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
        const int associated = associated_data_class_count(ci, model, data_classes);
        if (decor_rule(associated, class_profile(ci, model, config.controller_lexicon), thresholds,
                       config.many_data_class_threshold)) {
            flagged.push_back(model.class_decl(ci).qualified_name);
        }
    }
    return flagged;
}

bool hist_god_class_rule(double cochange_ratio, double alpha_percent) {
    return cochange_ratio > alpha_percent / 100.0;
}

std::vector<std::string> hist_god_class(const SystemModel& model, const ChangeHistory& history, double alpha_percent) {
    std::vector<std::string> flagged;
    for (const ClassDecl& cls : model.classes()) {
        if (hist_god_class_rule(class_cochange_ratio(cls.qualified_name, history), alpha_percent)) {
            flagged.push_back(cls.qualified_name);
        }
    }
    return flagged;
}

std::vector<ConceptCluster> extract_class_concepts(std::size_t class_index, const SystemModel& model,
                                                   double merge_threshold, std::size_t min_concept_size) {
    const EntitySet& members = model.class_members(class_index);
    const std::size_t n = members.size();
    if (n == 0) {
        return {};
    }
    std::vector<EntitySet> extended(n);
    for (std::size_t i = 0; i < n; ++i) {
        extended[i] = model.entity_set(members.members[i]);
        auto& set = extended[i].members;
        set.insert(std::lower_bound(set.begin(), set.end(), members.members[i]), members.members[i]);
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    DistanceMatrix distances(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            distances.at(i, j) = distances.at(j, i) = jaccard_distance(extended[i], extended[j]);
        }
    }
    std::vector<ConceptCluster> concepts;
    for (const auto& cluster : agglomerate_average_linkage(distances, merge_threshold)) {
        if (cluster.size() < min_concept_size || cluster.size() == n) {
            continue;
        }
        ConceptCluster concept_cluster;
        for (std::size_t index : cluster) {
            concept_cluster.members.push_back(model.entity_id(members.members[index]));
        }
        concepts.push_back(std::move(concept_cluster));
    }
    return concepts;
}

std::map<std::string, std::vector<ConceptCluster>> jdeodorant_extract_class(const SystemModel& model,
                                                                            double merge_threshold,
                                                                            std::size_t min_concept_size) {
    std::map<std::string, std::vector<ConceptCluster>> result;
    for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
        result[model.class_decl(ci).qualified_name] = extract_class_concepts(ci, model, merge_threshold, min_concept_size);
    }
    return result;
}

// ---- Feature Envy ----------------------------------------------------------

InCodeMethodStats incode_method_stats(EntityHandle method_handle, const SystemModel& model) {
    const MethodDecl& method = model.method(method_handle);
    const std::size_t owner = model.owner_index(method_handle);
    std::map<std::size_t, std::set<EntityHandle>> foreign_by_class;
    long own = 0;
    long foreign = 0;
    for (const AttributeAccess& access : method.accesses) {
        if (access.external()) {
            continue;
        }
        const std::size_t cls = model.owner_index(access.resolved);
        if (cls == owner) {
            own += access.count;
        } else {
            foreign += access.count;
            foreign_by_class[cls].insert(access.resolved);
        }
    }
    InCodeMethodStats stats;
    stats.fdp = static_cast<int>(foreign_by_class.size());
    std::size_t best = 0;
    for (const auto& [cls, attributes] : foreign_by_class) {
        stats.foreign_atfd += static_cast<int>(attributes.size());
        const std::string& name = model.class_decl(cls).qualified_name;
        if (attributes.size() > best || (attributes.size() == best && name < stats.envied_class)) {
            best = attributes.size();
            stats.envied_class = name;
        }
    }
    stats.own_share = own + foreign == 0 ? 0.0 : static_cast<double>(own) / static_cast<double>(own + foreign);
    return stats;
}

bool incode_rule(const InCodeMethodStats& stats, const InCodeThresholds& thresholds) {
    return stats.foreign_atfd > thresholds.atfd && stats.own_share < 1.0 / static_cast<double>(thresholds.laa) &&
           stats.fdp <= thresholds.fdp && stats.fdp >= 1;
}

std::vector<CandidatePair> incode_feature_envy(const SystemModel& model, const InCodeThresholds& thresholds) {
    std::vector<CandidatePair> flagged;
    std::string last_method;
    for (const CandidatePair& pair : enumerate_fe_candidates(model)) {
        if (pair.method_id == last_method) {
            continue;
        }
        last_method = pair.method_id;
        const InCodeMethodStats stats = incode_method_stats(model.entity(pair.method_id), model);
        if (incode_rule(stats, thresholds)) {
            flagged.push_back({pair.method_id, stats.envied_class});
        }
    }
    return flagged;
}

bool hist_feature_envy_rule(double cochange_ratio, double beta_percent) {
    return cochange_ratio > 1.0 + beta_percent / 100.0;
}

std::vector<CandidatePair> hist_feature_envy(const SystemModel& model, const ChangeHistory& history,
                                             double beta_percent, double cap) {
    std::vector<CandidatePair> flagged;
    for (const CandidatePair& pair : enumerate_fe_candidates(model)) {
        if (hist_feature_envy_rule(method_cochange_ratio(pair.method_id, pair.envied_class, history, cap), beta_percent)) {
            flagged.push_back(pair);
        }
    }
    return flagged;
}

MoveMethodResult jdeodorant_move_method(const SystemModel& model) {
    MoveMethodResult result;
    for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
        const ClassDecl& cls = model.class_decl(ci);
        for (std::size_t mi = 0; mi < cls.methods.size(); ++mi) {
            const MethodDecl& method = cls.methods[mi];
            if (method.is_static || method.is_accessor) {
                continue;
            }
            const EntityHandle handle = model.method_handle(ci, mi);
            const std::vector<std::size_t> targets = accessed_foreign_classes(handle, model);
            if (targets.empty()) {
                continue;
            }
            const double distance_to_owner = jaccard_entity_class(handle, ci, model);
            std::vector<MoveMethodDiagnostics> rows;
            for (std::size_t target : targets) {
                MoveMethodDiagnostics row;
                row.pair = {method.entity_id, model.class_decl(target).qualified_name};
                row.accessed_entities = intersection_size(model.entity_set(handle), model.class_members(target));
                row.distance_to_target = jaccard_entity_class(handle, target, model);
                row.distance_to_owner = distance_to_owner;
                for (const AttributeAccess& access : method.accesses) {
                    if (!access.external() && access.kind == AccessKind::Write && model.owner_index(access.resolved) == target) {
                        row.modifies_target = true;
                    }
                }
                for (const MethodCall& call : method.calls) {
                    if (!call.external() && model.owner_index(call.resolved) == target && !model.method(call.resolved).is_accessor) {
                        row.modifies_target = true;
                    }
                }
                rows.push_back(std::move(row));
            }
            std::sort(rows.begin(), rows.end(), [](const MoveMethodDiagnostics& a, const MoveMethodDiagnostics& b) {
                return std::tie(b.accessed_entities, a.distance_to_target, a.pair.envied_class) <
                       std::tie(a.accessed_entities, b.distance_to_target, b.pair.envied_class);
            });
            for (MoveMethodDiagnostics& row : rows) {
                if (row.modifies_target && row.distance_to_target < row.distance_to_owner) {
                    row.suggested = true;
                    result.suggestions.push_back(row.pair);
                    break;
                }
            }
            result.diagnostics.insert(result.diagnostics.end(), rows.begin(), rows.end());
        }
    }
    std::sort(result.suggestions.begin(), result.suggestions.end());
    return result;
}

// ---- reports ---------------------------------------------------------------

std::vector<Verdict> run_detectors(const SystemModel& model, const ChangeHistory& history,
                                   const AnalysisConfig& config) {
    std::vector<Verdict> verdicts;
    const auto decor = decor_god_class(model, config);
    const auto hist_gc = hist_god_class(model, history, config.hist_gc_alpha);
    const std::set<std::string> decor_set(decor.begin(), decor.end());
    const std::set<std::string> hist_gc_set(hist_gc.begin(), hist_gc.end());
    for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
        const std::string& name = model.class_decl(ci).qualified_name;
        const bool concepts = !extract_class_concepts(ci, model, config.merge_threshold, config.min_concept_size).empty();
        verdicts.push_back({Tool::RuleCard, AntiPattern::GodClass, name, decor_set.contains(name)});
        verdicts.push_back({Tool::Hist, AntiPattern::GodClass, name, hist_gc_set.contains(name)});
        verdicts.push_back({Tool::JDeodorant, AntiPattern::GodClass, name, concepts});
    }
    const auto incode = incode_feature_envy(model, config.incode);
    const auto hist_fe = hist_feature_envy(model, history, config.hist_fe_beta, config.ratio_cap);
    const auto moves = jdeodorant_move_method(model).suggestions;
    const std::set<CandidatePair> incode_set(incode.begin(), incode.end());
    const std::set<CandidatePair> hist_fe_set(hist_fe.begin(), hist_fe.end());
    const std::set<CandidatePair> move_set(moves.begin(), moves.end());
    for (const CandidatePair& pair : enumerate_fe_candidates(model)) {
        const std::string label = pair.label();
        verdicts.push_back({Tool::RuleCard, AntiPattern::FeatureEnvy, label, incode_set.contains(pair)});
        verdicts.push_back({Tool::Hist, AntiPattern::FeatureEnvy, label, hist_fe_set.contains(pair)});
        verdicts.push_back({Tool::JDeodorant, AntiPattern::FeatureEnvy, label, move_set.contains(pair)});
    }
    return verdicts;
}

void write_verdicts(std::ostream& out, const std::vector<Verdict>& verdicts) {
    csv::write_row(out, {"tool", "anti_pattern", "entity", "flagged"});
    for (const Verdict& v : verdicts) {
        csv::write_row(out, {std::string(to_string(v.tool)), std::string(to_string(v.pattern)), v.entity,
                             v.flagged ? "true" : "false"});
    }
}

} // namespace smad
