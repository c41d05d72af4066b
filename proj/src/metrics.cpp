#include "smad/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace smad {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

Lexicon::Lexicon(std::vector<std::string> words) {
    for (const std::string& w : words) {
        tokens.push_back(lower(w));
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
}

Lexicon Lexicon::controller_default() {
    return Lexicon({"Controller", "Control", "Manager", "Manage", "Process", "Processor", "Command", "Handler",
                    "Driver", "Scheduler"});
}

bool Lexicon::contains(std::string_view token) const {
    return std::binary_search(tokens.begin(), tokens.end(), lower(token));
}

double jaccard_distance(const EntitySet& a, const EntitySet& b) {
    const std::size_t common = intersection_size(a, b);
    const std::size_t all = a.size() + b.size() - common;
    if (all == 0) {
        return 1.0;
    }
    return 1.0 - static_cast<double>(common) / static_cast<double>(all);
}

double jaccard_entity(EntityHandle a, EntityHandle b, const SystemModel& model) {
    return jaccard_distance(model.entity_set(a), model.entity_set(b));
}

double jaccard_entity(std::string_view a, std::string_view b, const SystemModel& model) {
    return jaccard_entity(model.entity(a), model.entity(b), model);
}

double jaccard_entity_class(EntityHandle e, std::size_t class_index, const SystemModel& model) {
    return jaccard_distance(model.entity_set(e), model.class_members(class_index));
}

double jaccard_entity_class(std::string_view entity_id, std::string_view class_name, const SystemModel& model) {
    return jaccard_entity_class(model.entity(entity_id), model.class_index(class_name), model);
}

double lcom5(std::size_t class_index, const SystemModel& model) {
    const ClassDecl& cls = model.class_decl(class_index);
    const std::size_t m = cls.methods.size();
    const std::size_t a = cls.attributes.size();
    if (m <= 1 || a == 0) {
        return 0.0;
    }
    std::size_t accessing_sum = 0;
    for (std::size_t ai = 0; ai < a; ++ai) {
        for (EntityHandle accessor : model.entity_set(model.attribute_handle(class_index, ai)).members) {
            if (model.owner_index(accessor) == class_index) {
                ++accessing_sum;
            }
        }
    }
    const double mean_accessing = static_cast<double>(accessing_sum) / static_cast<double>(a);
    const double value = (mean_accessing - static_cast<double>(m)) / (1.0 - static_cast<double>(m));
    return std::clamp(value, 0.0, 1.0);
}

std::vector<std::string> split_identifier(std::string_view qualified_name) {
    const auto dot = qualified_name.rfind('.');
    const std::string_view name = dot == std::string_view::npos ? qualified_name : qualified_name.substr(dot + 1);
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(name[i]);
        if (!std::isalnum(c)) {
            flush();
            continue;
        }
        if (!current.empty()) {
            const unsigned char prev = static_cast<unsigned char>(current.back());
            const bool next_lower = i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
            if ((std::isupper(c) && (std::islower(prev) || std::isdigit(prev))) ||
                (std::isupper(c) && std::isupper(prev) && next_lower) ||
                (std::isdigit(c) != 0) != (std::isdigit(prev) != 0)) {
                flush();
            }
        }
        current += static_cast<char>(c);
    }
    flush();
    return tokens;
}

bool is_controller_name(std::string_view qualified_name, const Lexicon& lexicon) {
    for (const std::string& token : split_identifier(qualified_name)) {
        if (lexicon.contains(token)) {
            return true;
        }
    }
    return false;
}

ClassStructuralProfile class_profile(std::size_t class_index, const SystemModel& model, const Lexicon& lexicon) {
    const ClassDecl& cls = model.class_decl(class_index);
    ClassStructuralProfile profile;
    profile.nmd = static_cast<int>(cls.methods.size());
    profile.nad = static_cast<int>(cls.attributes.size());
    profile.lcom5 = lcom5(class_index, model);
    profile.accessor_count = static_cast<int>(
        std::count_if(cls.methods.begin(), cls.methods.end(), [](const MethodDecl& m) { return m.is_accessor; }));
    profile.is_controller = is_controller_name(cls.qualified_name, lexicon);
    return profile;
}

ClassStructuralProfile class_profile(std::string_view class_name, const SystemModel& model, const Lexicon& lexicon) {
    return class_profile(model.class_index(class_name), model, lexicon);
}

InCodeMetrics incode_metrics(EntityHandle method_handle, std::size_t target_class, const SystemModel& model) {
    const MethodDecl& method = model.method(method_handle);
    const std::size_t owner = model.owner_index(method_handle);
    if (owner == target_class) {
        throw std::invalid_argument("target class of '" + method.entity_id + "' must be foreign");
    }
    std::set<EntityHandle> target_attributes;
    std::set<std::size_t> providers;
    long target_accesses = 0;
    long own_accesses = 0;
    for (const AttributeAccess& access : method.accesses) {
        if (access.external()) {
            continue;
        }
        const std::size_t cls = model.owner_index(access.resolved);
        if (cls == target_class) {
            target_attributes.insert(access.resolved);
            target_accesses += access.count;
        } else if (cls == owner) {
            own_accesses += access.count;
        }
        if (cls != owner) {
            providers.insert(cls);
        }
    }
    InCodeMetrics metrics;
    metrics.atfd = static_cast<int>(target_attributes.size());
    metrics.fdp = static_cast<int>(providers.size());
    const long total = target_accesses + own_accesses;
    metrics.laa = total == 0 ? 0.0 : static_cast<double>(target_accesses) / static_cast<double>(total);
    return metrics;
}

InCodeMetrics incode_metrics(std::string_view method_id, std::string_view target_class, const SystemModel& model) {
    return incode_metrics(model.entity(method_id), model.class_index(target_class), model);
}

double system_threshold(std::span<const double> values, const ThresholdPolicy& policy) {
    if (values.empty()) {
        throw std::invalid_argument("system_threshold needs at least one value");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double squares = 0.0;
    for (double v : values) {
        squares += (v - mean) * (v - mean);
    }
    const double stddev = std::sqrt(squares / n);
    return std::max(mean + policy.stddev_factor * stddev, policy.floor);
}

ThresholdSet compute_thresholds(const SystemModel& model, int data_class_accessor_threshold,
                                const ThresholdPolicy& policy) {
    ThresholdSet thresholds;
    thresholds.data_class_accessor_threshold = data_class_accessor_threshold;
    if (model.classes().empty()) {
        return thresholds;
    }
    std::vector<double> sizes;
    std::vector<double> cohesion;
    for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
        const ClassDecl& cls = model.class_decl(ci);
        sizes.push_back(static_cast<double>(cls.methods.size() + cls.attributes.size()));
        cohesion.push_back(lcom5(ci, model));
    }
    thresholds.nmd_nad_threshold = system_threshold(sizes, policy);
    thresholds.lcom_threshold = system_threshold(cohesion, policy);
    return thresholds;
}

} // namespace smad
