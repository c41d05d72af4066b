#include "brute_force.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <tuple>

namespace smad::brute {

namespace {

std::string owner_name(const std::string& id) {
    return id.substr(0, id.find('#'));
}

std::string simple_name(const std::string& name) {
    const auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

double ratio_or_cap(double numerator, double denominator, double cap) {
    return denominator == 0.0 ? numerator * cap : numerator / denominator;
}

/// Foreign classes reached by resolved accesses or calls.
std::set<std::string> foreign_classes(const World& w, const std::string& method_id) {
    const MethodDecl& m = w.method_by_id.at(method_id);
    const std::string own = w.owner.at(method_id);
    std::set<std::string> out;
    for (const AttributeAccess& a : m.accesses) {
        if (w.resolves_attribute(a.target) && owner_name(a.target) != own) {
            out.insert(owner_name(a.target));
        }
    }
    for (const MethodCall& c : m.calls) {
        if (w.resolves_method(c.target) && owner_name(c.target) != own) {
            out.insert(owner_name(c.target));
        }
    }
    return out;
}

bool is_candidate_method(const World& w, const std::string& method_id) {
    return !w.method_by_id.at(method_id).is_static && !is_accessor(w, method_id);
}

Ids as_set(const std::vector<std::string>& ids) {
    return Ids(ids.begin(), ids.end());
}

} // namespace

World::World(const std::vector<ClassDecl>& declarations) : classes(declarations) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        class_by_name[classes[i].qualified_name] = i;
        for (const AttributeDecl& a : classes[i].attributes) {
            const std::string id = classes[i].qualified_name + "#" + a.name;
            attributes.insert(id);
            owner[id] = classes[i].qualified_name;
        }
        for (const MethodDecl& m : classes[i].methods) {
            const std::string id = classes[i].qualified_name + "#" + m.name;
            methods.insert(id);
            method_by_id[id] = m;
            owner[id] = classes[i].qualified_name;
        }
    }
}

std::vector<std::string> World::members(const std::string& class_name) const {
    const ClassDecl& c = cls(class_name);
    std::vector<std::string> out;
    for (const AttributeDecl& a : c.attributes) {
        out.push_back(class_name + "#" + a.name);
    }
    for (const MethodDecl& m : c.methods) {
        out.push_back(class_name + "#" + m.name);
    }
    return out;
}

Ids entity_set(const World& w, const std::string& id) {
    Ids out;
    if (w.methods.contains(id)) {
        const MethodDecl& m = w.method_by_id.at(id);
        for (const AttributeAccess& a : m.accesses) {
            if (w.resolves_attribute(a.target)) {
                out.insert(a.target);
            }
        }
        for (const MethodCall& c : m.calls) {
            if (w.resolves_method(c.target)) {
                out.insert(c.target);
            }
        }
        return out;
    }
    for (const auto& [method_id, m] : w.method_by_id) {
        for (const AttributeAccess& a : m.accesses) {
            if (a.target == id) {
                out.insert(method_id);
            }
        }
    }
    return out;
}

double jaccard(const Ids& a, const Ids& b) {
    Ids both;
    Ids either = a;
    for (const std::string& x : b) {
        either.insert(x);
        if (a.contains(x)) {
            both.insert(x);
        }
    }
    if (either.empty()) {
        return 1.0;
    }
    return 1.0 - static_cast<double>(both.size()) / static_cast<double>(either.size());
}

double jaccard_entity_class(const World& w, const std::string& id, const std::string& class_name) {
    return jaccard(entity_set(w, id), as_set(w.members(class_name)));
}

double lcom5(const World& w, const std::string& class_name) {
    const ClassDecl& c = w.cls(class_name);
    const double m = static_cast<double>(c.methods.size());
    const double a = static_cast<double>(c.attributes.size());
    if (m <= 1 || a == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (const AttributeDecl& attr : c.attributes) {
        const std::string id = class_name + "#" + attr.name;
        for (const MethodDecl& method : c.methods) {
            const bool touches = std::any_of(method.accesses.begin(), method.accesses.end(),
                                             [&](const AttributeAccess& x) { return x.target == id; });
            sum += touches ? 1.0 : 0.0;
        }
    }
    const double value = (sum / a - m) / (1.0 - m);
    return std::min(1.0, std::max(0.0, value));
}

bool is_accessor(const World& w, const std::string& method_id) {
    const MethodDecl& m = w.method_by_id.at(method_id);
    if (m.is_static) {
        return false;
    }
    if (m.accessor_hint == true) {
        return true;
    }
    for (const MethodCall& c : m.calls) {
        if (w.resolves_method(c.target)) {
            return false;
        }
    }
    Ids own;
    for (const AttributeAccess& a : m.accesses) {
        if (!w.resolves_attribute(a.target)) {
            continue;
        }
        if (owner_name(a.target) != w.owner.at(method_id)) {
            return false;
        }
        own.insert(a.target);
    }
    return own.size() == 1;
}

int accessor_count(const World& w, const std::string& class_name) {
    int count = 0;
    for (const MethodDecl& m : w.cls(class_name).methods) {
        count += is_accessor(w, class_name + "#" + m.name) ? 1 : 0;
    }
    return count;
}

bool is_controller(const std::string& class_name, const std::vector<std::string>& words) {
    const std::string name = simple_name(class_name);
    for (const std::string& word : words) {
        for (std::size_t at = name.find(word); at != std::string::npos; at = name.find(word, at + 1)) {
            const std::size_t end = at + word.size();
            const bool starts = at == 0 || !std::isupper(static_cast<unsigned char>(name[at - 1]));
            const bool ends = end == name.size() || !std::islower(static_cast<unsigned char>(name[end]));
            if (starts && ends) {
                return true;
            }
        }
    }
    return false;
}

double threshold(const std::vector<double>& values, double k, double floor) {
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(values.size());
    return std::max(floor, mean + k * std::sqrt(var));
}

bool is_data_class(const World& w, const std::string& class_name, int accessor_threshold) {
    const int accessors = accessor_count(w, class_name);
    const int nmd = static_cast<int>(w.cls(class_name).methods.size());
    return accessors >= accessor_threshold && 2 * accessors >= nmd;
}

int associated_data_classes(const World& w, const std::string& class_name, int accessor_threshold) {
    std::set<std::string> types;
    for (const AttributeDecl& a : w.cls(class_name).attributes) {
        if (a.declared_type != class_name && w.class_by_name.contains(a.declared_type)) {
            types.insert(a.declared_type);
        }
    }
    int count = 0;
    for (const std::string& t : types) {
        count += is_data_class(w, t, accessor_threshold) ? 1 : 0;
    }
    return count;
}

Ids decor(const World& w, const RuleCardParams& params) {
    std::vector<double> sizes;
    std::vector<double> cohesion;
    for (const ClassDecl& c : w.classes) {
        sizes.push_back(static_cast<double>(c.methods.size() + c.attributes.size()));
        cohesion.push_back(lcom5(w, c.qualified_name));
    }
    const double size_t_ = threshold(sizes);
    const double lcom_t = threshold(cohesion);
    Ids out;
    for (const ClassDecl& c : w.classes) {
        const std::string& n = c.qualified_name;
        if (associated_data_classes(w, n, params.accessor_threshold) < params.many) {
            continue;
        }
        const double size = static_cast<double>(c.methods.size() + c.attributes.size());
        if (is_controller(n, params.controller_words) || size / size_t_ >= 1.0 || lcom5(w, n) / lcom_t >= 1.0) {
            out.insert(n);
        }
    }
    return out;
}

std::vector<Commit> normalized(const std::vector<Commit>& commits) {
    std::vector<Commit> out = commits;
    for (Commit& c : out) {
        std::set<std::string> classes(c.changed_classes.begin(), c.changed_classes.end());
        for (const std::string& m : c.changed_methods) {
            classes.insert(owner_name(m));
        }
        c.changed_classes.assign(classes.begin(), classes.end());
    }
    return out;
}

double class_cochange(const std::vector<Commit>& commits, const std::string& class_name) {
    int with_class = 0;
    int multi = 0;
    for (const Commit& c : normalized(commits)) {
        const std::set<std::string> classes(c.changed_classes.begin(), c.changed_classes.end());
        if (classes.size() >= 2) {
            ++multi;
            with_class += classes.contains(class_name) ? 1 : 0;
        }
    }
    return multi == 0 ? 0.0 : static_cast<double>(with_class) / multi;
}

double method_cochange(const std::vector<Commit>& commits, const std::string& method_id, const std::string& envied,
                       double cap) {
    const std::string own = owner_name(method_id);
    int numerator = 0;
    int denominator = 0;
    for (const Commit& c : commits) {
        const std::set<std::string> methods(c.changed_methods.begin(), c.changed_methods.end());
        if (!methods.contains(method_id)) {
            continue;
        }
        bool envied_too = false;
        bool own_too = false;
        for (const std::string& other : methods) {
            envied_too = envied_too || owner_name(other) == envied;
            own_too = own_too || (other != method_id && owner_name(other) == own);
        }
        numerator += envied_too ? 1 : 0;
        denominator += own_too ? 1 : 0;
    }
    return ratio_or_cap(numerator, denominator, cap);
}

Ids hist_god_class(const World& w, const std::vector<Commit>& commits, double alpha_percent) {
    Ids out;
    for (const ClassDecl& c : w.classes) {
        if (class_cochange(commits, c.qualified_name) > alpha_percent / 100.0) {
            out.insert(c.qualified_name);
        }
    }
    return out;
}

InCode incode_metrics(const World& w, const std::string& method_id, const std::string& target) {
    const MethodDecl& m = w.method_by_id.at(method_id);
    const std::string own = w.owner.at(method_id);
    Ids target_attributes;
    std::set<std::string> providers;
    double target_accesses = 0.0;
    double own_accesses = 0.0;
    for (const AttributeAccess& a : m.accesses) {
        if (!w.resolves_attribute(a.target)) {
            continue;
        }
        const std::string cls = owner_name(a.target);
        if (cls == target) {
            target_attributes.insert(a.target);
            target_accesses += a.count;
        }
        if (cls == own) {
            own_accesses += a.count;
        } else {
            providers.insert(cls);
        }
    }
    InCode out;
    out.atfd = static_cast<int>(target_attributes.size());
    out.laa = target_accesses + own_accesses == 0.0 ? 0.0 : target_accesses / (target_accesses + own_accesses);
    out.fdp = static_cast<int>(providers.size());
    return out;
}

std::vector<Pair> candidates(const World& w) {
    std::vector<Pair> out;
    for (const std::string& m : w.methods) {
        if (!is_candidate_method(w, m)) {
            continue;
        }
        for (const std::string& c : foreign_classes(w, m)) {
            out.emplace_back(m, c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Pair> incode_flags(const World& w, int t_atfd, int t_laa, int t_fdp) {
    std::set<Pair> out;
    for (const std::string& id : w.methods) {
        if (!is_candidate_method(w, id) || foreign_classes(w, id).empty()) {
            continue;
        }
        const MethodDecl& m = w.method_by_id.at(id);
        const std::string own = w.owner.at(id);
        std::map<std::string, Ids> by_class;
        double own_count = 0.0;
        double foreign_count = 0.0;
        for (const AttributeAccess& a : m.accesses) {
            if (!w.resolves_attribute(a.target)) {
                continue;
            }
            if (owner_name(a.target) == own) {
                own_count += a.count;
            } else {
                foreign_count += a.count;
                by_class[owner_name(a.target)].insert(a.target);
            }
        }
        std::size_t atfd = 0;
        std::string envied;
        std::size_t most = 0;
        for (const auto& [cls, attrs] : by_class) {  // ascending names: first maximum is the lowest name
            atfd += attrs.size();
            if (attrs.size() > most) {
                most = attrs.size();
                envied = cls;
            }
        }
        const double share = own_count + foreign_count == 0.0 ? 0.0 : own_count / (own_count + foreign_count);
        const int fdp = static_cast<int>(by_class.size());
        if (static_cast<int>(atfd) > t_atfd && share * t_laa < 1.0 && fdp >= 1 && fdp <= t_fdp) {
            out.emplace(id, envied);
        }
    }
    return out;
}

std::set<Pair> hist_feature_envy(const World& w, const std::vector<Commit>& commits, double beta_percent) {
    std::set<Pair> out;
    for (const Pair& p : candidates(w)) {
        if (method_cochange(commits, p.first, p.second) > 1.0 + beta_percent / 100.0) {
            out.insert(p);
        }
    }
    return out;
}

std::set<Pair> move_method(const World& w) {
    std::set<Pair> out;
    for (const std::string& id : w.methods) {
        if (!is_candidate_method(w, id)) {
            continue;
        }
        const MethodDecl& m = w.method_by_id.at(id);
        const Ids own_set = entity_set(w, id);
        const double to_owner = jaccard(own_set, as_set(w.members(w.owner.at(id))));
        std::optional<std::tuple<long, double, std::string>> best;
        for (const std::string& target : foreign_classes(w, id)) {
            const Ids members = as_set(w.members(target));
            long reached = 0;
            for (const std::string& e : own_set) {
                reached += members.contains(e) ? 1 : 0;
            }
            const double to_target = jaccard(own_set, members);
            bool modifies = false;
            for (const AttributeAccess& a : m.accesses) {
                modifies = modifies || (a.kind == AccessKind::Write && w.resolves_attribute(a.target) &&
                                        owner_name(a.target) == target);
            }
            for (const MethodCall& c : m.calls) {
                modifies = modifies ||
                           (w.resolves_method(c.target) && owner_name(c.target) == target && !is_accessor(w, c.target));
            }
            if (!modifies || !(to_target < to_owner)) {
                continue;
            }
            const auto key = std::make_tuple(-reached, to_target, target);
            if (!best || key < *best) {
                best = key;
            }
        }
        if (best) {
            out.emplace(id, std::get<2>(*best));
        }
    }
    return out;
}

std::vector<Ids> concepts(const World& w, const std::string& class_name, double merge_threshold,
                          std::size_t min_size) {
    const std::vector<std::string> members = w.members(class_name);
    const std::size_t n = members.size();
    std::vector<Ids> sets;
    for (const std::string& e : members) {
        Ids s = entity_set(w, e);
        s.insert(e);
        sets.push_back(s);
    }
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < n; ++i) {
        clusters.push_back({i});
    }
    const double tol = 1e-12;
    while (clusters.size() > 1) {
        double best = 1e300;
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double sum = 0.0;
                for (std::size_t x : clusters[i]) {
                    for (std::size_t y : clusters[j]) {
                        sum += jaccard(sets[x], sets[y]);
                    }
                }
                const double avg = sum / static_cast<double>(clusters[i].size() * clusters[j].size());
                if (avg < best - tol) {
                    best = avg;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best > merge_threshold + tol) {
            break;
        }
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        std::sort(clusters.begin(), clusters.end());
    }
    std::vector<Ids> out;
    for (const auto& c : clusters) {
        if (c.size() >= min_size && c.size() != n) {
            Ids ids;
            for (std::size_t i : c) {
                ids.insert(members[i]);
            }
            out.push_back(ids);
        }
    }
    return out;
}

std::vector<double> god_class_features(const World& w, const std::vector<Commit>& commits,
                                       const std::string& class_name) {
    std::vector<double> sizes;
    std::vector<double> cohesion;
    for (const ClassDecl& c : w.classes) {
        sizes.push_back(static_cast<double>(c.methods.size() + c.attributes.size()));
        cohesion.push_back(lcom5(w, c.qualified_name));
    }
    const ClassDecl& c = w.cls(class_name);
    return {static_cast<double>(associated_data_classes(w, class_name)),
            is_controller(class_name, RuleCardParams{}.controller_words) ? 1.0 : 0.0,
            static_cast<double>(c.methods.size() + c.attributes.size()) / threshold(sizes),
            lcom5(w, class_name) / threshold(cohesion),
            class_cochange(commits, class_name),
            static_cast<double>(concepts(w, class_name).size())};
}

std::vector<double> feature_envy_features(const World& w, const std::vector<Commit>& commits, const Pair& pair) {
    const auto& [method_id, envied] = pair;
    const std::string own = w.owner.at(method_id);
    const MethodDecl& m = w.method_by_id.at(method_id);
    const InCode incode = incode_metrics(w, method_id, envied);
    double to_envied = 0.0;
    double to_own = 0.0;
    for (const AttributeAccess& a : m.accesses) {
        if (w.resolves_attribute(a.target)) {
            to_envied += owner_name(a.target) == envied ? a.count : 0;
            to_own += owner_name(a.target) == own ? a.count : 0;
        }
    }
    for (const MethodCall& c : m.calls) {
        if (w.resolves_method(c.target)) {
            to_envied += owner_name(c.target) == envied ? c.count : 0;
            to_own += owner_name(c.target) == own ? c.count : 0;
        }
    }
    return {static_cast<double>(incode.atfd),
            incode.laa,
            static_cast<double>(incode.fdp),
            method_cochange(commits, method_id, envied),
            ratio_or_cap(to_envied, to_own, 10.0),
            ratio_or_cap(jaccard_entity_class(w, method_id, envied), jaccard_entity_class(w, method_id, own), 10.0),
            move_method(w).contains(pair) ? 1.0 : 0.0};
}

} // namespace smad::brute
