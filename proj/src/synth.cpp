#include "smad/synth.hpp"

#include "smad/mlp.hpp"
#include "smad/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace smad {

void SynthParams::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (n_classes < 10) {
        throw std::invalid_argument("synth: n_classes must be at least 10");
    }
    if (history_length < 1) {
        throw std::invalid_argument("synth: history_length must be positive");
    }
    if (rates.god_class < 0.0 || rates.god_class > 0.2 || rates.feature_envy < 0.0 || rates.feature_envy > 0.2) {
        throw std::invalid_argument("synth: smell rates must lie in [0, 0.2]");
    }
    if (noise_rate < 0.0 || noise_rate > 0.2) {
        throw std::invalid_argument("synth: noise_rate must lie in [0, 0.2]");
    }
    if (!in_unit(data_class_share) || !in_unit(symptom_probability)) {
        throw std::invalid_argument("synth: shares and probabilities must lie in [0, 1]");
    }
}

namespace {

constexpr std::array<const char*, 40> kNouns{
    "Account", "Invoice",  "Order",    "Customer", "Ledger",    "Report",  "Policy",   "Route",
    "Ticket",  "Shipment", "Catalog",  "Profile",  "Session",   "Payment", "Address",  "Product",
    "Stock",   "Vendor",   "Contract", "Budget",   "Asset",     "Claim",   "Course",   "Booking",
    "Parcel",  "Tariff",   "Sensor",   "Device",   "Channel",   "Message", "Document", "Folder",
    "Patient", "Visit",    "Employee", "Project",  "Task",      "Release", "Quote",    "Warehouse"};
constexpr std::array<const char*, 5> kControllerWords{"Manager", "Controller", "Handler", "Processor", "Scheduler"};

enum class Role { Data, Regular, God };

struct Draft {
    Role role = Role::Regular;
    ClassDecl decl;
    std::vector<std::size_t> neighbours;
};

struct Symptoms {
    bool a = false;
    bool b = false;
    bool c = false;
};

class Generator {
public:
    Generator(std::uint64_t seed, const SynthParams& params, std::string system_id)
        : rng_(seed), params_(params), system_id_(std::move(system_id)) {}

    SyntheticSystem run(std::uint64_t seed);

private:
    std::string name(std::size_t ci) const { return drafts_[ci].decl.qualified_name; }
    std::string member(std::size_t ci, const std::string& local) const { return name(ci) + "#" + local; }
    MethodDecl& method(std::size_t ci, std::size_t mi) { return drafts_[ci].decl.methods[mi]; }

    std::size_t add_attribute(std::size_t ci, std::string local, std::string type = "primitive");
    std::size_t add_method(std::size_t ci, std::string local);
    void read(std::size_t ci, std::size_t mi, const std::string& target, int count) {
        method(ci, mi).accesses.push_back({target, AccessKind::Read, count, {}});
    }
    void write(std::size_t ci, std::size_t mi, const std::string& target) {
        method(ci, mi).accesses.push_back({target, AccessKind::Write, 1, {}});
    }
    void call(std::size_t ci, std::size_t mi, const std::string& target, int count = 1) {
        method(ci, mi).calls.push_back({target, count, {}});
    }

    Symptoms draw_symptoms();
    void assign_roles();
    void build_data_class(std::size_t ci);
    void build_regular_class(std::size_t ci);
    void build_god_class(std::size_t ci, const Symptoms& symptoms);
    void link_regular_class(std::size_t ci);
    std::size_t associate_data_class(std::size_t ci, std::size_t mi, std::size_t data_ci, const std::string& local);
    std::vector<std::string> getters(std::size_t data_ci) const;
    void inject_feature_envy();
    void add_decoys();
    std::size_t envious_method(std::size_t host, std::size_t envied, const std::string& local, bool data_access,
                               bool move);
    void own_commits(std::size_t ci, const std::string& method_id, int count);
    void envied_commits(const std::string& method_id, std::size_t envied, int count);
    std::vector<Commit> build_history();

    Rng rng_;
    SynthParams params_;
    std::string system_id_;
    std::vector<Draft> drafts_;
    std::vector<std::size_t> data_classes_;
    std::vector<std::size_t> regular_classes_;
    std::vector<std::pair<std::size_t, Symptoms>> god_classes_;
    std::vector<std::size_t> structure_decoys_;
    std::vector<std::size_t> concept_decoys_;
    std::vector<std::pair<std::size_t, double>> hot_classes_;
    struct Delegation {
        std::size_t ci;
        std::size_t mi;
        std::size_t data_ci;
    };
    std::vector<Delegation> delegations_;  ///< call sites reaching a DataClass getter
    std::set<std::string> quiet_methods_;  ///< kept out of background commits
    std::vector<std::vector<std::string>> extra_commits_;
    std::vector<Injection> injections_;
    GroundTruth truth_;
};

std::size_t Generator::add_attribute(std::size_t ci, std::string local, std::string type) {
    AttributeDecl attr;
    attr.name = std::move(local);
    attr.declared_type = std::move(type);
    drafts_[ci].decl.attributes.push_back(std::move(attr));
    return drafts_[ci].decl.attributes.size() - 1;
}

std::size_t Generator::add_method(std::size_t ci, std::string local) {
    auto& methods = drafts_[ci].decl.methods;
    MethodDecl decl;
    decl.name = std::move(local) + "()";
    decl.line_start = 10 + 12 * static_cast<int>(methods.size());
    decl.line_end = decl.line_start + 8;
    methods.push_back(std::move(decl));
    return methods.size() - 1;
}

Symptoms Generator::draw_symptoms() {
    std::array<bool, 3> on{rng_.chance(params_.symptom_probability), rng_.chance(params_.symptom_probability),
                           rng_.chance(params_.symptom_probability)};
    while (std::count(on.begin(), on.end(), true) < 2) {
        on[static_cast<std::size_t>(rng_.uniform(0, 2))] = true;
    }
    return {on[0], on[1], on[2]};
}

void Generator::assign_roles() {
    const auto n = static_cast<std::size_t>(params_.n_classes);
    const auto god_count = static_cast<std::size_t>(std::lround(params_.rates.god_class * params_.n_classes));
    const auto data_count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(params_.data_class_share * params_.n_classes)));
    const auto decoys = static_cast<std::size_t>(std::lround(params_.noise_rate * params_.n_classes));

    drafts_.resize(n);
    const std::vector<std::size_t> order = rng_.sample(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        drafts_[order[k]].role = k < god_count ? Role::God : k < god_count + data_count ? Role::Data : Role::Regular;
    }
    for (std::size_t ci = 0; ci < n; ++ci) {
        switch (drafts_[ci].role) {
        case Role::Data:
            data_classes_.push_back(ci);
            break;
        case Role::Regular:
            regular_classes_.push_back(ci);
            break;
        case Role::God:
            god_classes_.emplace_back(ci, draw_symptoms());
            break;
        }
    }

    std::vector<std::size_t> pool = regular_classes_;
    rng_.shuffle(pool);
    std::size_t next = 0;
    auto take = [&](std::vector<std::size_t>& into) {
        for (std::size_t k = 0; k < decoys && next < pool.size(); ++k) {
            into.push_back(pool[next++]);
        }
    };
    std::vector<std::size_t> history_decoys;
    take(structure_decoys_);
    take(history_decoys);
    take(concept_decoys_);

    std::vector<bool> controller(n, false);
    for (const auto& [ci, symptoms] : god_classes_) {
        controller[ci] = symptoms.a && rng_.chance(0.5);
    }
    for (std::size_t ci : structure_decoys_) {
        controller[ci] = true;
    }
    for (std::size_t ci = 0; ci < n; ++ci) {
        std::string simple = kNouns[ci % kNouns.size()];
        if (controller[ci]) {
            simple += kControllerWords[static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(kControllerWords.size()) - 1))];
        }
        drafts_[ci].decl.qualified_name =
            "org." + system_id_ + ".m" + std::to_string(ci / 20) + "." + simple + std::to_string(ci);
    }
    for (std::size_t ci : history_decoys) {
        hot_classes_.emplace_back(ci, rng_.real(0.12, 0.25));
        injections_.push_back({AntiPattern::GodClass, name(ci), false, {"history"}});
    }
}

void Generator::build_data_class(std::size_t ci) {
    const int attrs = rng_.uniform(4, 7);
    for (int i = 0; i < attrs; ++i) {
        add_attribute(ci, "f" + std::to_string(i));
    }
    for (int i = 0; i < attrs; ++i) {
        const std::size_t mi = add_method(ci, "getF" + std::to_string(i));
        read(ci, mi, member(ci, "f" + std::to_string(i)), 1);
    }
    bool any_setter = false;
    for (int i = 0; i < attrs; ++i) {
        if (rng_.chance(0.5) || (i == attrs - 1 && !any_setter)) {
            const std::size_t mi = add_method(ci, "setF" + std::to_string(i));
            write(ci, mi, member(ci, "f" + std::to_string(i)));
            any_setter = true;
        }
    }
    if (rng_.chance(0.6)) {
        const std::size_t mi = add_method(ci, "describe");
        for (int i = 0; i < attrs; ++i) {
            read(ci, mi, member(ci, "f" + std::to_string(i)), 1);
        }
    }
}

void Generator::build_regular_class(std::size_t ci) {
    const int attrs = rng_.uniform(1, 3);
    const int methods = rng_.uniform(2, 5);
    for (int i = 0; i < attrs; ++i) {
        add_attribute(ci, "v" + std::to_string(i));
    }
    for (int i = 0; i < methods; ++i) {
        add_method(ci, "op" + std::to_string(i));
    }
    for (int i = 0; i < methods; ++i) {
        const auto mi = static_cast<std::size_t>(i);
        if (attrs >= 2) {
            for (std::size_t ai : rng_.sample(static_cast<std::size_t>(attrs), 2)) {
                read(ci, mi, member(ci, "v" + std::to_string(ai)), rng_.uniform(1, 3));
            }
        } else {
            read(ci, mi, member(ci, "v0"), rng_.uniform(1, 3));
            call(ci, mi, member(ci, "op" + std::to_string((i + 1) % methods) + "()"));
        }
        if (i > 0 && rng_.chance(0.3)) {
            call(ci, mi, member(ci, "op" + std::to_string(i - 1) + "()"));
        }
    }
}

void Generator::build_god_class(std::size_t ci, const Symptoms& symptoms) {
    const bool structure = symptoms.a;
    const bool history = symptoms.b;
    const bool concepts = symptoms.c;
    auto group = [&](const std::string& prefix, int attrs, int methods, int reads) {
        for (int i = 0; i < attrs; ++i) {
            add_attribute(ci, prefix + "a" + std::to_string(i));
        }
        for (int i = 0; i < methods; ++i) {
            const std::size_t mi = add_method(ci, prefix + "op" + std::to_string(i));
            for (std::size_t ai : rng_.sample(static_cast<std::size_t>(attrs), static_cast<std::size_t>(reads))) {
                read(ci, mi, member(ci, prefix + "a" + std::to_string(ai)), rng_.uniform(1, 3));
            }
            if (i > 0 && rng_.chance(0.4)) {
                call(ci, mi, member(ci, prefix + "op" + std::to_string(i - 1) + "()"));
            }
        }
    };
    if (concepts) {
        const int groups = rng_.uniform(3, 4);
        for (int g = 0; g < groups; ++g) {
            group("g" + std::to_string(g), structure ? rng_.uniform(3, 4) : 2,
                  structure ? rng_.uniform(4, 6) : rng_.uniform(2, 3), 2);
        }
    } else {
        group("core", structure ? rng_.uniform(7, 9) : 4, structure ? rng_.uniform(12, 16) : rng_.uniform(5, 6),
              structure ? 4 : 3);
    }
    const std::size_t methods = drafts_[ci].decl.methods.size();
    if (structure) {
        const auto links = static_cast<std::size_t>(rng_.uniform(2, 3));
        for (std::size_t k = 0; k < links && k < data_classes_.size(); ++k) {
            const std::size_t data_ci = data_classes_[rng_.sample(data_classes_.size(), 1).front()];
            const auto mi = static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(methods) - 1));
            associate_data_class(ci, mi, data_ci, "dc" + std::to_string(k));
        }
    } else if (regular_classes_.size() > 1 && rng_.chance(0.5)) {
        const std::size_t peer = rng_.pick(regular_classes_);
        add_attribute(ci, "peer0", name(peer));
        const auto mi = static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(methods) - 1));
        read(ci, mi, member(ci, "peer0"), 1);
        call(ci, mi, member(peer, "op0()"));
        drafts_[ci].neighbours.push_back(peer);
    }
    if (history) {
        hot_classes_.emplace_back(ci, rng_.real(0.12, 0.25));
    }
    Injection injection{AntiPattern::GodClass, name(ci), true, {}};
    if (structure) {
        injection.symptoms.push_back("structure");
    }
    if (history) {
        injection.symptoms.push_back("history");
    }
    if (concepts) {
        injection.symptoms.push_back("concepts");
    }
    injections_.push_back(std::move(injection));
}

std::vector<std::string> Generator::getters(std::size_t data_ci) const {
    std::vector<std::string> names;
    for (const MethodDecl& m : drafts_[data_ci].decl.methods) {
        if (m.name.rfind("get", 0) == 0) {
            names.push_back(m.name);
        }
    }
    return names;
}

std::size_t Generator::associate_data_class(std::size_t ci, std::size_t mi, std::size_t data_ci,
                                            const std::string& local) {
    const std::size_t ai = add_attribute(ci, local, name(data_ci));
    read(ci, mi, member(ci, local), 1);
    const std::vector<std::string> available = getters(data_ci);
    for (std::size_t g : rng_.sample(available.size(), static_cast<std::size_t>(rng_.uniform(1, 2)))) {
        call(ci, mi, member(data_ci, available[g]));
    }
    drafts_[ci].neighbours.push_back(data_ci);
    delegations_.push_back({ci, mi, data_ci});
    return ai;
}

void Generator::link_regular_class(std::size_t ci) {
    const auto methods = static_cast<int>(drafts_[ci].decl.methods.size());
    if (rng_.chance(0.35)) {
        const std::size_t data_ci = rng_.pick(data_classes_);
        associate_data_class(ci, static_cast<std::size_t>(rng_.uniform(0, methods - 1)), data_ci, "ref0");
    }
    if (regular_classes_.size() > 1 && rng_.chance(0.2)) {
        std::size_t peer = ci;
        while (peer == ci) {
            peer = rng_.pick(regular_classes_);
        }
        add_attribute(ci, "peer0", name(peer));
        const auto mi = static_cast<std::size_t>(rng_.uniform(0, methods - 1));
        read(ci, mi, member(ci, "peer0"), 1);
        call(ci, mi, member(peer, "op0()"));
        drafts_[ci].neighbours.push_back(peer);
    }
}

std::size_t Generator::envious_method(std::size_t host, std::size_t envied, const std::string& local, bool data_access,
                                      bool move) {
    const std::size_t mi = add_method(host, local);
    std::vector<std::string> own;
    for (const AttributeDecl& attr : drafts_[host].decl.attributes) {
        if (attr.declared_type == "primitive") {
            own.push_back(attr.name);
        }
    }
    read(host, mi, member(host, rng_.pick(own)), 1);

    const ClassDecl& target = drafts_[envied].decl;
    const bool data = drafts_[envied].role == Role::Data;
    std::vector<std::string> fields;
    for (const AttributeDecl& attr : target.attributes) {
        if (attr.declared_type == "primitive") {
            fields.push_back(attr.name);
        }
    }
    if (data_access) {
        const auto k = static_cast<std::size_t>(rng_.uniform(4, static_cast<int>(fields.size())));
        for (std::size_t fi : rng_.sample(fields.size(), k)) {
            read(host, mi, member(envied, fields[fi]), rng_.uniform(1, 3));
        }
    } else if (data) {
        const std::vector<std::string> available = getters(envied);
        for (std::size_t g : rng_.sample(available.size(), static_cast<std::size_t>(rng_.uniform(1, 2)))) {
            call(host, mi, member(envied, available[g]));
        }
    } else {
        const auto ops = static_cast<std::size_t>(std::count_if(
            target.methods.begin(), target.methods.end(), [](const MethodDecl& m) { return m.name.rfind("op", 0) == 0; }));
        for (std::size_t o : rng_.sample(ops, static_cast<std::size_t>(rng_.uniform(1, 2)))) {
            call(host, mi, member(envied, "op" + std::to_string(o) + "()"));
        }
    }
    if (move && data) {
        const bool describes = std::any_of(target.methods.begin(), target.methods.end(),
                                           [](const MethodDecl& m) { return m.name == "describe()"; });
        if (describes && rng_.chance(0.5)) {
            call(host, mi, member(envied, "describe()"));
        } else {
            write(host, mi, member(envied, rng_.pick(fields)));
        }
    }
    return mi;
}

void Generator::own_commits(std::size_t ci, const std::string& method_id, int count) {
    std::vector<std::string> others;
    for (const MethodDecl& m : drafts_[ci].decl.methods) {
        const std::string id = member(ci, m.name);
        if (id != method_id && !quiet_methods_.contains(id)) {
            others.push_back(id);
        }
    }
    for (int k = 0; k < count && !others.empty(); ++k) {
        extra_commits_.push_back({method_id, rng_.pick(others)});
    }
}

void Generator::envied_commits(const std::string& method_id, std::size_t envied, int count) {
    const auto& methods = drafts_[envied].decl.methods;
    for (int k = 0; k < count; ++k) {
        std::vector<std::string> change{method_id};
        for (std::size_t mi : rng_.sample(methods.size(), static_cast<std::size_t>(rng_.uniform(1, 2)))) {
            change.push_back(member(envied, methods[mi].name));
        }
        extra_commits_.push_back(std::move(change));
    }
}

void Generator::add_decoys() {
    for (std::size_t ci : structure_decoys_) {
        const auto methods = static_cast<int>(drafts_[ci].decl.methods.size());
        associate_data_class(ci, static_cast<std::size_t>(rng_.uniform(0, methods - 1)), rng_.pick(data_classes_),
                             "dto0");
        injections_.push_back({AntiPattern::GodClass, name(ci), false, {"structure"}});
    }
    for (std::size_t ci : concept_decoys_) {
        add_attribute(ci, "w0");
        add_attribute(ci, "w1");
        for (int i = 0; i < 2; ++i) {
            const std::size_t mi = add_method(ci, "aux" + std::to_string(i));
            read(ci, mi, member(ci, "w0"), rng_.uniform(1, 2));
            read(ci, mi, member(ci, "w1"), rng_.uniform(1, 2));
        }
        injections_.push_back({AntiPattern::GodClass, name(ci), false, {"concepts"}});
    }

    const auto decoys = static_cast<std::size_t>(std::lround(params_.noise_rate * params_.n_classes));
    for (std::size_t k = 0; k < decoys; ++k) {
        const std::size_t host = rng_.pick(regular_classes_);
        const std::size_t envied = rng_.pick(data_classes_);
        const std::size_t mi = envious_method(host, envied, "summarize" + std::to_string(k), true, false);
        const std::string id = member(host, method(host, mi).name);
        own_commits(host, id, rng_.uniform(1, 2));
        injections_.push_back({AntiPattern::FeatureEnvy, CandidatePair{id, name(envied)}.label(), false, {"data_access"}});
    }
    for (std::size_t k = 0; k < decoys; ++k) {
        const std::size_t host = rng_.pick(regular_classes_);
        const std::size_t envied = rng_.pick(data_classes_);
        const std::size_t mi = envious_method(host, envied, "update" + std::to_string(k), false, true);
        const std::string id = member(host, method(host, mi).name);
        own_commits(host, id, rng_.uniform(1, 2));
        injections_.push_back({AntiPattern::FeatureEnvy, CandidatePair{id, name(envied)}.label(), false, {"move"}});
    }
    std::vector<Delegation> pool;
    for (const Delegation& d : delegations_) {
        if (drafts_[d.ci].role == Role::Regular) {
            pool.push_back(d);
        }
    }
    for (std::size_t p : rng_.sample(pool.size(), decoys)) {
        const auto [ci, mi, envied] = pool[p];
        const std::string id = member(ci, method(ci, mi).name);
        if (quiet_methods_.contains(id)) {
            continue;
        }
        quiet_methods_.insert(id);
        envied_commits(id, envied, rng_.uniform(3, 5));
        injections_.push_back({AntiPattern::FeatureEnvy, CandidatePair{id, name(envied)}.label(), false, {"history"}});
    }
}

void Generator::inject_feature_envy() {
    const auto count = static_cast<std::size_t>(std::lround(params_.rates.feature_envy * params_.n_classes));
    for (std::size_t k = 0; k < count; ++k) {
        const Symptoms s = draw_symptoms();
        const bool data_access = s.a;
        const bool move = s.b;
        const bool history = s.c;
        const std::size_t host = rng_.pick(regular_classes_);
        std::size_t envied = rng_.pick(data_classes_);
        if (!data_access && regular_classes_.size() > 1 && rng_.chance(0.3)) {
            envied = host;
            while (envied == host) {
                envied = rng_.pick(regular_classes_);
            }
        }
        const std::size_t mi = envious_method(host, envied, "apply" + std::to_string(k), data_access, move);
        const std::string id = member(host, method(host, mi).name);
        if (history) {
            quiet_methods_.insert(id);
            envied_commits(id, envied, rng_.uniform(3, 6));
        } else {
            own_commits(host, id, rng_.uniform(1, 2));
        }
        const CandidatePair pair{id, name(envied)};
        truth_.feature_envy.push_back(pair);
        Injection injection{AntiPattern::FeatureEnvy, pair.label(), true, {}};
        if (data_access) {
            injection.symptoms.push_back("data_access");
        }
        if (move) {
            injection.symptoms.push_back("move");
        }
        if (history) {
            injection.symptoms.push_back("history");
        }
        injections_.push_back(std::move(injection));
    }
}

std::vector<Commit> Generator::build_history() {
    const std::size_t n = drafts_.size();
    std::vector<std::vector<std::string>> eligible(n);
    for (std::size_t ci = 0; ci < n; ++ci) {
        for (const MethodDecl& m : drafts_[ci].decl.methods) {
            const std::string id = member(ci, m.name);
            if (!quiet_methods_.contains(id)) {
                eligible[ci].push_back(id);
            }
        }
    }
    std::vector<std::vector<std::string>> changes;
    for (int c = 0; c < params_.history_length; ++c) {
        std::set<std::string> methods;
        auto take = [&](std::size_t ci, int k) {
            for (std::size_t i : rng_.sample(eligible[ci].size(), static_cast<std::size_t>(k))) {
                methods.insert(eligible[ci][i]);
            }
        };
        const auto primary = static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(n) - 1));
        take(primary, rng_.uniform(2, 3));
        if (!drafts_[primary].neighbours.empty() && rng_.chance(0.5)) {
            take(rng_.pick(drafts_[primary].neighbours), rng_.uniform(1, 2));
        }
        for (const auto& [ci, rate] : hot_classes_) {
            if (rng_.chance(rate)) {
                take(ci, rng_.uniform(1, 2));
            }
        }
        if (!methods.empty()) {
            changes.emplace_back(methods.begin(), methods.end());
        }
    }
    changes.insert(changes.end(), extra_commits_.begin(), extra_commits_.end());
    rng_.shuffle(changes);

    std::vector<Commit> commits;
    commits.reserve(changes.size());
    for (std::size_t i = 0; i < changes.size(); ++i) {
        Commit commit;
        char id[24];
        std::snprintf(id, sizeof id, "c%05zu", i);
        commit.commit_id = id;
        commit.changed_methods = changes[i];
        std::sort(commit.changed_methods.begin(), commit.changed_methods.end());
        commit.changed_methods.erase(std::unique(commit.changed_methods.begin(), commit.changed_methods.end()),
                                     commit.changed_methods.end());
        for (const std::string& m : commit.changed_methods) {
            commit.changed_classes.push_back(owner_of(m));
        }
        std::sort(commit.changed_classes.begin(), commit.changed_classes.end());
        commit.changed_classes.erase(std::unique(commit.changed_classes.begin(), commit.changed_classes.end()),
                                     commit.changed_classes.end());
        commits.push_back(std::move(commit));
    }
    return commits;
}

SyntheticSystem Generator::run(std::uint64_t seed) {
    assign_roles();
    for (std::size_t ci = 0; ci < drafts_.size(); ++ci) {
        if (drafts_[ci].role == Role::Data) {
            build_data_class(ci);
        } else if (drafts_[ci].role == Role::Regular) {
            build_regular_class(ci);
        }
    }
    for (const auto& [ci, symptoms] : god_classes_) {
        build_god_class(ci, symptoms);
        truth_.god_classes.push_back(name(ci));
    }
    for (std::size_t ci : regular_classes_) {
        link_regular_class(ci);
    }
    add_decoys();
    inject_feature_envy();

    SyntheticSystem system;
    system.seed = seed;
    system.params = params_;
    std::vector<Commit> commits = build_history();
    std::vector<ClassDecl> classes;
    classes.reserve(drafts_.size());
    for (Draft& draft : drafts_) {
        classes.push_back(std::move(draft.decl));
    }
    system.model = SystemModel::build(system_id_, std::move(classes));
    system.history = ChangeHistory::build(system_id_, std::move(commits));
    std::sort(truth_.god_classes.begin(), truth_.god_classes.end());
    std::sort(truth_.feature_envy.begin(), truth_.feature_envy.end());
    system.truth = std::move(truth_);
    system.injections = std::move(injections_);
    return system;
}

} // namespace

SyntheticSystem synth_generate(std::uint64_t seed, const SynthParams& params, const std::string& system_id) {
    params.validate();
    return Generator(seed, params, system_id).run(seed);
}

std::vector<SyntheticSystem> synth_corpus(std::uint64_t seed, int systems, const SynthParams& params) {
    if (systems < 1) {
        throw std::invalid_argument("synth: corpus needs at least one system");
    }
    std::vector<SyntheticSystem> corpus;
    for (int i = 0; i < systems; ++i) {
        corpus.push_back(
            synth_generate(mix_seed(seed, static_cast<std::uint64_t>(i)), params, "sys" + std::to_string(i)));
    }
    return corpus;
}

} // namespace smad
