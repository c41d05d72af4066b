#include "smad/corpus.hpp"

#include "smad/errors.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace smad {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LookupError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << text;
}

std::string serialize_ground_truth(const GroundTruth& truth) {
    json fe = json::array();
    for (const CandidatePair& pair : truth.feature_envy) {
        fe.push_back({{"method", pair.method_id}, {"envied_class", pair.envied_class}});
    }
    const json out = {{"god_classes", truth.god_classes}, {"feature_envy", fe}};
    return out.dump(2) + "\n";
}

GroundTruth load_ground_truth(const std::string& document) {
    const json doc = parse_json_document(document);
    GroundTruth truth;
    for (const json& name : require_array(doc, "god_classes", "labels")) {
        if (!name.is_string()) {
            throw ParseError("god_classes must hold class names");
        }
        truth.god_classes.push_back(name.get<std::string>());
    }
    for (const json& pair : require_array(doc, "feature_envy", "labels")) {
        truth.feature_envy.push_back(
            {require_string(pair, "method", "feature_envy entry"), require_string(pair, "envied_class", "feature_envy entry")});
    }
    std::sort(truth.god_classes.begin(), truth.god_classes.end());
    std::sort(truth.feature_envy.begin(), truth.feature_envy.end());
    return truth;
}

std::string corpus_manifest(std::uint64_t seed, const std::vector<SyntheticSystem>& systems) {
    json entries = json::array();
    for (const SyntheticSystem& system : systems) {
        const std::string& id = system.model.system_id();
        const SynthParams& p = system.params;
        json injections = json::array();
        for (const Injection& injection : system.injections) {
            injections.push_back({{"anti_pattern", std::string(to_string(injection.pattern))},
                                  {"entity", injection.entity},
                                  {"smell", injection.smell},
                                  {"symptoms", injection.symptoms}});
        }
        entries.push_back({
            {"id", id},
            {"seed", system.seed},
            {"facts", id + ".facts.json"},
            {"history", id + ".history.json"},
            {"labels", id + ".labels.json"},
            {"params",
             {{"n_classes", p.n_classes},
              {"god_class_rate", p.rates.god_class},
              {"feature_envy_rate", p.rates.feature_envy},
              {"history_length", p.history_length},
              {"data_class_share", p.data_class_share},
              {"noise_rate", p.noise_rate},
              {"symptom_probability", p.symptom_probability}}},
            {"counts",
             {{"classes", system.model.classes().size()},
              {"commits", system.history.commits().size()},
              {"god_classes", system.truth.god_classes.size()},
              {"feature_envy", system.truth.feature_envy.size()},
              {"fe_candidates", enumerate_fe_candidates(system.model).size()}}},
            {"injections", injections},
        });
    }
    const json out = {{"format", "smad-corpus"}, {"version", 1}, {"seed", seed}, {"systems", entries}};
    return out.dump(2) + "\n";
}

void write_corpus(const std::filesystem::path& dir, std::uint64_t seed, const std::vector<SyntheticSystem>& systems) {
    std::filesystem::create_directories(dir);
    for (const SyntheticSystem& system : systems) {
        const std::string& id = system.model.system_id();
        write_text_file(dir / (id + ".facts.json"), serialize_code_facts(system.model));
        write_text_file(dir / (id + ".history.json"), serialize_history(system.history));
        write_text_file(dir / (id + ".labels.json"), serialize_ground_truth(system.truth));
    }
    write_text_file(dir / "manifest.json", corpus_manifest(seed, systems));
}

std::vector<LabeledSystem> load_corpus(const std::filesystem::path& dir) {
    const json manifest = parse_json_document(read_text_file(dir / "manifest.json"));
    std::vector<LabeledSystem> systems;
    for (const json& entry : require_array(manifest, "systems", "manifest")) {
        LabeledSystem system;
        system.id = require_string(entry, "id", "manifest entry");
        system.model = load_code_facts(read_text_file(dir / require_string(entry, "facts", "manifest entry")));
        system.history = load_history(read_text_file(dir / require_string(entry, "history", "manifest entry")));
        system.truth = load_ground_truth(read_text_file(dir / require_string(entry, "labels", "manifest entry")));
        systems.push_back(std::move(system));
    }
    if (systems.empty()) {
        throw ValidationError("corpus manifest lists no systems");
    }
    return systems;
}

} // namespace smad
