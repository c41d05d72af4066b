#include "smad/config.hpp"

#include "json_util.hpp"

namespace smad {

AnalysisConfig load_analysis_config(const std::string& document) {
    const json root = parse_json_document(document);
    if (!root.is_object()) {
        throw ParseError("config must be an object");
    }
    AnalysisConfig config;
    const std::string where = "config";
    if (root.contains("controller_lexicon")) {
        std::vector<std::string> words;
        for (const json& word : require_array(root, "controller_lexicon", where)) {
            if (!word.is_string()) {
                throw ParseError("controller_lexicon entries must be strings");
            }
            words.push_back(word.get<std::string>());
        }
        config.controller_lexicon = Lexicon(std::move(words));
    }
    if (root.contains("many_data_class_threshold")) {
        config.many_data_class_threshold = require_int(root, "many_data_class_threshold", where);
    }
    if (root.contains("data_class_accessor_threshold")) {
        config.data_class_accessor_threshold = require_int(root, "data_class_accessor_threshold", where);
    }
    if (root.contains("threshold_stddev_factor")) {
        config.threshold_policy.stddev_factor = require_number(root, "threshold_stddev_factor", where);
    }
    if (root.contains("merge_threshold")) {
        config.merge_threshold = require_number(root, "merge_threshold", where);
    }
    if (root.contains("min_concept_size")) {
        config.min_concept_size = static_cast<std::size_t>(require_int(root, "min_concept_size", where));
    }
    if (root.contains("ratio_cap")) {
        config.ratio_cap = require_number(root, "ratio_cap", where);
    }
    if (root.contains("hist_gc_alpha")) {
        config.hist_gc_alpha = require_number(root, "hist_gc_alpha", where);
    }
    if (root.contains("hist_fe_beta")) {
        config.hist_fe_beta = require_number(root, "hist_fe_beta", where);
    }
    if (root.contains("incode")) {
        const json& incode = root["incode"];
        config.incode.atfd = require_int(incode, "atfd", "incode");
        config.incode.laa = require_int(incode, "laa", "incode");
        config.incode.fdp = require_int(incode, "fdp", "incode");
    }
    if (config.many_data_class_threshold < 1 || config.data_class_accessor_threshold < 1 ||
        config.incode.atfd < 1 || config.incode.laa < 1 || config.incode.fdp < 1 || config.ratio_cap <= 0.0) {
        throw ValidationError("config thresholds must be positive");
    }
    return config;
}

} // namespace smad
