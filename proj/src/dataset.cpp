#include "smad/dataset.hpp"

#include "smad/csv.hpp"
#include "smad/errors.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <set>

namespace smad {

LabeledSystem labeled_system(SyntheticSystem system) {
    LabeledSystem labeled;
    labeled.id = system.model.system_id();
    labeled.model = std::move(system.model);
    labeled.history = std::move(system.history);
    labeled.truth = std::move(system.truth);
    return labeled;
}

DetectorThresholds DetectorThresholds::from(const AnalysisConfig& config) {
    return {config.hist_gc_alpha, config.hist_fe_beta, config.incode};
}

std::size_t InstanceTable::positives() const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
}

InstanceTable build_instances(const LabeledSystem& system, AntiPattern pattern, const AnalysisConfig& config) {
    const SystemModel& model = system.model;
    const FeatureExtractor extractor(model, system.history, config);
    InstanceTable table;
    table.system_id = system.id;
    table.schema = schema_for(pattern);

    if (pattern == AntiPattern::GodClass) {
        const auto decor = decor_god_class(model, config);
        const std::set<std::string> flagged(decor.begin(), decor.end());
        const std::set<std::string> truth(system.truth.god_classes.begin(), system.truth.god_classes.end());
        for (std::size_t ci = 0; ci < model.classes().size(); ++ci) {
            const std::string& name = model.class_decl(ci).qualified_name;
            const FeatureVector v = extractor.god_class_features(name);
            table.entities.push_back(name);
            table.features.insert(table.features.end(), v.values.begin(), v.values.end());
            table.labels.push_back(truth.contains(name) ? 1 : 0);
            table.rule_card.push_back(flagged.contains(name));
            table.jdeodorant.push_back(v.values[5] >= 1.0);
            table.hist_ratio.push_back(v.values[4]);
        }
        return table;
    }

    const std::set<CandidatePair> truth(system.truth.feature_envy.begin(), system.truth.feature_envy.end());
    std::string last_method;
    InCodeMethodStats stats;
    for (const CandidatePair& pair : enumerate_fe_candidates(model)) {
        if (pair.method_id != last_method) {
            stats = incode_method_stats(model.entity(pair.method_id), model);
            last_method = pair.method_id;
        }
        const FeatureVector v = extractor.feature_envy_features(pair);
        table.entities.push_back(pair.label());
        table.features.insert(table.features.end(), v.values.begin(), v.values.end());
        table.labels.push_back(truth.contains(pair) ? 1 : 0);
        table.rule_card.push_back(false);
        table.jdeodorant.push_back(v.values[6] == 1.0);
        table.hist_ratio.push_back(v.values[3]);
        table.incode.push_back(stats);
        table.incode_envied.push_back(stats.envied_class == pair.envied_class);
    }
    return table;
}

ToolVerdicts detector_verdicts(const InstanceTable& table, std::size_t row, const DetectorThresholds& thresholds) {
    if (table.pattern() == AntiPattern::GodClass) {
        return {table.rule_card.at(row), hist_god_class_rule(table.hist_ratio.at(row), thresholds.hist_gc_alpha),
                table.jdeodorant.at(row)};
    }
    return {table.incode_envied.at(row) && incode_rule(table.incode.at(row), thresholds.incode),
            hist_feature_envy_rule(table.hist_ratio.at(row), thresholds.hist_fe_beta), table.jdeodorant.at(row)};
}

std::vector<ToolVerdicts> detector_verdicts(const InstanceTable& table, const DetectorThresholds& thresholds) {
    std::vector<ToolVerdicts> verdicts;
    verdicts.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        verdicts.push_back(detector_verdicts(table, i, thresholds));
    }
    return verdicts;
}

LabeledBatch to_batch(std::span<const InstanceTable* const> tables) {
    if (tables.empty()) {
        throw std::invalid_argument("to_batch needs at least one table");
    }
    LabeledBatch batch(tables.front()->dim());
    for (const InstanceTable* table : tables) {
        if (table->schema != tables.front()->schema || !table->labeled()) {
            throw std::invalid_argument("to_batch: tables must be labeled and share one schema");
        }
        batch.values.insert(batch.values.end(), table->features.begin(), table->features.end());
        batch.labels.insert(batch.labels.end(), table->labels.begin(), table->labels.end());
    }
    return batch;
}

void write_instances(std::ostream& out, const InstanceTable& table) {
    csv::Row header{"entity", "label"};
    for (const std::string& name : feature_names(table.schema)) {
        header.push_back(name);
    }
    csv::write_row(out, header);
    for (std::size_t i = 0; i < table.size(); ++i) {
        csv::Row row{table.entities[i], table.labeled() ? std::to_string(table.labels[i]) : ""};
        for (double value : table.row(i)) {
            row.push_back(csv::format_double(value));
        }
        csv::write_row(out, row);
    }
}

InstanceTable read_instances(const std::string& text) {
    const std::vector<csv::Row> rows = csv::parse(text);
    if (rows.empty()) {
        throw ParseError("instance file has no header row");
    }
    InstanceTable table;
    const csv::Row& header = rows.front();
    bool recognised = false;
    for (FeatureSchema schema : {FeatureSchema::GodClass6, FeatureSchema::FeatureEnvy7}) {
        csv::Row expected{"entity", "label"};
        for (const std::string& name : feature_names(schema)) {
            expected.push_back(name);
        }
        if (header == expected) {
            table.schema = schema;
            recognised = true;
        }
    }
    if (!recognised) {
        throw ParseError("instance header does not match a known feature schema", 1, 1);
    }
    const std::size_t width = 2 + table.dim();
    bool any_label = false;
    bool any_missing = false;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const csv::Row& row = rows[r];
        if (row.size() == 1 && row.front().empty()) {
            continue;
        }
        if (row.size() != width) {
            throw ParseError("instance row has " + std::to_string(row.size()) + " cells, expected " +
                                 std::to_string(width),
                             r + 1, 1);
        }
        table.entities.push_back(row[0]);
        if (row[1].empty()) {
            any_missing = true;
        } else if (row[1] == "0" || row[1] == "1") {
            any_label = true;
            table.labels.push_back(row[1] == "1" ? 1 : 0);
        } else {
            throw ParseError("label must be 0, 1 or empty", r + 1, 2);
        }
        for (std::size_t c = 2; c < width; ++c) {
            double value = 0.0;
            const std::string& cell = row[c];
            const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (result.ec != std::errc{} || result.ptr != cell.data() + cell.size()) {
                throw ParseError("malformed number '" + cell + "'", r + 1, c + 1);
            }
            table.features.push_back(value);
        }
    }
    if (any_label && any_missing) {
        throw ParseError("instance file mixes labeled and unlabeled rows");
    }
    return table;
}

} // namespace smad
