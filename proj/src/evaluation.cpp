#include "smad/evaluation.hpp"

#include "smad/csv.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace smad {

EvalReport leave_one_out(std::span<const InstanceTable> systems, Pipeline& pipeline) {
    if (systems.size() < 2) {
        throw std::invalid_argument("leave_one_out needs at least two systems");
    }
    for (const InstanceTable& table : systems) {
        if (table.schema != systems.front().schema || !table.labeled()) {
            throw std::invalid_argument("leave_one_out: systems must be labeled and share one schema");
        }
    }
    EvalReport report;
    report.approach = pipeline.name();
    report.pattern = systems.front().pattern();
    for (std::size_t held_out = 0; held_out < systems.size(); ++held_out) {
        std::vector<const InstanceTable*> train;
        for (std::size_t i = 0; i < systems.size(); ++i) {
            if (i != held_out) {
                train.push_back(&systems[i]);
            }
        }
        const InstanceTable& test = systems[held_out];
        const std::vector<bool> predicted = pipeline.fit_predict(train, test);
        if (predicted.size() != test.size()) {
            throw std::logic_error("pipeline returned " + std::to_string(predicted.size()) + " predictions for " +
                                   std::to_string(test.size()) + " instances");
        }
        SystemScore score;
        score.system = test.system_id;
        for (std::size_t i = 0; i < test.size(); ++i) {
            score.matrix.add(predicted[i], test.labels[i] != 0);
        }
        score.scores = scores(score.matrix);
        report.overall_matrix += score.matrix;
        report.per_system.push_back(std::move(score));
    }
    report.overall = scores(report.overall_matrix);
    return report;
}

// ---- detector tuning -------------------------------------------------------

std::vector<double> hist_gc_alpha_grid() {
    std::vector<double> grid;
    for (int step = 0; step <= 40; ++step) {
        grid.push_back(0.5 * step);
    }
    return grid;
}

std::vector<double> hist_fe_beta_grid() {
    std::vector<double> grid;
    for (int value = 100; value <= 300; value += 5) {
        grid.push_back(value);
    }
    return grid;
}

std::vector<InCodeThresholds> incode_grid() {
    std::vector<InCodeThresholds> grid;
    for (int atfd = 1; atfd <= 5; ++atfd) {
        for (int laa = 1; laa <= 5; ++laa) {
            for (int fdp = 1; fdp <= 5; ++fdp) {
                grid.push_back({atfd, laa, fdp});
            }
        }
    }
    return grid;
}

double detector_overall_mcc(std::span<const InstanceTable* const> tables, Tool tool,
                            const DetectorThresholds& thresholds) {
    ConfusionMatrix merged;
    for (const InstanceTable* table : tables) {
        for (std::size_t i = 0; i < table->size(); ++i) {
            merged.add(verdict_of(detector_verdicts(*table, i, thresholds), tool), table->labels.at(i) != 0);
        }
    }
    return mcc(merged);
}

namespace {

template <class Value, class Apply>
Value best_of(const std::vector<Value>& grid, std::span<const InstanceTable* const> tables, Tool tool,
              DetectorThresholds thresholds, Apply apply) {
    Value best = grid.front();
    double best_mcc = -2.0;
    for (const Value& value : grid) {
        apply(thresholds, value);
        const double score = detector_overall_mcc(tables, tool, thresholds);
        if (score > best_mcc) {
            best_mcc = score;
            best = value;
        }
    }
    return best;
}

} // namespace

DetectorThresholds tune_detectors(std::span<const InstanceTable* const> train, const DetectorThresholds& defaults) {
    if (train.empty()) {
        throw std::invalid_argument("tune_detectors needs training systems");
    }
    DetectorThresholds tuned = defaults;
    if (train.front()->pattern() == AntiPattern::GodClass) {
        tuned.hist_gc_alpha = best_of(hist_gc_alpha_grid(), train, Tool::Hist, tuned,
                                      [](DetectorThresholds& t, double v) { t.hist_gc_alpha = v; });
    } else {
        tuned.hist_fe_beta = best_of(hist_fe_beta_grid(), train, Tool::Hist, tuned,
                                     [](DetectorThresholds& t, double v) { t.hist_fe_beta = v; });
        tuned.incode = best_of(incode_grid(), train, Tool::RuleCard, tuned,
                               [](DetectorThresholds& t, const InCodeThresholds& v) { t.incode = v; });
    }
    return tuned;
}

// ---- pipelines ---------------------------------------------------------------

DetectorPipeline::DetectorPipeline(Tool tool, bool tune, DetectorThresholds defaults)
    : tool_(tool), tune_(tune), defaults_(defaults) {}

std::string DetectorPipeline::name() const {
    return std::string(to_string(tool_));
}

std::vector<bool> DetectorPipeline::fit_predict(std::span<const InstanceTable* const> train,
                                                const InstanceTable& test) {
    const DetectorThresholds thresholds = tune_ ? tune_detectors(train, defaults_) : defaults_;
    std::vector<bool> predicted;
    for (std::size_t i = 0; i < test.size(); ++i) {
        predicted.push_back(verdict_of(detector_verdicts(test, i, thresholds), tool_));
    }
    return predicted;
}

VotePipeline::VotePipeline(std::optional<int> k) : k_(k) {
    if (k_ && (*k_ < 1 || *k_ > 3)) {
        throw std::invalid_argument("vote policy must lie in [1, 3]");
    }
}

std::string VotePipeline::name() const {
    return k_ ? "Vote(k=" + std::to_string(*k_) + ")" : "Vote";
}

std::vector<bool> VotePipeline::fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) {
    const DetectorThresholds thresholds = tune_detectors(train);
    int k = k_.value_or(1);
    if (!k_) {
        double best = -2.0;
        for (int policy = 1; policy <= 3; ++policy) {
            ConfusionMatrix merged;
            for (const InstanceTable* table : train) {
                for (std::size_t i = 0; i < table->size(); ++i) {
                    merged.add(vote(detector_verdicts(*table, i, thresholds), policy), table->labels.at(i) != 0);
                }
            }
            if (mcc(merged) > best) {
                best = mcc(merged);
                k = policy;
            }
        }
    }
    std::vector<bool> predicted;
    for (std::size_t i = 0; i < test.size(); ++i) {
        predicted.push_back(vote(detector_verdicts(test, i, thresholds), k));
    }
    return predicted;
}

AsciPipeline::AsciPipeline(AsciOptions options) : options_(options) {}

std::vector<bool> AsciPipeline::fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) {
    const DetectorThresholds thresholds = tune_detectors(train);
    const TreeHyperParams hp = train.size() >= 2
                                   ? tune_asci(train, options_.trials, options_.seed, thresholds).best
                                   : TreeHyperParams{};
    const AsciModel model = asci_train(asci_training_set(train, thresholds), hp,
                                       mix_seed(options_.seed, static_cast<std::uint64_t>(options_.trials)));
    std::vector<bool> predicted;
    for (std::size_t i = 0; i < test.size(); ++i) {
        predicted.push_back(asci_predict(model, test.row(i), detector_verdicts(test, i, thresholds)));
    }
    return predicted;
}

SmadPipeline::SmadPipeline(SmadOptions options) : options_(options) {}

std::vector<bool> SmadPipeline::fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) {
    HyperParams hp;
    if (train.size() >= 2) {
        InnerCvOptions inner;
        inner.epochs = options_.inner_epochs;
        inner.cache = options_.cache;
        hp = tune_smad(train, options_.trials, options_.seed, inner).best;
    }
    chosen_.push_back(hp);
    const MlpEnsemble ensemble =
        train_smad(train, hp, mix_seed(options_.seed, static_cast<std::uint64_t>(options_.trials)),
                   options_.final_training, options_.members);
    return predict_smad(ensemble, test);
}

MlpEnsemble train_smad(std::span<const InstanceTable* const> tables, const HyperParams& hp, std::uint64_t seed,
                       const TrainOptions& options, std::size_t members) {
    return train_ensemble(to_batch(tables), hp, seed, options, tables.front()->schema, members);
}

std::vector<bool> predict_smad(const MlpEnsemble& ensemble, const InstanceTable& table) {
    std::vector<bool> predicted;
    predicted.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        predicted.push_back(boosted_predict(ensemble, table.row(i)).flagged);
    }
    return predicted;
}

// ---- reporting ---------------------------------------------------------------

namespace {

std::string cell(const std::optional<double>& value) {
    return value ? csv::format_double(*value) : "--";
}

} // namespace

void write_report_table(std::ostream& out, std::span<const EvalReport> reports) {
    csv::write_row(out, {"approach", "anti_pattern", "system", "precision", "recall", "mcc"});
    for (const EvalReport& report : reports) {
        const std::string pattern(to_string(report.pattern));
        for (const SystemScore& s : report.per_system) {
            csv::write_row(out, {report.approach, pattern, s.system, cell(s.scores.precision), cell(s.scores.recall),
                                 csv::format_double(s.scores.mcc)});
        }
        csv::write_row(out, {report.approach, pattern, "overall", cell(report.overall.precision),
                             cell(report.overall.recall), csv::format_double(report.overall.mcc)});
    }
}

} // namespace smad
