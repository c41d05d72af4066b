#include "smad/corpus.hpp"
#include "smad/csv.hpp"
#include "smad/errors.hpp"
#include "smad/evaluation.hpp"
#include "smad/oracle.hpp"
#include "smad/synth.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using namespace smad;

/// Writes to `path`, or to stdout when it is empty.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw std::runtime_error("cannot write '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

AnalysisConfig config_from(const std::string& path) {
    return path.empty() ? AnalysisConfig{} : load_analysis_config(read_text_file(path));
}

LabeledSystem unlabeled_system(const std::string& facts, const std::string& history) {
    LabeledSystem system;
    system.model = load_code_facts(read_text_file(facts));
    system.history = history.empty() ? ChangeHistory{} : load_history(read_text_file(history));
    system.id = system.model.system_id();
    return system;
}

std::vector<InstanceTable> corpus_tables(const std::string& dir, AntiPattern pattern, const AnalysisConfig& config) {
    std::vector<InstanceTable> tables;
    for (const LabeledSystem& system : load_corpus(dir)) {
        tables.push_back(build_instances(system, pattern, config));
    }
    return tables;
}

std::vector<const InstanceTable*> pointers(const std::vector<InstanceTable>& tables) {
    std::vector<const InstanceTable*> out;
    for (const InstanceTable& table : tables) {
        out.push_back(&table);
    }
    return out;
}

std::vector<AntiPattern> patterns_of(const std::string& text) {
    if (text == "all") {
        return {AntiPattern::GodClass, AntiPattern::FeatureEnvy};
    }
    return {parse_anti_pattern(text)};
}

struct Common {
    std::string corpus;
    std::string pattern = "all";
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    int trials = 200;
};

void add_corpus_options(CLI::App* cmd, Common& c, bool all_patterns) {
    cmd->add_option("--corpus", c.corpus, "Corpus directory with manifest.json")->required()->check(CLI::ExistingDirectory);
    auto* pattern = cmd->add_option("--pattern", c.pattern, "god-class, feature-envy" + std::string(all_patterns ? " or all" : ""));
    if (!all_patterns) {
        pattern->required();
    }
    cmd->add_option("--config", c.config, "Detector configuration (JSON)");
    cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

void run_reports(const Common& c, const std::function<std::unique_ptr<Pipeline>()>& make) {
    const AnalysisConfig config = config_from(c.config);
    std::vector<EvalReport> reports;
    for (AntiPattern pattern : patterns_of(c.pattern)) {
        const std::vector<InstanceTable> tables = corpus_tables(c.corpus, pattern, config);
        const std::unique_ptr<Pipeline> pipeline = make();
        reports.push_back(leave_one_out(tables, *pipeline));
    }
    Output out(c.out);
    write_report_table(out.stream(), reports);
}

int run(int argc, char** argv) {
    CLI::App app{"Anti-pattern detection by aggregating detector core metrics"};
    app.require_subcommand(1);

    // synth
    Common synth;
    int classes = 200;
    int systems = 8;
    SynthParams params;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic corpus");
    synth_cmd->add_option("--seed", synth.seed, "Corpus seed");
    synth_cmd->add_option("--classes", classes, "Classes per system")->check(CLI::Range(10, 100000));
    synth_cmd->add_option("--systems", systems, "Number of systems")->check(CLI::Range(1, 1000));
    synth_cmd->add_option("--history", params.history_length, "Background commits per system");
    synth_cmd->add_option("--god-class-rate", params.rates.god_class, "Share of God Classes");
    synth_cmd->add_option("--feature-envy-rate", params.rates.feature_envy, "Feature Envy pairs per class");
    synth_cmd->add_option("--noise", params.noise_rate, "Share of single-symptom decoys");
    synth_cmd->add_option("--out", synth.out, "Output directory")->required();

    // detect
    std::string model_path, facts_path, history_path, pattern_text, config_path, out_path;
    auto* detect_cmd = app.add_subcommand("detect", "Apply a trained ensemble to one system");
    detect_cmd->add_option("--model", model_path, "Trained ensemble (JSON)")->required()->check(CLI::ExistingFile);
    detect_cmd->add_option("--facts", facts_path, "Code facts (JSON)")->required()->check(CLI::ExistingFile);
    detect_cmd->add_option("--history", history_path, "Change history (JSON)")->check(CLI::ExistingFile);
    detect_cmd->add_option("--pattern", pattern_text, "god-class or feature-envy")->required();
    detect_cmd->add_option("--config", config_path, "Detector configuration (JSON)");
    detect_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    // run-detectors
    auto* detectors_cmd = app.add_subcommand("run-detectors", "Run the standalone detectors on one system");
    detectors_cmd->add_option("--facts", facts_path, "Code facts (JSON)")->required()->check(CLI::ExistingFile);
    detectors_cmd->add_option("--history", history_path, "Change history (JSON)")->check(CLI::ExistingFile);
    detectors_cmd->add_option("--config", config_path, "Detector configuration (JSON)");
    detectors_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    // features
    auto* features_cmd = app.add_subcommand("features", "Extract the core-metric features of one system");
    features_cmd->add_option("--facts", facts_path, "Code facts (JSON)")->required()->check(CLI::ExistingFile);
    features_cmd->add_option("--history", history_path, "Change history (JSON)")->check(CLI::ExistingFile);
    features_cmd->add_option("--pattern", pattern_text, "god-class or feature-envy")->required();
    features_cmd->add_option("--config", config_path, "Detector configuration (JSON)");
    features_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    // train
    Common train;
    std::string hp_path;
    auto* train_cmd = app.add_subcommand("train", "Train an ensemble on every system of a corpus");
    add_corpus_options(train_cmd, train, false);
    train_cmd->add_option("--hp", hp_path, "Hyper-parameters (JSON)")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--seed", train.seed, "Training seed");
    train_cmd->get_option("--out")->required();

    // tune
    Common tune;
    int inner_epochs = 100;
    auto* tune_cmd = app.add_subcommand("tune", "Random search with leave-one-out over a corpus");
    add_corpus_options(tune_cmd, tune, false);
    tune_cmd->add_option("--trials", tune.trials, "Sampled configurations")->check(CLI::PositiveNumber);
    tune_cmd->add_option("--seed", tune.seed, "Search seed");
    tune_cmd->add_option("--epochs", inner_epochs, "Epochs per inner training")->check(CLI::PositiveNumber);

    // evaluate
    Common evaluate;
    bool loocv = false;
    std::vector<std::string> approaches{"RULE_CARD", "HIST", "JDEODORANT", "vote", "ASCI", "SMAD"};
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Leave-one-out comparison of every approach");
    add_corpus_options(evaluate_cmd, evaluate, true);
    evaluate_cmd->add_flag("--loocv", loocv, "Leave-one-system-out evaluation")->required();
    evaluate_cmd->add_option("--trials", evaluate.trials, "Random-search trials for ASCI and SMAD")
        ->check(CLI::PositiveNumber);
    evaluate_cmd->add_option("--seed", evaluate.seed, "Search and training seed");
    evaluate_cmd->add_option("--approaches", approaches, "Subset of RULE_CARD HIST JDEODORANT vote ASCI SMAD");

    // baseline
    Common baseline;
    std::optional<int> k;
    auto* baseline_cmd = app.add_subcommand("baseline", "Leave-one-out evaluation of an ensemble baseline");
    baseline_cmd->require_subcommand(1);
    auto* vote_cmd = baseline_cmd->add_subcommand("vote", "At least k detectors agree");
    add_corpus_options(vote_cmd, baseline, true);
    vote_cmd->add_option("--k", k, "Vote policy; tuned per fold when absent")->check(CLI::Range(1, 3));
    auto* asci_cmd = baseline_cmd->add_subcommand("asci", "Per-instance detector selection");
    add_corpus_options(asci_cmd, baseline, true);
    asci_cmd->add_option("--trials", baseline.trials, "Random-search trials")->check(CLI::PositiveNumber);
    asci_cmd->add_option("--seed", baseline.seed, "Search and training seed");

    // oracle-merge
    std::string ballots_path;
    auto* oracle_cmd = app.add_subcommand("oracle-merge", "Merge reviewer ballots into oracle labels");
    oracle_cmd->add_option("--ballots", ballots_path, "Ballots (JSON)")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    // history-from-git
    std::string log_path;
    GitLogOptions git;
    auto* git_cmd = app.add_subcommand("history-from-git", "Convert `git log --name-only` output into a history");
    git_cmd->add_option("--log", log_path, "Log text")->required()->check(CLI::ExistingFile);
    git_cmd->add_option("--system", git.system_id, "System id");
    git_cmd->add_option("--strip-prefix", git.strip_prefix, "Path prefix removed before conversion");
    git_cmd->add_option("--extension", git.extension, "Suffix of class files");
    git_cmd->add_option("--out", out_path, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (*synth_cmd) {
        params.n_classes = classes;
        params.validate();
        write_corpus(synth.out, synth.seed, synth_corpus(synth.seed, systems, params));
        std::cerr << "wrote " << systems << " systems to " << synth.out << "\n";
    } else if (*detect_cmd) {
        const MlpEnsemble ensemble = load_ensemble(read_text_file(model_path));
        InstanceTable table =
            build_instances(unlabeled_system(facts_path, history_path), parse_anti_pattern(pattern_text),
                            config_from(config_path));
        table.labels.clear();
        const std::optional<FeatureSchema> trained = ensemble.members.front().schema;
        if (trained && *trained != table.schema) {
            throw ValidationError("model was trained for " + std::string(to_string(*trained)) + ", facts give " +
                                  std::string(to_string(table.schema)));
        }
        Output out(out_path);
        csv::write_row(out.stream(), {"entity", "probability", "flagged"});
        for (std::size_t i = 0; i < table.size(); ++i) {
            const BoostedPrediction p = boosted_predict(ensemble, table.row(i));
            csv::write_row(out.stream(), {table.entities[i], csv::format_double(p.probability), p.flagged ? "1" : "0"});
        }
    } else if (*detectors_cmd) {
        const LabeledSystem system = unlabeled_system(facts_path, history_path);
        Output out(out_path);
        write_verdicts(out.stream(), run_detectors(system.model, system.history, config_from(config_path)));
    } else if (*features_cmd) {
        InstanceTable table = build_instances(unlabeled_system(facts_path, history_path),
                                              parse_anti_pattern(pattern_text), config_from(config_path));
        table.labels.clear();
        Output out(out_path);
        write_instances(out.stream(), table);
    } else if (*train_cmd) {
        const HyperParams hp = load_hyper_params(read_text_file(hp_path));
        const std::vector<InstanceTable> tables =
            corpus_tables(train.corpus, parse_anti_pattern(train.pattern), config_from(train.config));
        const std::vector<const InstanceTable*> all = pointers(tables);
        write_text_file(train.out, serialize_ensemble(train_smad(all, hp, train.seed)));
    } else if (*tune_cmd) {
        const std::vector<InstanceTable> tables =
            corpus_tables(tune.corpus, parse_anti_pattern(tune.pattern), config_from(tune.config));
        const std::vector<const InstanceTable*> all = pointers(tables);
        InnerCvOptions options;
        options.epochs = inner_epochs;
        const SearchResult<HyperParams> result = tune_smad(all, tune.trials, tune.seed, options);
        std::cerr << "best trial " << result.best_trial << " with validation MCC "
                  << csv::format_double(result.best_score) << "\n";
        Output out(tune.out);
        out.stream() << serialize_hyper_params(result.best);
    } else if (*evaluate_cmd) {
        const AnalysisConfig config = config_from(evaluate.config);
        std::vector<EvalReport> reports;
        for (AntiPattern pattern : patterns_of(evaluate.pattern)) {
            const std::vector<InstanceTable> tables = corpus_tables(evaluate.corpus, pattern, config);
            TrainingCache cache;
            for (const std::string& approach : approaches) {
                std::unique_ptr<Pipeline> pipeline;
                if (approach == "vote") {
                    pipeline = std::make_unique<VotePipeline>();
                } else if (approach == "ASCI") {
                    pipeline = std::make_unique<AsciPipeline>(AsciOptions{evaluate.trials, evaluate.seed});
                } else if (approach == "SMAD") {
                    SmadOptions options;
                    options.trials = evaluate.trials;
                    options.seed = evaluate.seed;
                    options.cache = &cache;
                    pipeline = std::make_unique<SmadPipeline>(options);
                } else {
                    pipeline = std::make_unique<DetectorPipeline>(parse_tool(approach));
                }
                reports.push_back(leave_one_out(tables, *pipeline));
            }
        }
        Output out(evaluate.out);
        write_report_table(out.stream(), reports);
    } else if (*vote_cmd) {
        run_reports(baseline, [&] { return std::make_unique<VotePipeline>(k); });
    } else if (*asci_cmd) {
        run_reports(baseline,
                    [&] { return std::make_unique<AsciPipeline>(AsciOptions{baseline.trials, baseline.seed}); });
    } else if (*oracle_cmd) {
        Output out(out_path);
        out.stream() << write_oracle_labels(oracle_merge(load_ballots(read_text_file(ballots_path))));
    } else if (*git_cmd) {
        Output out(out_path);
        out.stream() << serialize_history(history_from_git_log(read_text_file(log_path), git));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const smad::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const smad::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const smad::LookupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
