// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include "smad/baselines.hpp"
#include "smad/confusion.hpp"
#include "smad/detectors.hpp"
#include "smad/evaluation.hpp"
#include "smad/features.hpp"
#include "smad/history.hpp"
#include "smad/metrics.hpp"
#include "smad/oracle.hpp"
#include "smad/search.hpp"
#include "smad/synth.hpp"

#include "../oracle/brute_force.hpp"
#include "../support/gradcheck.hpp"
#include "../support/random_system.hpp"
#include "../support/tree_checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace smad;
using namespace smad::testing;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const char* name, double seconds, double limit, const std::string& detail) {
    const bool in_time = limit <= 0.0 || seconds < limit;
    const bool pass = ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s  %-24s %7.1fs  %s%s\n", pass ? "PASS" : "FAIL", name, seconds, detail.c_str(),
                in_time ? "" : "  (over time limit)");
    std::fflush(stdout);
}

double since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<const InstanceTable*> pointers(const std::vector<InstanceTable>& tables) {
    std::vector<const InstanceTable*> out;
    for (const InstanceTable& t : tables) {
        out.push_back(&t);
    }
    return out;
}

std::set<brute::Pair> as_pairs(const std::vector<CandidatePair>& v) {
    std::set<brute::Pair> out;
    for (const CandidatePair& p : v) {
        out.emplace(p.method_id, p.envied_class);
    }
    return out;
}

// ---------------------------------------------------------------------------

void gradient_fidelity() {
    const auto start = Clock::now();
    double worst = 0.0;
    std::size_t components = 0;
    int cases = 0;
    for (int layers = 1; layers <= 3; ++layers) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const GradCheck c = check_gradient(random_grad_case(1000 * layers + seed, layers), 1e-5);
            worst = std::max(worst, c.max_relative_error);
            components += c.components;
            ++cases;
        }
    }
    report(worst <= 1e-4, "gradient fidelity", since(start), 30.0,
           fmt("%.0f cases, %.0f components, max relative error %.2e", cases, static_cast<double>(components), worst));
}

void surrogate_convergence() {
    const auto start = Clock::now();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> magnitude(0.1, 3.0);
    int batches = 0, too_far = 0, not_monotone = 0;
    double worst = 0.0;
    while (batches < 1000) {
        const std::size_t n = 10 + rng() % 51;
        std::vector<std::uint8_t> labels(n);
        std::vector<double> logits(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng() % 10 < 3 ? 1 : 0;
            const bool right = rng() % 10 < 8;
            logits[i] = magnitude(rng) * ((right == (labels[i] == 1)) ? 1.0 : -1.0);
        }
        const auto positives = std::count(labels.begin(), labels.end(), 1);
        if (positives == 0 || positives == static_cast<long>(n)) {
            continue;
        }
        ++batches;
        const double hard = hard_mcc_from_logits(logits, labels);
        double previous = INFINITY;
        bool monotone = true;
        double gap = 0.0;
        for (double gamma : {1.0, 2.0, 5.0, 10.0}) {
            gap = std::abs(surrogate_mcc_from_logits(logits, labels, gamma) - hard);
            monotone = monotone && gap < previous;
            previous = gap;
        }
        worst = std::max(worst, gap);
        too_far += gap >= 0.01 ? 1 : 0;
        not_monotone += monotone ? 0 : 1;
    }
    report(too_far == 0 && not_monotone == 0, "surrogate convergence", since(start), 5.0,
           fmt("%.0f batches with |z| in [0.1, 3]: %.0f with gap >= 0.01 at gamma=10 (worst %.3f), %.0f non-monotone",
               batches, too_far, worst, not_monotone));
}

void metric_oracle_equivalence() {
    const auto start = Clock::now();
    std::size_t checks = 0, mismatches = 0;
    std::string first;
    const auto expect = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            if (mismatches++ == 0) {
                first = what;
            }
        }
    };
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)); };
    const Lexicon lexicon = Lexicon::controller_default();
    const AnalysisConfig config;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RandomSystem rs = random_system(50000 + seed);
        const brute::World world(rs.declarations);
        const std::string tag = "seed " + std::to_string(50000 + seed) + ": ";
        for (const ClassDecl& cls : rs.model.classes()) {
            const std::string& name = cls.qualified_name;
            const ClassStructuralProfile p = class_profile(name, rs.model, lexicon);
            expect(close(p.lcom5, brute::lcom5(world, name)), tag + "LCOM5 " + name);
            expect(p.accessor_count == brute::accessor_count(world, name), tag + "accessors " + name);
            expect(close(class_cochange_ratio(name, rs.history), brute::class_cochange(rs.commits, name)),
                   tag + "class co-change " + name);
            for (const MethodDecl& m : cls.methods) {
                for (const ClassDecl& other : rs.model.classes()) {
                    expect(close(jaccard_entity_class(m.entity_id, other.qualified_name, rs.model),
                                 brute::jaccard_entity_class(world, m.entity_id, other.qualified_name)),
                           tag + "Jaccard class " + m.entity_id);
                    if (other.qualified_name != name) {
                        expect(close(method_cochange_ratio(m.entity_id, other.qualified_name, rs.history),
                                     brute::method_cochange(rs.commits, m.entity_id, other.qualified_name)),
                               tag + "method co-change " + m.entity_id);
                        const InCodeMetrics got = incode_metrics(m.entity_id, other.qualified_name, rs.model);
                        const brute::InCode want = brute::incode_metrics(world, m.entity_id, other.qualified_name);
                        expect(got.atfd == want.atfd && close(got.laa, want.laa) && got.fdp == want.fdp,
                               tag + "ATFD/LAA/FDP " + m.entity_id);
                    }
                }
            }
            for (std::size_t a = 0; a < rs.model.entity_count(); ++a) {
                const std::string& ida = rs.model.entity_id(EntityHandle{static_cast<std::uint32_t>(a)});
                if (owner_of(ida) != name) {
                    continue;
                }
                for (std::size_t b = 0; b < rs.model.entity_count(); ++b) {
                    const std::string& idb = rs.model.entity_id(EntityHandle{static_cast<std::uint32_t>(b)});
                    expect(close(jaccard_entity(ida, idb, rs.model),
                                 brute::jaccard(brute::entity_set(world, ida), brute::entity_set(world, idb))),
                           tag + "Jaccard " + ida + " " + idb);
                }
            }
            std::vector<brute::Ids> concepts;
            for (const ConceptCluster& c : extract_class_concepts(rs.model.class_index(name), rs.model, 0.5, 2)) {
                concepts.emplace_back(c.members.begin(), c.members.end());
            }
            expect(concepts == brute::concepts(world, name), tag + "concepts " + name);
        }
        const auto decor = decor_god_class(rs.model, config);
        expect(std::set<std::string>(decor.begin(), decor.end()) == brute::decor(world), tag + "rule card");
        for (double alpha : {0.0, 5.0, 12.5, 20.0}) {
            const auto hist = hist_god_class(rs.model, rs.history, alpha);
            expect(std::set<std::string>(hist.begin(), hist.end()) == brute::hist_god_class(world, rs.commits, alpha),
                   tag + "HIST god class");
        }
        for (double beta : {100.0, 150.0, 300.0}) {
            expect(as_pairs(hist_feature_envy(rs.model, rs.history, beta)) ==
                       brute::hist_feature_envy(world, rs.commits, beta),
                   tag + "HIST feature envy");
        }
        for (const InCodeThresholds& t : {InCodeThresholds{1, 1, 1}, InCodeThresholds{1, 2, 3}, InCodeThresholds{3, 3, 3},
                                          InCodeThresholds{2, 5, 5}}) {
            expect(as_pairs(incode_feature_envy(rs.model, t)) == brute::incode_flags(world, t.atfd, t.laa, t.fdp),
                   tag + "InCode");
        }
        expect(as_pairs(jdeodorant_move_method(rs.model).suggestions) == brute::move_method(world), tag + "move method");
        const auto candidates = enumerate_fe_candidates(rs.model);
        const auto want_candidates = brute::candidates(world);
        expect(as_pairs(candidates) == std::set<brute::Pair>(want_candidates.begin(), want_candidates.end()),
               tag + "candidates");
        const FeatureExtractor extractor(rs.model, rs.history, config);
        for (const ClassDecl& cls : rs.model.classes()) {
            const auto got = extractor.god_class_features(cls.qualified_name).values;
            const auto want = brute::god_class_features(world, rs.commits, cls.qualified_name);
            bool same = got.size() == want.size();
            for (std::size_t i = 0; same && i < got.size(); ++i) {
                same = close(got[i], want[i]);
            }
            expect(same, tag + "god class features " + cls.qualified_name);
        }
        for (const CandidatePair& pair : candidates) {
            const auto got = extractor.feature_envy_features(pair).values;
            const auto want = brute::feature_envy_features(world, rs.commits, {pair.method_id, pair.envied_class});
            bool same = got.size() == want.size();
            for (std::size_t i = 0; same && i < got.size(); ++i) {
                same = close(got[i], want[i]);
            }
            expect(same, tag + "feature envy features " + pair.label());
        }
    }
    report(mismatches == 0, "metric oracle equivalence", since(start), 120.0,
           fmt("100 systems, %.0f comparisons, %.0f mismatches", static_cast<double>(checks),
               static_cast<double>(mismatches)) +
               (first.empty() ? "" : " (first: " + first + ")"));
}

void confusion_arithmetic() {
    const auto start = Clock::now();
    std::mt19937_64 rng(4);
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix m;
        // a share of matrices with empty rows or columns exercises the conventions
        const auto count = [&]() -> std::int64_t { return rng() % 4 == 0 ? 0 : static_cast<std::int64_t>(rng() % 50); };
        m.tp = count();
        m.fp = count();
        m.fn = count();
        m.tn = count();
        if (m.n() == 0) {
            m.tn = 1;
        }
        const double tp = double(m.tp), fp = double(m.fp), fn = double(m.fn), tn = double(m.tn);
        const double n = tp + fp + fn + tn;
        const double npos = tp + fn, mpos = tp + fp, nneg = fp + tn, mneg = fn + tn;
        const Scores s = scores(m);
        const bool precision_ok = mpos == 0 ? !s.precision.has_value() : s.precision && *s.precision == tp / mpos;
        const bool recall_ok = npos == 0 ? !s.recall.has_value() : s.recall && *s.recall == tp / npos;
        const double denominator = npos * mpos * nneg * mneg;
        const double want = denominator == 0 ? 0.0 : (tp * n - npos * mpos) / std::sqrt(denominator);
        const bool mcc_ok = denominator == 0 ? s.mcc == 0.0 : std::abs(s.mcc - want) <= 1e-12;
        bad += precision_ok && recall_ok && mcc_ok ? 0 : 1;
    }
    report(bad == 0, "confusion arithmetic", since(start), 5.0, fmt("1000 matrices, %.0f disagreements", bad));
}

struct SeedTables {
    std::vector<InstanceTable> god_class;
    std::vector<InstanceTable> feature_envy;
};

std::vector<SeedTables> seed_corpora() {
    std::vector<SeedTables> out;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SeedTables t;
        for (SyntheticSystem& s : synth_corpus(seed, 8, SynthParams{})) {
            const LabeledSystem system = labeled_system(std::move(s));
            t.god_class.push_back(build_instances(system, AntiPattern::GodClass));
            t.feature_envy.push_back(build_instances(system, AntiPattern::FeatureEnvy));
        }
        out.push_back(std::move(t));
    }
    return out;
}

void ensemble_improvement(const std::vector<SeedTables>& corpora, double corpus_seconds) {
    const auto start = Clock::now() - std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(corpus_seconds));
    std::string detail;
    bool ok = true;
    for (AntiPattern pattern : {AntiPattern::GodClass, AntiPattern::FeatureEnvy}) {
        std::map<Tool, std::vector<double>> detector;
        std::vector<double> smad;
        for (std::size_t seed = 0; seed < corpora.size(); ++seed) {
            const auto& tables = pattern == AntiPattern::GodClass ? corpora[seed].god_class : corpora[seed].feature_envy;
            for (Tool tool : kAllTools) {
                DetectorPipeline pipeline(tool);
                detector[tool].push_back(leave_one_out(tables, pipeline).overall.mcc);
            }
            TrainingCache cache;
            SmadOptions options;
            options.trials = 30;
            options.seed = seed;
            options.cache = &cache;
            SmadPipeline pipeline(options);
            smad.push_back(leave_one_out(tables, pipeline).overall.mcc);
            std::fprintf(stderr, "  %s seed %zu: SMAD %.3f  RULE_CARD %.3f  HIST %.3f  JDEODORANT %.3f  (%.0fs)\n",
                         std::string(to_string(pattern)).c_str(), seed, smad.back(), detector[Tool::RuleCard].back(),
                         detector[Tool::Hist].back(), detector[Tool::JDeodorant].back(), since(start));
        }
        Tool best_tool = Tool::RuleCard;
        double best = -2.0;
        for (Tool tool : kAllTools) {
            const double m = median(detector[tool]);
            if (m > best) {
                best = m;
                best_tool = tool;
            }
        }
        const double smad_median = median(smad);
        ok = ok && smad_median >= best;
        detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(pattern)) +
                  fmt(" SMAD %.3f vs ", smad_median) + std::string(to_string(best_tool)) + fmt(" %.3f", best);
    }
    report(ok, "ensemble improvement", since(start), 1200.0, "median MCC over seeds 0-9: " + detail);
}

void vote_semantics(const std::vector<SeedTables>& corpora) {
    const auto start = Clock::now();
    std::size_t instances = 0, violations = 0;
    const auto check_tables = [&](const std::vector<InstanceTable>& tables) {
        const auto all = pointers(tables);
        for (std::size_t held = 0; held < tables.size(); ++held) {
            std::vector<const InstanceTable*> train;
            for (std::size_t i = 0; i < tables.size(); ++i) {
                if (i != held) {
                    train.push_back(all[i]);
                }
            }
            std::vector<std::vector<bool>> by_tool;
            for (Tool tool : kAllTools) {
                DetectorPipeline d(tool);
                by_tool.push_back(d.fit_predict(train, tables[held]));
            }
            std::vector<std::vector<bool>> by_k;
            for (int k = 1; k <= 3; ++k) {
                VotePipeline v(k);
                by_k.push_back(v.fit_predict(train, tables[held]));
            }
            for (std::size_t i = 0; i < tables[held].size(); ++i) {
                ++instances;
                const bool any = by_tool[0][i] || by_tool[1][i] || by_tool[2][i];
                const bool every = by_tool[0][i] && by_tool[1][i] && by_tool[2][i];
                const bool nested = (!by_k[2][i] || by_k[1][i]) && (!by_k[1][i] || by_k[0][i]);
                violations += nested && by_k[0][i] == any && by_k[2][i] == every ? 0 : 1;
            }
        }
    };
    for (const SeedTables& t : corpora) {
        check_tables(t.god_class);
        check_tables(t.feature_envy);
    }
    report(violations == 0, "vote semantics", since(start), 0.0,
           fmt("%.0f instance verdicts over 10 corpora, %.0f violations", static_cast<double>(instances),
               static_cast<double>(violations)));
}

/// Drops rows whose feature vector also appears with another label.
SelectorSet consistent_part(const SelectorSet& data) {
    std::map<std::vector<double>, std::set<Tool>> labels;
    for (std::size_t i = 0; i < data.size(); ++i) {
        labels[{data.row(i).begin(), data.row(i).end()}].insert(data.labels[i]);
    }
    SelectorSet out(data.dim);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (labels[{data.row(i).begin(), data.row(i).end()}].size() == 1) {
            out.add(data.row(i), data.labels[i]);
        }
    }
    return out;
}

void asci_fidelity(const std::vector<SeedTables>& corpora) {
    const auto start = Clock::now();
    int misfit_sets = 0, fit_sets = 0;
    std::vector<SelectorSet> sets;
    for (std::size_t seed = 0; seed < 3; ++seed) {
        for (const auto* tables : {&corpora[seed].god_class, &corpora[seed].feature_envy}) {
            const auto all = pointers(*tables);
            sets.push_back(consistent_part(asci_training_set(all, DetectorThresholds{})));
        }
    }
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        sets.push_back(random_selector_set(seed, 300, 6 + seed % 2));
    }
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const DecisionTree tree = tree_train(sets[s], TreeHyperParams{}, s);
        bool all_right = true;
        for (std::size_t i = 0; i < sets[s].size(); ++i) {
            all_right = all_right && tree.predict(sets[s].row(i)) == sets[s].labels[i];
        }
        ++fit_sets;
        misfit_sets += all_right ? 0 : 1;
    }
    Rng rng(77);
    const TreeSearchSpace space;
    int violations = 0;
    std::string first;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const TreeHyperParams hp = space.sample(rng);
        const SelectorSet& data = sets[i % sets.size()];
        const std::string problem = tree_violation(tree_train(data, hp, i), data, hp);
        if (!problem.empty()) {
            violations += 1;
            first = first.empty() ? problem : first;
        }
    }
    report(misfit_sets == 0 && violations == 0, "ASCI fidelity", since(start), 0.0,
           fmt("unrestricted trees fit %.0f/%.0f consistent sets; %.0f of 100 random trees violate a constraint",
               fit_sets - misfit_sets, fit_sets, violations) +
               (first.empty() ? "" : " (" + first + ")"));
}

void oracle_vote() {
    const auto start = Clock::now();
    using C = Confidence;
    const std::vector<ReviewBallot> ballots{{"a", {C::StronglyApprove, C::StronglyApprove, C::StronglyApprove}},
                                            {"b", {C::StronglyApprove, C::WeaklyApprove, C::StronglyDisapprove}},
                                            {"c", {C::WeaklyApprove, C::WeaklyDisapprove, C::StronglyDisapprove}}};
    const auto labels = oracle_merge(ballots);
    const bool weights = confidence_weight(C::StronglyApprove) == 1.0 && confidence_weight(C::WeaklyApprove) == 0.66 &&
                         confidence_weight(C::WeaklyDisapprove) == 0.33 && confidence_weight(C::StronglyDisapprove) == 0.0;
    const bool ok = weights && labels.size() == 3 && labels[0].mean_weight == 1.0 && labels[0].positive &&
                    std::abs(labels[1].mean_weight - 1.66 / 3.0) < 1e-12 && labels[1].positive &&
                    std::abs(labels[2].mean_weight - 0.33) < 1e-12 && !labels[2].positive;
    report(ok, "oracle vote", since(start), 0.0,
           labels.size() == 3 ? fmt("means %.3f / %.3f / %.3f", labels[0].mean_weight, labels[1].mean_weight,
                                    labels[2].mean_weight)
                              : "wrong label count");
}

void determinism(const std::vector<SeedTables>& corpora) {
    const auto start = Clock::now();
    std::vector<std::string> broken;

    const auto train_once = [&]() {
        const auto tables = pointers(corpora[0].god_class);
        HyperParams hp;
        hp.layer_sizes = {12, 6};
        return serialize_model(train(to_batch(tables), hp, 17));
    };
    if (train_once() != train_once()) {
        broken.push_back("train");
    }

    const SelectorSet data = random_selector_set(8, 200, 6);
    TreeHyperParams thp;
    thp.max_features = MaxFeatures::Sqrt;
    if (serialize_tree(tree_train(data, thp, 3)) != serialize_tree(tree_train(data, thp, 3))) {
        broken.push_back("tree_train");
    }

    const auto search_once = [&]() {
        std::vector<const InstanceTable*> tables;
        for (std::size_t i = 0; i < 3; ++i) {
            tables.push_back(&corpora[1].feature_envy[i]);
        }
        InnerCvOptions options;
        options.epochs = 15;
        const auto r = tune_smad(tables, 3, 5, options);
        const auto t = tune_asci(tables, 5, 5, DetectorThresholds{});
        std::string out = serialize_hyper_params(r.best) + serialize_tree_hyper_params(t.best);
        for (double s : r.scores) {
            out += fmt("%.17g,", s);
        }
        for (double s : t.scores) {
            out += fmt("%.17g,", s);
        }
        return out;
    };
    if (search_once() != search_once()) {
        broken.push_back("random_search");
    }

    const auto synth_once = [] {
        const SyntheticSystem s = synth_generate(21, SynthParams{});
        return serialize_code_facts(s.model) + serialize_history(s.history) +
               std::to_string(s.truth.god_classes.size()) + std::to_string(s.truth.feature_envy.size());
    };
    const SyntheticSystem a = synth_generate(21, SynthParams{});
    const SyntheticSystem b = synth_generate(21, SynthParams{});
    if (synth_once() != synth_once() || !(a.truth == b.truth) || !(a.injections == b.injections)) {
        broken.push_back("synth_generate");
    }

    std::string detail = "train, tree_train, random_search, synth_generate";
    if (!broken.empty()) {
        detail = "not reproducible:";
        for (const std::string& name : broken) {
            detail += " " + name;
        }
    } else {
        detail += " reproduce bit for bit";
    }
    report(broken.empty(), "determinism", since(start), 0.0, detail);
}

void imbalance_sanity() {
    const auto start = Clock::now();
    bool ok = true;
    double ce_worst = 0.0, mcc_worst = 1.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        LabeledBatch batch(2);
        for (int i = 0; i < 2000; ++i) {
            const bool positive = i % 100 == 0;
            const double shift = positive ? 2.5 : 0.0;
            const double x = normal(rng) + shift;
            const double y = normal(rng) + shift;
            batch.add(std::vector<double>{x, y}, positive);
        }
        const auto recall = [&](const MlpModel& model) {
            int tp = 0;
            for (std::size_t i = 0; i < batch.size(); ++i) {
                tp += batch.labels[i] && forward(model, batch.row(i)).probability > 0.5 ? 1 : 0;
            }
            return tp / static_cast<double>(batch.positives());
        };
        const CrossEntropyObjective cross_entropy;
        TrainOptions ce_options;
        ce_options.objective = &cross_entropy;
        const double ce = recall(train(batch, HyperParams{}, seed, ce_options));
        const double mcc = recall(train(batch, HyperParams{}, seed));
        ce_worst = std::max(ce_worst, ce);
        mcc_worst = std::min(mcc_worst, mcc);
        ok = ok && ce == 0.0 && mcc > 0.5;
    }
    report(ok, "imbalance sanity", since(start), 0.0,
           fmt("5 datasets with 1%% positives: cross-entropy recall <= %.2f, MCC-surrogate recall >= %.2f", ce_worst,
               mcc_worst));
}

} // namespace

int main() {
    const auto start = Clock::now();
    gradient_fidelity();
    surrogate_convergence();
    metric_oracle_equivalence();
    confusion_arithmetic();
    const auto corpus_start = Clock::now();
    const std::vector<SeedTables> corpora = seed_corpora();
    ensemble_improvement(corpora, since(corpus_start));
    vote_semantics(corpora);
    asci_fidelity(corpora);
    oracle_vote();
    determinism(corpora);
    imbalance_sanity();
    std::printf("%d criteria failed, %.0fs total\n", failures, since(start));
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
