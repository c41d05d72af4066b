#pragma once

#include "smad/confusion.hpp"
#include "smad/dataset.hpp"
#include "smad/search.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smad {

struct SystemScore {
    std::string system;
    ConfusionMatrix matrix;
    Scores scores;
};

/// Per-system scores and the overall scores of the merged instances.
struct EvalReport {
    std::string approach;
    AntiPattern pattern = AntiPattern::GodClass;
    std::vector<SystemScore> per_system;
    ConfusionMatrix overall_matrix;  ///< element-wise sum of the per-system matrices
    Scores overall;
};

/// An approach evaluated by leave-one-out: fitted on the training systems only,
/// then asked for one verdict per instance of the held-out system.
class Pipeline {
public:
    virtual ~Pipeline() = default;
    virtual std::string name() const = 0;
    virtual std::vector<bool> fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) = 0;
};

/// Holds each system out in turn. Throws std::invalid_argument with fewer than two
/// systems, mixed schemas or unlabeled tables.
EvalReport leave_one_out(std::span<const InstanceTable> systems, Pipeline& pipeline);

// ---- detector tuning -------------------------------------------------------

/// Candidate values searched when tuning detectors on training systems.
std::vector<double> hist_gc_alpha_grid();  ///< 0, 0.5, ..., 20 percent
std::vector<double> hist_fe_beta_grid();   ///< 100, 105, ..., 300 percent
std::vector<InCodeThresholds> incode_grid();  ///< [1, 5]^3

/// Thresholds maximising each tunable detector's merged MCC over `train`; the first
/// grid value wins ties. Thresholds of the other anti-pattern keep `defaults`.
DetectorThresholds tune_detectors(std::span<const InstanceTable* const> train, const DetectorThresholds& defaults = {});

/// Merged MCC of one detector over `tables` under `thresholds`.
double detector_overall_mcc(std::span<const InstanceTable* const> tables, Tool tool,
                            const DetectorThresholds& thresholds);

// ---- pipelines ---------------------------------------------------------------

/// One standalone detector; HIST and InCode thresholds are tuned on the training
/// systems unless `tune` is false.
class DetectorPipeline final : public Pipeline {
public:
    explicit DetectorPipeline(Tool tool, bool tune = true, DetectorThresholds defaults = {});
    std::string name() const override;
    std::vector<bool> fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) override;

private:
    Tool tool_;
    bool tune_;
    DetectorThresholds defaults_;
};

/// At least k tuned detectors agree. Without a fixed k the policy is chosen on the
/// training systems (smallest k among ties).
class VotePipeline final : public Pipeline {
public:
    explicit VotePipeline(std::optional<int> k = std::nullopt);
    std::string name() const override;
    std::vector<bool> fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) override;

private:
    std::optional<int> k_;
};

struct AsciOptions {
    int trials = 200;
    std::uint64_t seed = 0;
};

/// Tuned detectors, tree hyper-parameters from random search with inner
/// leave-one-out, ten trees trained on every training system.
class AsciPipeline final : public Pipeline {
public:
    explicit AsciPipeline(AsciOptions options = {});
    std::string name() const override { return "ASCI"; }
    std::vector<bool> fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) override;

private:
    AsciOptions options_;
};

struct SmadOptions {
    int trials = 200;
    std::uint64_t seed = 0;
    int inner_epochs = 100;
    TrainOptions final_training;  ///< 120 epochs, halving every 20 after epoch 100
    std::size_t members = kEnsembleSize;
    TrainingCache* cache = nullptr;  ///< shares inner trainings across folds when set
};

/// Random search with inner leave-one-out, then an ensemble trained on every
/// training system with the selected hyper-parameters.
class SmadPipeline final : public Pipeline {
public:
    explicit SmadPipeline(SmadOptions options = {});
    std::string name() const override { return "SMAD"; }
    std::vector<bool> fit_predict(std::span<const InstanceTable* const> train, const InstanceTable& test) override;

    /// Hyper-parameters chosen in each fold, in fold order.
    const std::vector<HyperParams>& chosen() const noexcept { return chosen_; }

private:
    SmadOptions options_;
    std::vector<HyperParams> chosen_;
};

/// Ensemble of `members` networks on all rows of `tables`.
MlpEnsemble train_smad(std::span<const InstanceTable* const> tables, const HyperParams& hp, std::uint64_t seed,
                       const TrainOptions& options = {}, std::size_t members = kEnsembleSize);
std::vector<bool> predict_smad(const MlpEnsemble& ensemble, const InstanceTable& table);

// ---- reporting ---------------------------------------------------------------

/// "approach,anti_pattern,system,precision,recall,mcc" with one row per system and
/// one "overall" row per report. Absent precision or recall prints as "--".
void write_report_table(std::ostream& out, std::span<const EvalReport> reports);

} // namespace smad
