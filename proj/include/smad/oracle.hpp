#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace smad {

enum class Confidence { StronglyApprove, WeaklyApprove, WeaklyDisapprove, StronglyDisapprove };

/// 1.00 / 0.66 / 0.33 / 0.00
double confidence_weight(Confidence level) noexcept;
std::string_view to_string(Confidence level);
/// Accepts the snake_case names, e.g. "weakly_approve". Throws ValidationError otherwise.
Confidence parse_confidence(std::string_view text);

struct ReviewBallot {
    std::string candidate;
    std::vector<Confidence> answers;  ///< exactly three
};

struct OracleLabel {
    std::string candidate;
    double mean_weight = 0.0;
    bool positive = false;  ///< mean_weight > 0.5
};

/// Throws ValidationError when a ballot does not carry exactly three answers.
std::vector<OracleLabel> oracle_merge(const std::vector<ReviewBallot>& ballots);

/// {"ballots": [{"candidate": "...", "answers": ["strongly_approve", ...]}]}
std::vector<ReviewBallot> load_ballots(const std::string& document);
/// candidate,mean_weight,positive
std::string write_oracle_labels(const std::vector<OracleLabel>& labels);

} // namespace smad
