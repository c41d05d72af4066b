#include "smad/oracle.hpp"

#include "json_util.hpp"
#include "smad/csv.hpp"
#include "smad/errors.hpp"

#include <sstream>

namespace smad {

double confidence_weight(Confidence level) noexcept {
    switch (level) {
    case Confidence::StronglyApprove:
        return 1.00;
    case Confidence::WeaklyApprove:
        return 0.66;
    case Confidence::WeaklyDisapprove:
        return 0.33;
    case Confidence::StronglyDisapprove:
        break;
    }
    return 0.00;
}

std::string_view to_string(Confidence level) {
    switch (level) {
    case Confidence::StronglyApprove:
        return "strongly_approve";
    case Confidence::WeaklyApprove:
        return "weakly_approve";
    case Confidence::WeaklyDisapprove:
        return "weakly_disapprove";
    case Confidence::StronglyDisapprove:
        break;
    }
    return "strongly_disapprove";
}

Confidence parse_confidence(std::string_view text) {
    for (Confidence level : {Confidence::StronglyApprove, Confidence::WeaklyApprove, Confidence::WeaklyDisapprove,
                             Confidence::StronglyDisapprove}) {
        if (text == to_string(level)) {
            return level;
        }
    }
    throw ValidationError("unknown confidence level '" + std::string(text) + "'");
}

std::vector<OracleLabel> oracle_merge(const std::vector<ReviewBallot>& ballots) {
    std::vector<OracleLabel> labels;
    labels.reserve(ballots.size());
    for (const ReviewBallot& ballot : ballots) {
        if (ballot.answers.size() != 3) {
            throw ValidationError("ballot for '" + ballot.candidate + "' has " + std::to_string(ballot.answers.size()) +
                                  " answers, expected 3");
        }
        double sum = 0.0;
        for (Confidence answer : ballot.answers) {
            sum += confidence_weight(answer);
        }
        const double mean = sum / 3.0;
        labels.push_back({ballot.candidate, mean, mean > 0.5});
    }
    return labels;
}

std::vector<ReviewBallot> load_ballots(const std::string& document) {
    const json doc = parse_json_document(document);
    std::vector<ReviewBallot> ballots;
    for (const json& entry : require_array(doc, "ballots", "ballot document")) {
        ReviewBallot ballot;
        ballot.candidate = require_string(entry, "candidate", "ballot");
        for (const json& answer : require_array(entry, "answers", "ballot '" + ballot.candidate + "'")) {
            if (!answer.is_string()) {
                throw ParseError("answers of ballot '" + ballot.candidate + "' must be strings");
            }
            ballot.answers.push_back(parse_confidence(answer.get<std::string>()));
        }
        ballots.push_back(std::move(ballot));
    }
    return ballots;
}

std::string write_oracle_labels(const std::vector<OracleLabel>& labels) {
    std::ostringstream out;
    csv::write_row(out, {"candidate", "mean_weight", "positive"});
    for (const OracleLabel& label : labels) {
        csv::write_row(out, {label.candidate, csv::format_double(label.mean_weight), label.positive ? "true" : "false"});
    }
    return out.str();
}

} // namespace smad
