#pragma once

#include "smad/code_model.hpp"

#include <string>
#include <vector>

namespace smad {

/// A (method, envied class) pair considered for Feature Envy.
struct CandidatePair {
    std::string method_id;
    std::string envied_class;

    friend auto operator<=>(const CandidatePair&, const CandidatePair&) = default;
    /// "Owner#method(sig)->Envied"
    std::string label() const { return method_id + "->" + envied_class; }
};

/// Foreign classes whose entities the method reaches through resolved accesses or calls.
std::vector<std::size_t> accessed_foreign_classes(EntityHandle method, const SystemModel& model);

/// Non-static, non-accessor methods paired with each foreign class they access,
/// ordered by (method id, class name).
std::vector<CandidatePair> enumerate_fe_candidates(const SystemModel& model);

} // namespace smad
