#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smad {

struct Commit {
    std::string commit_id;
    std::vector<std::string> changed_classes;  ///< sorted, unique
    std::vector<std::string> changed_methods;  ///< sorted, unique method entity ids

    bool touches_class(std::string_view qualified_name) const;
    bool touches_method(std::string_view method_id) const;
    bool operator==(const Commit&) const = default;
};

/// Commit history of one system at class and method granularity, oldest first.
/// Immutable once built; ratio queries use precomputed inverted indices.
class ChangeHistory {
public:
    ChangeHistory() = default;

    /// Adds owner classes of listed methods and rejects duplicate commit ids.
    static ChangeHistory build(std::string system_id, std::vector<Commit> commits);

    const std::string& system_id() const noexcept { return system_id_; }
    const std::vector<Commit>& commits() const noexcept { return commits_; }

    /// Indices of commits touching the class / method, ascending.
    const std::vector<std::size_t>& commits_with_class(std::string_view qualified_name) const;
    const std::vector<std::size_t>& commits_with_method(std::string_view method_id) const;
    std::size_t multi_class_commit_count() const noexcept { return multi_class_commits_; }

    bool operator==(const ChangeHistory& other) const {
        return system_id_ == other.system_id_ && commits_ == other.commits_;
    }

private:
    std::string system_id_;
    std::vector<Commit> commits_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_class_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_method_;
    std::size_t multi_class_commits_ = 0;
};

ChangeHistory load_history(const std::string& document);
std::string serialize_history(const ChangeHistory& history);

/// Share of multi-class commits that touch the class; 0 when no commit touches two classes.
double class_cochange_ratio(std::string_view qualified_name, const ChangeHistory& history);

/// Default multiplier applied to the numerator when a co-change ratio has a zero denominator.
inline constexpr double kDefaultRatioCap = 10.0;

/// Commits pairing the method with a method of `envied_class`, over commits pairing it
/// with another method of its own class. A zero denominator yields numerator * cap.
/// Throws std::invalid_argument when the envied class is the method's owner.
double method_cochange_ratio(std::string_view method_id, std::string_view envied_class,
                             const ChangeHistory& history, double cap = kDefaultRatioCap);

struct GitLogOptions {
    std::string system_id = "system";
    std::string strip_prefix;        ///< removed from every path before conversion
    std::string extension = ".java"; ///< only paths with this suffix are classes
};

/// Converts `git log --name-only` output into a history. Paths become dotted class
/// names; lines containing '#' are taken verbatim as method entity ids.
ChangeHistory history_from_git_log(const std::string& log_text, const GitLogOptions& options);

} // namespace smad
