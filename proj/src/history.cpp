#include "smad/history.hpp"

#include "smad/code_model.hpp"
#include "smad/errors.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace smad {

namespace {

void sort_unique(std::vector<std::string>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
}

const std::vector<std::size_t> kNoCommits;

} // namespace

bool Commit::touches_class(std::string_view qualified_name) const {
    return std::binary_search(changed_classes.begin(), changed_classes.end(), qualified_name);
}

bool Commit::touches_method(std::string_view method_id) const {
    return std::binary_search(changed_methods.begin(), changed_methods.end(), method_id);
}

ChangeHistory ChangeHistory::build(std::string system_id, std::vector<Commit> commits) {
    ChangeHistory history;
    history.system_id_ = std::move(system_id);
    std::unordered_set<std::string> seen;
    for (Commit& commit : commits) {
        if (!seen.insert(commit.commit_id).second) {
            throw ValidationError("duplicate commit id '" + commit.commit_id + "'");
        }
        for (const std::string& method : commit.changed_methods) {
            commit.changed_classes.push_back(owner_of(method));
        }
        sort_unique(commit.changed_classes);
        sort_unique(commit.changed_methods);
    }
    history.commits_ = std::move(commits);
    for (std::size_t i = 0; i < history.commits_.size(); ++i) {
        const Commit& commit = history.commits_[i];
        for (const std::string& cls : commit.changed_classes) {
            history.by_class_[cls].push_back(i);
        }
        for (const std::string& method : commit.changed_methods) {
            history.by_method_[method].push_back(i);
        }
        if (commit.changed_classes.size() >= 2) {
            ++history.multi_class_commits_;
        }
    }
    return history;
}

const std::vector<std::size_t>& ChangeHistory::commits_with_class(std::string_view qualified_name) const {
    auto it = by_class_.find(std::string(qualified_name));
    return it == by_class_.end() ? kNoCommits : it->second;
}

const std::vector<std::size_t>& ChangeHistory::commits_with_method(std::string_view method_id) const {
    auto it = by_method_.find(std::string(method_id));
    return it == by_method_.end() ? kNoCommits : it->second;
}

ChangeHistory load_history(const std::string& document) {
    const json root = parse_json_document(document);
    const std::string system_id = require_string(root, "system_id", "document");
    const json& array = require_array(root, "commits", "document");
    std::vector<Commit> commits;
    commits.reserve(array.size());
    for (std::size_t i = 0; i < array.size(); ++i) {
        const std::string where = "commits[" + std::to_string(i) + "]";
        Commit commit;
        commit.commit_id = require_string(array[i], "id", where);
        for (const json& cls : require_array(array[i], "classes", where)) {
            if (!cls.is_string()) {
                throw ParseError("class entries in " + where + " must be strings");
            }
            commit.changed_classes.push_back(cls.get<std::string>());
        }
        if (array[i].contains("methods")) {
            for (const json& method : require_array(array[i], "methods", where)) {
                if (!method.is_string()) {
                    throw ParseError("method entries in " + where + " must be strings");
                }
                commit.changed_methods.push_back(method.get<std::string>());
            }
        }
        commits.push_back(std::move(commit));
    }
    return ChangeHistory::build(system_id, std::move(commits));
}

std::string serialize_history(const ChangeHistory& history) {
    json root;
    root["system_id"] = history.system_id();
    json commits = json::array();
    for (const Commit& commit : history.commits()) {
        commits.push_back({{"id", commit.commit_id}, {"classes", commit.changed_classes}, {"methods", commit.changed_methods}});
    }
    root["commits"] = std::move(commits);
    return root.dump(1) + "\n";
}

double class_cochange_ratio(std::string_view qualified_name, const ChangeHistory& history) {
    const std::size_t denominator = history.multi_class_commit_count();
    if (denominator == 0) {
        return 0.0;
    }
    std::size_t numerator = 0;
    for (std::size_t index : history.commits_with_class(qualified_name)) {
        if (history.commits()[index].changed_classes.size() >= 2) {
            ++numerator;
        }
    }
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double method_cochange_ratio(std::string_view method_id, std::string_view envied_class,
                             const ChangeHistory& history, double cap) {
    const std::string owner = owner_of(method_id);
    if (owner == envied_class) {
        throw std::invalid_argument("envied class must differ from the owner of '" + std::string(method_id) + "'");
    }
    const std::string envied_prefix = std::string(envied_class) + "#";
    const std::string owner_prefix = owner + "#";
    std::size_t numerator = 0;
    std::size_t denominator = 0;
    for (std::size_t index : history.commits_with_method(method_id)) {
        bool with_envied = false;
        bool with_own = false;
        for (const std::string& other : history.commits()[index].changed_methods) {
            if (other.starts_with(envied_prefix)) {
                with_envied = true;
            } else if (other != method_id && other.starts_with(owner_prefix)) {
                with_own = true;
            }
        }
        numerator += with_envied ? 1 : 0;
        denominator += with_own ? 1 : 0;
    }
    if (denominator == 0) {
        return static_cast<double>(numerator) * cap;
    }
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

ChangeHistory history_from_git_log(const std::string& log_text, const GitLogOptions& options) {
    std::vector<Commit> commits;
    std::istringstream in(log_text);
    std::string line;
    auto to_class = [&options](std::string path) -> std::string {
        if (!options.strip_prefix.empty() && path.starts_with(options.strip_prefix)) {
            path.erase(0, options.strip_prefix.size());
        }
        while (!path.empty() && path.front() == '/') {
            path.erase(0, 1);
        }
        if (!path.ends_with(options.extension)) {
            return {};
        }
        path.resize(path.size() - options.extension.size());
        std::replace(path.begin(), path.end(), '/', '.');
        return path;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.starts_with("commit ")) {
            Commit commit;
            std::istringstream header(line.substr(7));
            header >> commit.commit_id;
            commits.push_back(std::move(commit));
            continue;
        }
        if (commits.empty() || line.empty() || line.front() == ' ' || line.front() == '\t') {
            continue;  // blank line or indented commit message
        }
        if (line.starts_with("Author:") || line.starts_with("Date:") || line.starts_with("Merge:") ||
            line.starts_with("AuthorDate:") || line.starts_with("Commit:") || line.starts_with("CommitDate:")) {
            continue;
        }
        if (line.find('#') != std::string::npos) {
            commits.back().changed_methods.push_back(line);
        } else if (std::string cls = to_class(line); !cls.empty()) {
            commits.back().changed_classes.push_back(std::move(cls));
        }
    }
    // git log lists newest first; the history is kept oldest first.
    std::reverse(commits.begin(), commits.end());
    return ChangeHistory::build(options.system_id, std::move(commits));
}

} // namespace smad
