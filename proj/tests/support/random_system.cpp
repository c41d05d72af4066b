#include "random_system.hpp"

#include <algorithm>

namespace smad::testing {

namespace {

const char* const kStems[] = {"Order", "Ledger", "Account", "Report", "Sensor", "Queue", "Route", "Cart"};
const char* const kSuffixes[] = {"", "", "", "Manager", "Controller", "Handler", "Data", "Process"};

} // namespace

RandomSystem random_system(std::uint64_t seed, const RandomSystemShape& shape) {
    Rng rng(seed);
    RandomSystem out;
    const int n = rng.uniform(shape.min_classes, shape.max_classes);
    std::vector<std::string> names;
    for (int c = 0; c < n; ++c) {
        names.push_back("p" + std::to_string(c % 3) + "." + kStems[rng.uniform(0, 7)] + kSuffixes[rng.uniform(0, 7)] +
                        std::to_string(c));
    }
    std::vector<std::vector<std::string>> attributes(n);
    std::vector<std::vector<std::string>> methods(n);
    for (int c = 0; c < n; ++c) {
        const int na = rng.uniform(0, shape.max_attributes);
        for (int a = 0; a < na; ++a) {
            attributes[c].push_back("f" + std::to_string(a));
        }
        const int nm = rng.uniform(0, shape.max_methods);
        for (int m = 0; m < nm; ++m) {
            methods[c].push_back("m" + std::to_string(m) + (rng.chance(0.3) ? "(int)" : "()"));
        }
    }

    for (int c = 0; c < n; ++c) {
        ClassDecl cls;
        cls.qualified_name = names[c];
        for (const std::string& a : attributes[c]) {
            AttributeDecl attr;
            attr.name = a;
            const double r = rng.real();
            attr.declared_type = r < 0.5 ? "primitive" : r < 0.9 ? names[rng.uniform(0, n - 1)] : "java.util.List";
            cls.attributes.push_back(attr);
        }
        int line = 1;
        for (const std::string& m : methods[c]) {
            MethodDecl method;
            method.name = m;
            method.is_static = rng.chance(0.1);
            if (rng.chance(0.1)) {
                method.accessor_hint = rng.chance(0.5);
            }
            method.line_start = line;
            method.line_end = line + rng.uniform(0, 20);
            line = method.line_end + 1;
            const int refs = rng.uniform(0, shape.max_references);
            for (int r = 0; r < refs; ++r) {
                const bool local = rng.chance(0.5);
                const int target = local ? c : rng.uniform(0, n - 1);
                const double kind = rng.real();
                if (kind < 0.08) {
                    method.accesses.push_back({"ext.Lib#x" + std::to_string(r), AccessKind::Read, 1, {}});
                } else if (kind < 0.12) {
                    method.calls.push_back({"ext.Lib#run()", rng.uniform(1, 2), {}});
                } else if (kind < 0.7 && !attributes[target].empty()) {
                    const std::string& attr = attributes[target][rng.uniform(0, static_cast<int>(attributes[target].size()) - 1)];
                    method.accesses.push_back({names[target] + "#" + attr,
                                               rng.chance(0.25) ? AccessKind::Write : AccessKind::Read,
                                               rng.uniform(1, 3), {}});
                } else if (!methods[target].empty()) {
                    const std::string& callee = methods[target][rng.uniform(0, static_cast<int>(methods[target].size()) - 1)];
                    method.calls.push_back({names[target] + "#" + callee, rng.uniform(1, 3), {}});
                }
            }
            cls.methods.push_back(std::move(method));
        }
        out.declarations.push_back(std::move(cls));
    }
    out.model = SystemModel::build("random" + std::to_string(seed), out.declarations);

    for (int k = 0; k < shape.commits; ++k) {
        Commit commit;
        commit.commit_id = "k" + std::to_string(k);
        const int touched = rng.uniform(1, 4);
        for (int t = 0; t < touched; ++t) {
            const int c = rng.uniform(0, n - 1);
            if (!methods[c].empty() && rng.chance(0.7)) {
                const std::string& m = methods[c][rng.uniform(0, static_cast<int>(methods[c].size()) - 1)];
                commit.changed_methods.push_back(names[c] + "#" + m);
            } else {
                commit.changed_classes.push_back(names[c]);
            }
        }
        std::sort(commit.changed_classes.begin(), commit.changed_classes.end());
        commit.changed_classes.erase(std::unique(commit.changed_classes.begin(), commit.changed_classes.end()),
                                     commit.changed_classes.end());
        std::sort(commit.changed_methods.begin(), commit.changed_methods.end());
        commit.changed_methods.erase(std::unique(commit.changed_methods.begin(), commit.changed_methods.end()),
                                     commit.changed_methods.end());
        out.commits.push_back(std::move(commit));
    }
    out.history = ChangeHistory::build(out.model.system_id(), out.commits);
    return out;
}

} // namespace smad::testing
