#include "smad/code_model.hpp"

#include "smad/errors.hpp"

#include "json_util.hpp"

#include <algorithm>

namespace smad {

using nlohmann::json;

bool EntitySet::contains(EntityHandle h) const {
    return std::binary_search(members.begin(), members.end(), h);
}

std::size_t intersection_size(const EntitySet& a, const EntitySet& b) {
    std::size_t count = 0;
    auto i = a.members.begin();
    auto j = b.members.begin();
    while (i != a.members.end() && j != b.members.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::size_t union_size(const EntitySet& a, const EntitySet& b) {
    return a.size() + b.size() - intersection_size(a, b);
}

std::string owner_of(std::string_view entity_id) {
    const auto hash = entity_id.find('#');
    if (hash == std::string_view::npos || hash == 0) {
        throw ValidationError("entity id '" + std::string(entity_id) + "' is not of the form Class#member");
    }
    return std::string(entity_id.substr(0, hash));
}

namespace {

void sort_unique(std::vector<EntityHandle>& handles) {
    std::sort(handles.begin(), handles.end());
    handles.erase(std::unique(handles.begin(), handles.end()), handles.end());
}

} // namespace

SystemModel SystemModel::build(std::string system_id, std::vector<ClassDecl> classes) {
    SystemModel model;
    model.system_id_ = std::move(system_id);
    model.classes_ = std::move(classes);

    auto register_entity = [&model](const std::string& id, EntityKind kind, std::size_t ci, std::size_t mi) {
        const EntityHandle handle{static_cast<std::uint32_t>(model.entities_.size())};
        if (!model.entity_index_.emplace(id, handle).second) {
            throw ValidationError("duplicate entity id '" + id + "'");
        }
        model.entities_.push_back({id, kind, static_cast<std::uint32_t>(ci), static_cast<std::uint32_t>(mi)});
        return handle;
    };

    model.method_handles_.resize(model.classes_.size());
    model.attribute_handles_.resize(model.classes_.size());
    for (std::size_t ci = 0; ci < model.classes_.size(); ++ci) {
        ClassDecl& cls = model.classes_[ci];
        if (cls.qualified_name.empty() || cls.qualified_name.find('#') != std::string::npos) {
            throw ValidationError("invalid class name '" + cls.qualified_name + "'");
        }
        if (!model.class_index_.emplace(cls.qualified_name, ci).second) {
            throw ValidationError("duplicate class '" + cls.qualified_name + "'");
        }
        for (std::size_t ai = 0; ai < cls.attributes.size(); ++ai) {
            AttributeDecl& attr = cls.attributes[ai];
            attr.owner = cls.qualified_name;
            attr.entity_id = cls.qualified_name + "#" + attr.name;
            model.attribute_handles_[ci].push_back(register_entity(attr.entity_id, EntityKind::Attribute, ci, ai));
        }
        for (std::size_t mi = 0; mi < cls.methods.size(); ++mi) {
            MethodDecl& method = cls.methods[mi];
            method.owner = cls.qualified_name;
            method.entity_id = cls.qualified_name + "#" + method.name;
            if (method.line_start > method.line_end) {
                throw ValidationError("method '" + method.entity_id + "' has line_start > line_end");
            }
            model.method_handles_[ci].push_back(register_entity(method.entity_id, EntityKind::Method, ci, mi));
        }
    }

    // Resolution: a reference resolves only to an entity of the expected kind.
    for (ClassDecl& cls : model.classes_) {
        cls.referenced_class_types.clear();
        for (const AttributeDecl& attr : cls.attributes) {
            if (attr.declared_type != "primitive" && model.class_index_.contains(attr.declared_type)) {
                cls.referenced_class_types.insert(attr.declared_type);
            }
        }
        for (MethodDecl& method : cls.methods) {
            for (AttributeAccess& access : method.accesses) {
                if (access.count < 1) {
                    throw ValidationError("access count must be positive in '" + method.entity_id + "'");
                }
                access.resolved = {};
                if (auto it = model.entity_index_.find(access.target);
                    it != model.entity_index_.end() && model.entities_[it->second.value].kind == EntityKind::Attribute) {
                    access.resolved = it->second;
                }
            }
            for (MethodCall& call : method.calls) {
                if (call.count < 1) {
                    throw ValidationError("call count must be positive in '" + method.entity_id + "'");
                }
                call.resolved = {};
                if (auto it = model.entity_index_.find(call.target);
                    it != model.entity_index_.end() && model.entities_[it->second.value].kind == EntityKind::Method) {
                    call.resolved = it->second;
                }
            }
        }
    }

    model.entity_sets_.assign(model.entities_.size(), {});
    model.class_members_.assign(model.classes_.size(), {});
    for (std::size_t ci = 0; ci < model.classes_.size(); ++ci) {
        const ClassDecl& cls = model.classes_[ci];
        auto& own = model.class_members_[ci].members;
        own.insert(own.end(), model.attribute_handles_[ci].begin(), model.attribute_handles_[ci].end());
        own.insert(own.end(), model.method_handles_[ci].begin(), model.method_handles_[ci].end());
        sort_unique(own);
        for (std::size_t mi = 0; mi < cls.methods.size(); ++mi) {
            const EntityHandle self = model.method_handles_[ci][mi];
            auto& members = model.entity_sets_[self.value].members;
            for (const AttributeAccess& access : cls.methods[mi].accesses) {
                if (!access.external()) {
                    members.push_back(access.resolved);
                    model.entity_sets_[access.resolved.value].members.push_back(self);
                }
            }
            for (const MethodCall& call : cls.methods[mi].calls) {
                if (!call.external()) {
                    members.push_back(call.resolved);
                }
            }
        }
    }
    for (EntitySet& set : model.entity_sets_) {
        sort_unique(set.members);
    }
    return derive_accessor_flags(std::move(model));
}

const ClassDecl& SystemModel::class_decl(std::string_view qualified_name) const {
    return classes_[class_index(qualified_name)];
}

std::optional<std::size_t> SystemModel::find_class(std::string_view qualified_name) const {
    if (auto it = class_index_.find(std::string(qualified_name)); it != class_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::size_t SystemModel::class_index(std::string_view qualified_name) const {
    if (auto index = find_class(qualified_name)) {
        return *index;
    }
    throw LookupError("unknown class '" + std::string(qualified_name) + "'");
}

std::optional<EntityHandle> SystemModel::find_entity(std::string_view entity_id) const {
    if (auto it = entity_index_.find(std::string(entity_id)); it != entity_index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

EntityHandle SystemModel::entity(std::string_view entity_id) const {
    if (auto h = find_entity(entity_id)) {
        return *h;
    }
    throw LookupError("unknown entity '" + std::string(entity_id) + "'");
}

const MethodDecl& SystemModel::method(EntityHandle h) const {
    const EntityInfo& e = info(h);
    if (e.kind != EntityKind::Method) {
        throw LookupError("'" + e.id + "' is not a method");
    }
    return classes_[e.class_index].methods[e.member_index];
}

const AttributeDecl& SystemModel::attribute(EntityHandle h) const {
    const EntityInfo& e = info(h);
    if (e.kind != EntityKind::Attribute) {
        throw LookupError("'" + e.id + "' is not an attribute");
    }
    return classes_[e.class_index].attributes[e.member_index];
}

EntityHandle SystemModel::method_handle(std::size_t class_index, std::size_t method_index) const {
    return method_handles_.at(class_index).at(method_index);
}

EntityHandle SystemModel::attribute_handle(std::size_t class_index, std::size_t attribute_index) const {
    return attribute_handles_.at(class_index).at(attribute_index);
}

EntitySet entity_set(std::string_view entity_id, const SystemModel& model) {
    return model.entity_set(model.entity(entity_id));
}

bool satisfies_accessor_shape(const SystemModel& model, const MethodDecl& method) {
    if (method.is_static) {
        return false;
    }
    for (const MethodCall& call : method.calls) {
        if (!call.external()) {
            return false;
        }
    }
    EntityHandle touched;
    for (const AttributeAccess& access : method.accesses) {
        if (access.external()) {
            continue;
        }
        if (model.classes()[model.owner_index(access.resolved)].qualified_name != method.owner) {
            return false;
        }
        if (touched.valid() && touched != access.resolved) {
            return false;
        }
        touched = access.resolved;
    }
    return touched.valid();
}

SystemModel derive_accessor_flags(SystemModel model) {
    for (ClassDecl& cls : model.classes_) {
        for (MethodDecl& method : cls.methods) {
            method.is_accessor =
                !method.is_static && (method.accessor_hint.value_or(false) || satisfies_accessor_shape(model, method));
        }
    }
    return model;
}

// ---------------------------------------------------------------------------
// JSON ingestion

SystemModel load_code_facts(const std::string& document) {
    const json root = parse_json_document(document);
    const std::string system_id = require_string(root, "system_id", "document");
    std::vector<ClassDecl> classes;
    const json& class_array = require_array(root, "classes", "document");
    for (std::size_t ci = 0; ci < class_array.size(); ++ci) {
        const std::string where = "classes[" + std::to_string(ci) + "]";
        const json& jc = class_array[ci];
        ClassDecl cls;
        cls.qualified_name = require_string(jc, "name", where);
        const json& attrs = require_array(jc, "attributes", where);
        for (std::size_t ai = 0; ai < attrs.size(); ++ai) {
            const std::string aw = where + ".attributes[" + std::to_string(ai) + "]";
            AttributeDecl attr;
            attr.name = require_string(attrs[ai], "name", aw);
            attr.declared_type = require_string(attrs[ai], "type", aw);
            cls.attributes.push_back(std::move(attr));
        }
        const json& methods = require_array(jc, "methods", where);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const std::string mw = where + ".methods[" + std::to_string(mi) + "]";
            const json& jm = methods[mi];
            MethodDecl method;
            method.name = require_string(jm, "name", mw);
            method.is_static = require_bool(jm, "static", mw);
            if (jm.contains("accessor_hint")) {
                method.accessor_hint = require_bool(jm, "accessor_hint", mw);
            }
            method.line_start = require_int(jm, "line_start", mw);
            method.line_end = require_int(jm, "line_end", mw);
            const json& accesses = require_array(jm, "accesses", mw);
            for (std::size_t k = 0; k < accesses.size(); ++k) {
                const std::string xw = mw + ".accesses[" + std::to_string(k) + "]";
                AttributeAccess access;
                access.target = require_string(accesses[k], "target", xw);
                access.kind = parse_access_kind(require_string(accesses[k], "kind", xw), xw);
                access.count = optional_count(accesses[k], xw);
                method.accesses.push_back(std::move(access));
            }
            const json& calls = require_array(jm, "calls", mw);
            for (std::size_t k = 0; k < calls.size(); ++k) {
                const std::string xw = mw + ".calls[" + std::to_string(k) + "]";
                MethodCall call;
                call.target = require_string(calls[k], "target", xw);
                call.count = optional_count(calls[k], xw);
                method.calls.push_back(std::move(call));
            }
            cls.methods.push_back(std::move(method));
        }
        classes.push_back(std::move(cls));
    }
    return SystemModel::build(system_id, std::move(classes));
}

std::string serialize_code_facts(const SystemModel& model) {
    json root;
    root["system_id"] = model.system_id();
    json classes = json::array();
    for (const ClassDecl& cls : model.classes()) {
        json jc;
        jc["name"] = cls.qualified_name;
        json attrs = json::array();
        for (const AttributeDecl& attr : cls.attributes) {
            attrs.push_back({{"name", attr.name}, {"type", attr.declared_type}});
        }
        jc["attributes"] = std::move(attrs);
        json methods = json::array();
        for (const MethodDecl& method : cls.methods) {
            json jm;
            jm["name"] = method.name;
            jm["static"] = method.is_static;
            if (method.accessor_hint) {
                jm["accessor_hint"] = *method.accessor_hint;
            }
            jm["line_start"] = method.line_start;
            jm["line_end"] = method.line_end;
            json accesses = json::array();
            for (const AttributeAccess& access : method.accesses) {
                accesses.push_back({{"target", access.target},
                                    {"kind", access.kind == AccessKind::Read ? "read" : "write"},
                                    {"count", access.count}});
            }
            jm["accesses"] = std::move(accesses);
            json calls = json::array();
            for (const MethodCall& call : method.calls) {
                calls.push_back({{"target", call.target}, {"count", call.count}});
            }
            jm["calls"] = std::move(calls);
            methods.push_back(std::move(jm));
        }
        jc["methods"] = std::move(methods);
        classes.push_back(std::move(jc));
    }
    root["classes"] = std::move(classes);
    return root.dump(1) + "\n";
}

} // namespace smad
