#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smad {

/// Dense index of an attribute or method inside one SystemModel.
struct EntityHandle {
    std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

    constexpr bool valid() const noexcept { return value != std::numeric_limits<std::uint32_t>::max(); }
    friend constexpr auto operator<=>(EntityHandle, EntityHandle) = default;
};

enum class EntityKind { Attribute, Method };
enum class AccessKind { Read, Write };

struct AttributeAccess {
    std::string target;  ///< "Class#attr"
    AccessKind kind = AccessKind::Read;
    int count = 1;
    EntityHandle resolved;  ///< invalid when the reference is external

    bool external() const noexcept { return !resolved.valid(); }
    bool operator==(const AttributeAccess& other) const {
        return target == other.target && kind == other.kind && count == other.count;
    }
};

struct MethodCall {
    std::string target;  ///< "Class#method(sig)"
    int count = 1;
    EntityHandle resolved;

    bool external() const noexcept { return !resolved.valid(); }
    bool operator==(const MethodCall& other) const { return target == other.target && count == other.count; }
};

struct AttributeDecl {
    std::string name;
    std::string entity_id;     ///< "Owner#name", filled during model construction
    std::string owner;
    std::string declared_type; ///< qualified class name or "primitive"

    bool operator==(const AttributeDecl& other) const {
        return name == other.name && declared_type == other.declared_type;
    }
};

struct MethodDecl {
    std::string name;  ///< includes the textual signature, e.g. "run(int)"
    std::string entity_id;
    std::string owner;
    bool is_static = false;
    std::optional<bool> accessor_hint;
    bool is_accessor = false;  ///< derived, see derive_accessor_flags
    int line_start = 0;
    int line_end = 0;
    std::vector<AttributeAccess> accesses;
    std::vector<MethodCall> calls;

    bool operator==(const MethodDecl& other) const {
        return name == other.name && is_static == other.is_static && accessor_hint == other.accessor_hint &&
               line_start == other.line_start && line_end == other.line_end && accesses == other.accesses &&
               calls == other.calls;
    }
};

struct ClassDecl {
    std::string qualified_name;
    std::vector<AttributeDecl> attributes;
    std::vector<MethodDecl> methods;
    std::set<std::string> referenced_class_types;  ///< declared attribute types that name a class

    bool operator==(const ClassDecl& other) const {
        return qualified_name == other.qualified_name && attributes == other.attributes && methods == other.methods;
    }
};

/// Members are kept sorted by handle.
struct EntitySet {
    std::vector<EntityHandle> members;

    std::size_t size() const noexcept { return members.size(); }
    bool empty() const noexcept { return members.empty(); }
    bool contains(EntityHandle h) const;
    bool operator==(const EntitySet&) const = default;
};

std::size_t intersection_size(const EntitySet& a, const EntitySet& b);
std::size_t union_size(const EntitySet& a, const EntitySet& b);

/// One system snapshot: classes, their members, and the resolved access/call graph.
/// Immutable once built.
class SystemModel {
public:
    struct EntityInfo {
        std::string id;
        EntityKind kind;
        std::uint32_t class_index;
        std::uint32_t member_index;
    };

    SystemModel() = default;

    /// Validates, assigns entity ids, resolves references and derives accessor flags.
    /// Throws ValidationError on duplicate names/ids or inverted line spans.
    static SystemModel build(std::string system_id, std::vector<ClassDecl> classes);

    const std::string& system_id() const noexcept { return system_id_; }
    const std::vector<ClassDecl>& classes() const noexcept { return classes_; }
    std::size_t entity_count() const noexcept { return entities_.size(); }

    const ClassDecl& class_decl(std::size_t index) const { return classes_.at(index); }
    const ClassDecl& class_decl(std::string_view qualified_name) const;
    std::optional<std::size_t> find_class(std::string_view qualified_name) const;
    std::size_t class_index(std::string_view qualified_name) const;

    std::optional<EntityHandle> find_entity(std::string_view entity_id) const;
    EntityHandle entity(std::string_view entity_id) const;
    const EntityInfo& info(EntityHandle h) const { return entities_.at(h.value); }
    const std::string& entity_id(EntityHandle h) const { return info(h).id; }
    std::size_t owner_index(EntityHandle h) const { return info(h).class_index; }
    const MethodDecl& method(EntityHandle h) const;
    const AttributeDecl& attribute(EntityHandle h) const;

    /// Entity sets are precomputed at build time.
    const EntitySet& entity_set(EntityHandle h) const { return entity_sets_.at(h.value); }
    /// All attributes and methods declared by the class.
    const EntitySet& class_members(std::size_t class_index) const { return class_members_.at(class_index); }
    EntityHandle method_handle(std::size_t class_index, std::size_t method_index) const;
    EntityHandle attribute_handle(std::size_t class_index, std::size_t attribute_index) const;

    bool operator==(const SystemModel& other) const {
        return system_id_ == other.system_id_ && classes_ == other.classes_;
    }

private:
    friend SystemModel derive_accessor_flags(SystemModel model);

    std::string system_id_;
    std::vector<ClassDecl> classes_;
    std::vector<EntityInfo> entities_;
    std::unordered_map<std::string, EntityHandle> entity_index_;
    std::unordered_map<std::string, std::size_t> class_index_;
    std::vector<EntitySet> entity_sets_;
    std::vector<EntitySet> class_members_;
    std::vector<std::vector<EntityHandle>> method_handles_;
    std::vector<std::vector<EntityHandle>> attribute_handles_;
};

/// Parses a code-facts JSON document. ParseError carries line/column of malformed
/// JSON; ValidationError names the offending id.
SystemModel load_code_facts(const std::string& document);
std::string serialize_code_facts(const SystemModel& model);

EntitySet entity_set(std::string_view entity_id, const SystemModel& model);

/// A method is an accessor when hinted, or when it is non-static, touches exactly one
/// attribute of its own class, and reaches nothing else (resolved references only).
/// Static methods are never accessors.
SystemModel derive_accessor_flags(SystemModel model);
bool satisfies_accessor_shape(const SystemModel& model, const MethodDecl& method);

/// "pkg.Owner#member" -> "pkg.Owner". Throws ValidationError when '#' is missing.
std::string owner_of(std::string_view entity_id);

} // namespace smad
