#pragma once

// Internal helpers shared by the JSON readers.

#include "smad/code_model.hpp"
#include "smad/errors.hpp"

#include <json.hpp>

#include <string>

namespace smad {

using nlohmann::json;

inline const json& require(const json& object, const char* key, const std::string& where) {
    if (!object.is_object()) {
        throw ParseError(where + " must be an object");
    }
    auto it = object.find(key);
    if (it == object.end()) {
        throw ParseError("missing field '" + std::string(key) + "' in " + where);
    }
    return *it;
}

inline std::string require_string(const json& object, const char* key, const std::string& where) {
    const json& value = require(object, key, where);
    if (!value.is_string()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be a string");
    }
    return value.get<std::string>();
}

inline int require_int(const json& object, const char* key, const std::string& where) {
    const json& value = require(object, key, where);
    if (!value.is_number_integer()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be an integer");
    }
    return value.get<int>();
}

inline bool require_bool(const json& object, const char* key, const std::string& where) {
    const json& value = require(object, key, where);
    if (!value.is_boolean()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be a boolean");
    }
    return value.get<bool>();
}

inline const json& require_array(const json& object, const char* key, const std::string& where) {
    const json& value = require(object, key, where);
    if (!value.is_array()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be an array");
    }
    return value;
}

inline int optional_count(const json& object, const std::string& where) {
    if (!object.contains("count")) {
        return 1;
    }
    return require_int(object, "count", where);
}

inline AccessKind parse_access_kind(const std::string& text, const std::string& where) {
    if (text == "read") {
        return AccessKind::Read;
    }
    if (text == "write") {
        return AccessKind::Write;
    }
    throw ParseError("access kind must be read|write in " + where);
}

inline json parse_json_document(const std::string& document) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(document, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, column);
    }
}

inline double require_number(const json& object, const char* key, const std::string& where) {
    const json& value = require(object, key, where);
    if (!value.is_number()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be a number");
    }
    return value.get<double>();
}

} // namespace smad
