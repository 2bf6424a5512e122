#pragma once

// Minimal JSON-schema checker covering the subset the report schemas use:
// type, required, properties, items, enum, minimum.

#include <string>

#include <json.hpp>

namespace testutil {

using nlohmann::json;

inline bool matches_type(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    return false;
}

inline void check_schema(const json& value, const json& schema, const std::string& where,
                         std::string& error) {
    if (!error.empty()) return;
    if (schema.contains("type") &&
        !matches_type(value, schema["type"].get<std::string>())) {
        error = where + ": expected " + schema["type"].get<std::string>();
        return;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"]) found |= e == value;
        if (!found) {
            error = where + ": value not in enum";
            return;
        }
    }
    if (schema.contains("minimum") && value.is_number() &&
        value.get<double>() < schema["minimum"].get<double>()) {
        error = where + ": below minimum";
        return;
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                error = where + ": missing required key " + key.get<std::string>();
                return;
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key))
                check_schema(value[key], sub, where + "." + key, error);
    }
    if (schema.contains("items") && value.is_array()) {
        std::size_t idx = 0;
        for (const auto& item : value)
            check_schema(item, schema["items"], where + "[" + std::to_string(idx++) + "]",
                         error);
    }
}

inline std::string validate_against(const json& value, const json& schema) {
    std::string error;
    check_schema(value, schema, "$", error);
    return error;
}

} // namespace testutil
