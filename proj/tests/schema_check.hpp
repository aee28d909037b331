#pragma once
// Validator for the restricted JSON-Schema dialect used by docs/schema.json:
// type, properties, required, additionalProperties (false or a schema), items,
// enum, oneOf.  oneOf follows draft-07: exactly one branch must validate.

#include <string>

#include <json.hpp>

namespace schema_check {

using nlohmann::json;

inline bool validates(const json& schema, const json& instance);

inline bool type_matches(const std::string& type, const json& instance) {
    if (type == "object") return instance.is_object();
    if (type == "array") return instance.is_array();
    if (type == "string") return instance.is_string();
    if (type == "boolean") return instance.is_boolean();
    if (type == "integer") return instance.is_number_integer();
    if (type == "number") return instance.is_number();
    if (type == "null") return instance.is_null();
    return false;
}

inline bool validates(const json& schema, const json& instance) {
    if (schema.contains("oneOf")) {
        int hits = 0;
        for (const auto& branch : schema["oneOf"])
            if (validates(branch, instance)) ++hits;
        if (hits != 1) return false;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& v : schema["enum"])
            if (v == instance) found = true;
        if (!found) return false;
    }
    if (schema.contains("type") && !type_matches(schema["type"].get<std::string>(), instance))
        return false;
    if (instance.is_object()) {
        if (schema.contains("required"))
            for (const auto& name : schema["required"])
                if (!instance.contains(name.get<std::string>())) return false;
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        for (auto it = instance.begin(); it != instance.end(); ++it) {
            if (props && props->contains(it.key())) {
                if (!validates((*props)[it.key()], it.value())) return false;
            } else if (schema.contains("additionalProperties")) {
                const json& ap = schema["additionalProperties"];
                if (ap.is_boolean() && !ap.get<bool>()) return false;
                if (ap.is_object() && !validates(ap, it.value())) return false;
            }
        }
    }
    if (instance.is_array() && schema.contains("items")) {
        for (const auto& elem : instance)
            if (!validates(schema["items"], elem)) return false;
    }
    return true;
}

}  // namespace schema_check
