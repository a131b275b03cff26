#include "danlab/schema_check.hpp"

namespace danlab {

namespace {

using Json = nlohmann::ordered_json;

bool type_matches(const Json& doc, const std::string& type) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "number") return doc.is_number();
    if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (type == "boolean") return doc.is_boolean();
    if (type == "null") return doc.is_null();
    return false;
}

bool validate(const Json& doc, const Json& schema, const std::string& path, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = path + ": " + msg;
        return false;
    };
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(doc, t.get<std::string>());
        } else if (t.is_array()) {
            for (const auto& alt : t)
                if (type_matches(doc, alt.get<std::string>())) ok = true;
        }
        if (!ok) return fail("type mismatch, expected " + t.dump());
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"])
            if (v == doc) ok = true;
        if (!ok) return fail("value not in enum " + schema["enum"].dump());
    }
    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    return fail("missing required key '" + key.get<std::string>() + "'");
        }
        if (schema.contains("properties")) {
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
                if (!doc.contains(it.key())) continue;
                if (!validate(doc[it.key()], it.value(), path + "/" + it.key(), error))
                    return false;
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (size_t i = 0; i < doc.size(); ++i)
            if (!validate(doc[i], schema["items"], path + "[" + std::to_string(i) + "]", error))
                return false;
    }
    return true;
}

}  // namespace

bool schema_validate(const Json& doc, const Json& schema, std::string* error) {
    return validate(doc, schema, "$", error);
}

}  // namespace danlab
