#include "schema.hpp"

#include <cmath>
#include <stdexcept>

namespace pcm::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

bool has_type(const json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "number") return v.is_number();
    if (type == "integer") {
        if (v.is_number_integer()) return true;
        if (v.is_number_float()) {
            const double d = v.get<double>();
            return std::isfinite(d) && std::floor(d) == d;
        }
        return false;
    }
    throw std::logic_error("schema: unknown type " + type);
}

std::string type_list(const json& t) {
    if (t.is_string()) return t.get<std::string>();
    std::string out;
    for (const auto& s : t) out += (out.empty() ? "" : " or ") + s.get<std::string>();
    return out;
}

class Validator {
public:
    explicit Validator(const json& root) : root_(root) {}

    std::optional<SchemaError> run(const json& schema, const json& v, const std::string& path) const {
        const json& s = resolve(schema);

        if (auto it = s.find("type"); it != s.end()) {
            bool ok = false;
            if (it->is_string()) {
                ok = has_type(v, it->get<std::string>());
            } else {
                for (const auto& t : *it) ok = ok || has_type(v, t.get<std::string>());
            }
            if (!ok) return fail(path, "expected " + type_list(*it) + ", got " + v.type_name());
        }

        if (auto it = s.find("enum"); it != s.end()) {
            bool ok = false;
            for (const auto& e : *it) ok = ok || e == v;
            if (!ok) return fail(path, "must be one of " + it->dump());
        }

        if (v.is_number()) {
            const double x = v.get<double>();
            if (auto it = s.find("minimum"); it != s.end() && !(x >= it->get<double>()))
                return fail(path, "must be >= " + it->dump());
            if (auto it = s.find("maximum"); it != s.end() && !(x <= it->get<double>()))
                return fail(path, "must be <= " + it->dump());
            if (auto it = s.find("exclusiveMinimum"); it != s.end() && !(x > it->get<double>()))
                return fail(path, "must be > " + it->dump());
            if (auto it = s.find("exclusiveMaximum"); it != s.end() && !(x < it->get<double>()))
                return fail(path, "must be < " + it->dump());
        }

        if (v.is_string()) {
            if (auto it = s.find("minLength");
                it != s.end() && v.get<std::string>().size() < it->get<std::size_t>())
                return fail(path, "must have at least " + it->dump() + " characters");
        }

        if (v.is_array()) {
            if (auto it = s.find("minItems"); it != s.end() && v.size() < it->get<std::size_t>())
                return fail(path, "must have at least " + it->dump() + " items");
            if (auto it = s.find("items"); it != s.end()) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (auto e = run(*it, v[i], path + "[" + std::to_string(i) + "]")) return e;
                }
            }
        }

        if (v.is_object()) {
            const json empty = json::object();
            const auto pit = s.find("properties");
            const json& props = pit != s.end() ? *pit : empty;
            if (auto it = s.find("required"); it != s.end()) {
                for (const auto& r : *it) {
                    if (!v.contains(r.get<std::string>()))
                        return fail(join(path, r.get<std::string>()), "required field is missing");
                }
            }
            const auto ait = s.find("additionalProperties");
            const bool closed = ait != s.end() && ait->is_boolean() && !ait->get<bool>();
            for (const auto& [key, child] : v.items()) {
                if (auto p = props.find(key); p != props.end()) {
                    if (auto e = run(*p, child, join(path, key))) return e;
                } else if (closed) {
                    return fail(join(path, key), "unknown field");
                }
            }
        }
        return std::nullopt;
    }

private:
    const json& resolve(const json& s) const {
        auto it = s.find("$ref");
        if (it == s.end()) return s;
        const auto ref = it->get<std::string>();
        if (ref.rfind("#/", 0) != 0) throw std::logic_error("schema: only local refs: " + ref);
        return resolve(root_.at(json::json_pointer(ref.substr(1))));
    }

    static std::optional<SchemaError> fail(const std::string& path, std::string msg) {
        return SchemaError{path.empty() ? "(root)" : path, std::move(msg)};
    }

    const json& root_;
};

}  // namespace

std::optional<SchemaError> validate(const nlohmann::json& schema, const nlohmann::json& instance) {
    return Validator(schema).run(schema, instance, "");
}

const nlohmann::json& config_schema() {
    static const nlohmann::json schema = nlohmann::json::parse(config_schema_text());
    return schema;
}

}  // namespace pcm::cli
