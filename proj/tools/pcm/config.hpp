#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcm/mappings.hpp"
#include "pcm/sie.hpp"
#include "pcm/space.hpp"
#include "pcm/time_grid.hpp"

namespace pcm::cli {

/// Bad configuration; `field` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A parsed, schema-valid configuration. Section accessors fall back to
/// defaults when the section or key is absent.
class Config {
public:
    /// Validates against the embedded schema; throws ConfigError.
    explicit Config(nlohmann::json doc);

    static Config from_file(const std::filesystem::path& path);
    static Config from_string(const std::string& text);

    const nlohmann::json& doc() const noexcept { return doc_; }
    std::uint64_t seed() const;
    std::optional<unsigned> workers() const;

    /// `section.key` or the fallback.
    template <class T>
    T get(const char* section, const char* key, T fallback) const {
        if (!doc_.contains(section) || !doc_[section].contains(key)) return fallback;
        return doc_[section][key].get<T>();
    }
    bool has(const char* section) const { return doc_.contains(section); }
    const nlohmann::json& section(const char* name) const;

private:
    nlohmann::json doc_;
};

Space build_space(const Config& cfg);
TimeGrid build_grid(const Config& cfg);
Mapping build_mapping(const Config& cfg);

/// Mapping registry: "rotation-half", "identity", "scale:c", "constant:c1,c2,...",
/// "shift:b1,b2,...", "affine:a11,a12,...;b1,b2,..." (A row-major, square).
/// Throws ConfigError naming `field` on an unknown name or bad arguments.
Mapping parse_mapping(const std::string& spec, std::size_t dim, const std::string& field = "mapping");

/// Kernel, forcing and nonlinearity registries for the sie section.
SIEProblem build_sie_problem(const Config& cfg, std::uint64_t seed);

}  // namespace pcm::cli
