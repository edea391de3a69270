#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "pcm/cone.hpp"
#include "pcm/error.hpp"
#include "pcm/tnorm.hpp"
#include "schema.hpp"

namespace pcm::cli {

using nlohmann::json;

Config::Config(nlohmann::json doc) : doc_(std::move(doc)) {
    if (auto err = validate(config_schema(), doc_)) throw ConfigError(err->path, err->message);
}

Config Config::from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("(root)", std::string("invalid JSON: ") + e.what());
    }
    return Config(std::move(doc));
}

Config Config::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("(file)", "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

std::uint64_t Config::seed() const { return doc_.value("seed", std::uint64_t{0}); }

std::optional<unsigned> Config::workers() const {
    if (!doc_.contains("workers")) return std::nullopt;
    return doc_["workers"].get<unsigned>();
}

const nlohmann::json& Config::section(const char* name) const {
    static const json empty = json::object();
    auto it = doc_.find(name);
    return it == doc_.end() ? empty : *it;
}

namespace {

std::vector<double> numbers(const json& a) { return a.get<std::vector<double>>(); }

Cone build_cone(const json& c, std::size_t dim, const std::string& field) {
    try {
        if (c.at("type") == "orthant") {
            const auto d = c.value("dim", dim);
            if (d != dim) throw ConfigError(field + ".dim", "cone dimension " + std::to_string(d) +
                                                                " does not match space dimension " +
                                                                std::to_string(dim));
            return Cone::orthant(d);
        }
        if (!c.contains("normals")) throw ConfigError(field + ".normals", "required for halfspaces");
        auto normals = c["normals"].get<std::vector<std::vector<double>>>();
        for (std::size_t i = 0; i < normals.size(); ++i) {
            if (normals[i].size() != dim)
                throw ConfigError(field + ".normals[" + std::to_string(i) + "]",
                                  "expected " + std::to_string(dim) + " entries");
        }
        return Cone::halfspaces(std::move(normals));
    } catch (const InvalidParameter& e) {
        throw ConfigError(field, e.what());
    }
}

std::size_t cone_dim(const json& c) {
    if (c.contains("normals") && !c["normals"].empty()) return c["normals"][0].size();
    return c.value("dim", std::size_t{0});
}

std::size_t space_dim(const json& s) {
    if (s.contains("dim")) return s["dim"].get<std::size_t>();
    if (s.contains("box")) return s["box"]["lo"].size();
    for (const char* k : {"cone", "point_cone"}) {
        if (s.contains(k)) {
            if (auto d = cone_dim(s[k]); d > 0) return d;
        }
    }
    return 2;
}

std::optional<Box> build_box(const json& s, std::size_t dim) {
    if (!s.contains("box")) return std::nullopt;
    Box b{numbers(s["box"]["lo"]), numbers(s["box"]["hi"])};
    if (b.lo.size() != dim) throw ConfigError("space.box.lo", "expected " + std::to_string(dim) + " entries");
    if (b.hi.size() != dim) throw ConfigError("space.box.hi", "expected " + std::to_string(dim) + " entries");
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(b.lo[i] <= b.hi[i]))
            throw ConfigError("space.box", "lo[" + std::to_string(i) + "] exceeds hi[" + std::to_string(i) + "]");
    }
    return b;
}

std::vector<double> parse_list(std::string_view text, const std::string& field) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || end != tok.data() + tok.size() || !std::isfinite(v))
            throw ConfigError(field, "bad number '" + std::string(tok) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

// A single value broadcasts to every coordinate.
Point vector_arg(std::string_view text, std::size_t dim, const std::string& field) {
    auto v = parse_list(text, field);
    if (v.size() == 1) return Point(dim, v[0]);
    if (v.size() != dim)
        throw ConfigError(field, "expected 1 or " + std::to_string(dim) + " values, got " +
                                     std::to_string(v.size()));
    return v;
}

}  // namespace

Space build_space(const Config& cfg) {
    if (!cfg.has("space")) throw ConfigError("space", "required field is missing");
    const json& s = cfg.section("space");
    const auto dim = space_dim(s);
    const auto tnorm = parse_tnorm(s.value("tnorm", std::string("min")));
    const auto box = build_box(s, dim);
    std::optional<Cone> point_cone;
    if (s.contains("point_cone")) point_cone = build_cone(s["point_cone"], dim, "space.point_cone");

    if (s["distance"] == "dirac") {
        if (s.contains("cone")) throw ConfigError("space.cone", "the dirac space has no order cone; use point_cone");
        if (s.contains("delta")) throw ConfigError("space.delta", "only used by directional-gaussian");
        return dirac_space(dim, *tnorm, box, point_cone);
    }
    if (point_cone) throw ConfigError("space.point_cone", "not supported by directional-gaussian");
    const Cone order = s.contains("cone") ? build_cone(s["cone"], dim, "space.cone") : Cone::orthant(dim);
    try {
        return directional_gaussian_space(order, s.value("delta", 0.5), *tnorm, box);
    } catch (const InvalidParameter& e) {
        throw ConfigError("space", e.what());
    }
}

TimeGrid build_grid(const Config& cfg) {
    if (!cfg.has("grid")) return TimeGrid::standard();
    const json& g = cfg.section("grid");
    if (g.contains("points")) {
        if (g.contains("lo") || g.contains("hi") || g.contains("n"))
            throw ConfigError("grid", "give either points or lo/hi/n, not both");
        try {
            return TimeGrid(numbers(g["points"]));
        } catch (const InvalidParameter& e) {
            throw ConfigError("grid.points", e.what());
        }
    }
    const double lo = g.value("lo", 1e-3);
    const double hi = g.value("hi", 1e2);
    if (!(hi >= lo)) throw ConfigError("grid.hi", "must be >= grid.lo");
    return TimeGrid::log_spaced(lo, hi, g.value("n", std::size_t{50}));
}

Mapping parse_mapping(const std::string& spec, std::size_t dim, const std::string& field) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string_view args = colon == std::string::npos
                                      ? std::string_view{}
                                      : std::string_view(spec).substr(colon + 1);
    const bool has_args = colon != std::string::npos;
    auto no_args = [&] {
        if (has_args) throw ConfigError(field, "'" + name + "' takes no arguments");
    };
    auto need_args = [&] {
        if (!has_args || args.empty()) throw ConfigError(field, "'" + name + "' needs arguments");
    };

    if (name == "rotation-half") {
        no_args();
        if (dim != 2) throw ConfigError(field, "rotation-half needs a 2-dimensional space");
        return rotation_half();
    }
    if (name == "identity") {
        no_args();
        return identity();
    }
    if (name == "scale") {
        need_args();
        const auto v = parse_list(args, field);
        if (v.size() != 1) throw ConfigError(field, "scale takes one factor");
        return scale(v[0]);
    }
    if (name == "constant") {
        need_args();
        return constant(vector_arg(args, dim, field));
    }
    if (name == "shift") {
        need_args();
        return shift(vector_arg(args, dim, field));
    }
    if (name == "affine") {
        need_args();
        const auto semi = args.find(';');
        if (semi == std::string_view::npos) throw ConfigError(field, "affine needs 'A;b'");
        const auto a = parse_list(args.substr(0, semi), field);
        if (a.size() != dim * dim)
            throw ConfigError(field, "affine matrix needs " + std::to_string(dim * dim) + " entries");
        std::vector<std::vector<double>> rows(dim, std::vector<double>(dim));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) rows[i][j] = a[i * dim + j];
        return affine(std::move(rows), vector_arg(args.substr(semi + 1), dim, field));
    }
    throw ConfigError(field, "unknown mapping '" + name +
                                 "' (known: rotation-half, identity, scale, constant, shift, affine)");
}

Mapping build_mapping(const Config& cfg) {
    if (!cfg.doc().contains("mapping")) throw ConfigError("mapping", "required field is missing");
    return parse_mapping(cfg.doc()["mapping"].get<std::string>(), space_dim(cfg.section("space")));
}

SIEProblem build_sie_problem(const Config& cfg, std::uint64_t seed) {
    if (!cfg.has("sie")) throw ConfigError("sie", "required field is missing");
    const json& s = cfg.section("sie");

    const json& k = s["kernel"];
    Kernel kernel;
    if (k["type"] == "constant") {
        kernel = constant_kernel(k.value("c", 1.0));
    } else {
        if (k.contains("c")) throw ConfigError("sie.kernel.c", "not used by exp-decay");
        kernel = exp_decay_kernel();
    }

    const json& h = s["forcing"];
    Forcing forcing;
    if (h["type"] == "constant") {
        for (const char* key : {"mean", "sd"})
            if (h.contains(key)) throw ConfigError(std::string("sie.forcing.") + key, "not used by constant");
        forcing = constant_forcing(h.value("c", 1.0));
    } else {
        if (h.contains("c")) throw ConfigError("sie.forcing.c", "not used by random-normal");
        forcing = random_normal_forcing(h.value("mean", 1.0), h.value("sd", 0.1), seed);
    }

    const json& f = s["nonlinearity"];
    Nonlinearity nonlin;
    if (f["type"] == "linear") {
        if (!f.contains("a")) throw ConfigError("sie.nonlinearity.a", "required for linear");
        nonlin = linear_nonlinearity(f["a"].get<double>());
    } else {
        if (!f.contains("c")) throw ConfigError("sie.nonlinearity.c", "required for constant");
        nonlin = constant_nonlinearity(f["c"].get<double>());
    }

    auto p = SIEProblem::uniform(s.value("n_t", std::size_t{1000}), std::move(kernel), std::move(forcing),
                                 std::move(nonlin), s.value("n_paths", std::size_t{1}), seed);
    if (s.contains("lipschitz")) p.lipschitz = s["lipschitz"].get<double>();
    return p;
}

}  // namespace pcm::cli
