#include "pcm/tnorm.hpp"

#include <algorithm>

namespace pcm {

Probability TNorm::apply(Probability a, Probability b) const noexcept {
    switch (kind_) {
        case TNormKind::Minimum: return a.value() <= b.value() ? a : b;
        case TNormKind::Product: return clamp_probability(a.value() * b.value());
        case TNormKind::Lukasiewicz: {
            // lo - (1 - hi): symmetric, and exact when hi = 1
            const double lo = std::min(a.value(), b.value());
            const double hi = std::max(a.value(), b.value());
            return clamp_probability(std::max(lo - (1.0 - hi), 0.0));
        }
    }
    return a;
}

Probability TNorm::fold(std::span<const double> values) const {
    Probability acc = clamp_probability(1.0);
    for (double v : values) acc = apply(acc, Probability(v));
    return acc;
}

std::string_view to_string(TNormKind kind) noexcept {
    switch (kind) {
        case TNormKind::Minimum: return "min";
        case TNormKind::Product: return "product";
        case TNormKind::Lukasiewicz: return "lukasiewicz";
    }
    return "unknown";
}

std::optional<TNorm> parse_tnorm(std::string_view name) noexcept {
    if (name == "min") return TNorm(TNormKind::Minimum);
    if (name == "product") return TNorm(TNormKind::Product);
    if (name == "lukasiewicz") return TNorm(TNormKind::Lukasiewicz);
    return std::nullopt;
}

}  // namespace pcm
