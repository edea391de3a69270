#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "pcm/dist.hpp"

namespace pcm {

enum class TNormKind { Minimum, Product, Lukasiewicz };

/// Continuous t-norm aggregating the probabilistic triangle inequality.
class TNorm {
public:
    constexpr TNorm() noexcept = default;
    constexpr explicit TNorm(TNormKind kind) noexcept : kind_(kind) {}

    constexpr TNormKind kind() const noexcept { return kind_; }

    Probability apply(Probability a, Probability b) const noexcept;
    Probability operator()(Probability a, Probability b) const noexcept { return apply(a, b); }

    /// Left fold; the empty fold is 1.
    Probability fold(std::span<const double> values) const;

    friend constexpr bool operator==(TNorm, TNorm) noexcept = default;

private:
    TNormKind kind_ = TNormKind::Minimum;
};

/// Config names: "min", "product", "lukasiewicz".
std::string_view to_string(TNormKind kind) noexcept;
std::optional<TNorm> parse_tnorm(std::string_view name) noexcept;

}  // namespace pcm
