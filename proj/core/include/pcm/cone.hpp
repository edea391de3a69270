#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcm/rng.hpp"
#include "pcm/types.hpp"

namespace pcm {

/// Closed pointed convex cone P in R^d given by finitely many halfspaces
/// {x : a_i . x >= 0}. The orthant is the special case a_i = e_i.
///
/// x <= y in the induced order iff y - x is in P.
class Cone {
public:
    enum class Type { Orthant, Halfspaces };

    /// Membership slack: a_i . x >= -kBoundaryTol counts as inside.
    static constexpr double kBoundaryTol = 1e-12;

    static Cone orthant(std::size_t dim);
    /// Throws InvalidParameter on an empty list, ragged rows or zero dimension.
    static Cone halfspaces(std::vector<std::vector<double>> normals);

    Type type() const noexcept { return type_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::vector<double>>& normals() const noexcept { return normals_; }

    /// Throws InvalidParameter on dimension mismatch.
    bool contains(std::span<const double> x) const;
    bool leq(std::span<const double> x, std::span<const double> y) const;

    /// Largest lambda >= 0 with y - lambda p in P, assuming y in P; +inf when unbounded.
    double max_step(std::span<const double> y, std::span<const double> p) const;

    /// Random member with norm up to roughly `radius`; rejection sampling from
    /// the cube [-radius, radius]^d. Throws InfeasibleSampling after `max_attempts`.
    Point sample(SplitMix64& rng, double radius = 1.0, std::size_t max_attempts = 100000) const;

private:
    Cone(Type type, std::size_t dim, std::vector<std::vector<double>> normals)
        : type_(type), dim_(dim), normals_(std::move(normals)) {}

    void check_dim(std::span<const double> x) const;

    Type type_;
    std::size_t dim_;
    std::vector<std::vector<double>> normals_;
};

struct NormalityResult {
    bool holds = true;
    double worst_ratio = 0.0;           ///< max ||x|| / ||y|| over samples with ||y|| > 0
    std::optional<Point> witness_x;     ///< pair attaining worst_ratio
    std::optional<Point> witness_y;
    std::size_t samples = 0;
};

/// Samples pairs 0 <= x <= y and tests ||x|| <= N ||y|| (Euclidean norm).
/// y is drawn in P, then x = y - lambda p for a random p in P and lambda in
/// [0, max_step]; the first sample uses lambda = 0 (x = y).
NormalityResult normality_check(const Cone& cone, double n_const, std::size_t sample_count,
                                std::uint64_t seed);

}  // namespace pcm
