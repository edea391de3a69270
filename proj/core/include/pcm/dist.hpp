#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pcm/time_grid.hpp"

namespace pcm {

/// A value in [0, 1]. Construction from a double outside that range (or NaN)
/// throws InvalidParameter.
class Probability {
public:
    constexpr Probability() noexcept = default;
    Probability(double value);  // NOLINT(google-explicit-constructor)

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }  // NOLINT

private:
    struct Unchecked {};
    constexpr Probability(double value, Unchecked) noexcept : value_(value) {}
    friend class DistFn;
    friend Probability clamp_probability(double) noexcept;

    double value_ = 0.0;
};

/// Clamps into [0, 1]; NaN maps to 0.
Probability clamp_probability(double x) noexcept;

/// eval(t) = 0 for t <= d, 1 for t > d.
struct DiracStep {
    double d;
};

/// eval(t) = Phi(t - d).
struct GaussianShift {
    double d;
};

/// eval(t) = delta * Phi(t) for t > 0, 0 otherwise. A sub-distribution when delta < 1.
struct ScaledGaussian {
    double delta;
};

/// eval(t) = #{s_i < t} / n over sorted samples.
struct Empirical {
    std::shared_ptr<const std::vector<double>> samples;

    std::size_t size() const noexcept { return samples->size(); }
};

enum class DistKind { DiracStep, GaussianShift, ScaledGaussian, Empirical };

std::string_view to_string(DistKind kind) noexcept;

/// Distribution function value of a probabilistic distance.
///
/// Immutable. Every variant is non-decreasing and left-continuous. A DistFn
/// carries a time scale c (default 1) so that eval(t) = base(t / c); DiracStep
/// absorbs the scale into its jump instead.
class DistFn {
public:
    using Variant = std::variant<DiracStep, GaussianShift, ScaledGaussian, Empirical>;

    static DistFn dirac(double d);
    static DistFn gaussian_shift(double d);
    static DistFn scaled_gaussian(double delta);

    /// Empirical CDF over nonnegative finite samples (copied and sorted).
    static DistFn from_samples(std::span<const double> values);
    static DistFn from_samples(std::vector<double>&& values);

    Probability eval(double t) const noexcept;
    Probability operator()(double t) const noexcept { return eval(t); }

    /// G with G(t) = F(t / c). Throws InvalidParameter unless c > 0 and finite.
    DistFn timescale(double c) const;

    DistKind kind() const noexcept { return static_cast<DistKind>(base_.index()); }
    const Variant& base() const noexcept { return base_; }
    double scale() const noexcept { return scale_; }

    /// lim_{t -> +inf} eval(t).
    double upper_limit() const noexcept;
    bool is_proper() const noexcept { return upper_limit() == 1.0; }

    /// Default comparison tolerance: 0 for analytic variants, 2/sqrt(n) for
    /// an empirical CDF over n samples.
    double default_tolerance() const noexcept;

private:
    explicit DistFn(Variant base, double scale = 1.0) : base_(std::move(base)), scale_(scale) {}

    Variant base_;
    double scale_ = 1.0;
};

/// Pointwise min{F(t), G(t)} on the grid.
std::vector<double> pointwise_min(const DistFn& f, const DistFn& g, const TimeGrid& grid);

struct Dominance {
    bool holds = true;
    double worst_margin = 0.0;  ///< min over grid of F(t) - G(t)
    double witness_t = 0.0;     ///< first grid point attaining worst_margin
};

/// Checks F(t) >= G(t) - tol on every grid point.
Dominance dominates(const DistFn& f, const DistFn& g, const TimeGrid& grid, double tol);

/// As above with tol = max of the two default tolerances.
Dominance dominates(const DistFn& f, const DistFn& g, const TimeGrid& grid);

/// (min, p25, p50, p75, max) of an empirical CDF's samples, nearest-rank.
struct QuantileSketch {
    double min, p25, p50, p75, max;
};
QuantileSketch quantile_sketch(const Empirical& e) noexcept;

}  // namespace pcm
