#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pcm/types.hpp"

namespace pcm {

/// A deterministic self-map T: R^d -> R^d.
struct Mapping {
    std::string name;
    std::function<Point(std::span<const double>)> fn;
    /// Conventions that every report using this map should repeat.
    std::vector<std::string> notes;

    Point operator()(std::span<const double> x) const { return fn(x); }
};

/// Tu = (u + (||u|| / ||Au||) Au) / 2 on R^2 with A the quarter-turn
/// rotation; T(0) = 0. Since ||Au|| = ||u||, ||Tu|| = ||u|| / sqrt(2).
Mapping rotation_half();

/// u -> c u.
Mapping scale(double c);

/// u -> c.
Mapping constant(Point c);

Mapping identity();

/// u -> A u + b, A given row-major as rows.
Mapping affine(std::vector<std::vector<double>> a, Point b);

/// u -> u + b.
Mapping shift(Point b);

}  // namespace pcm
