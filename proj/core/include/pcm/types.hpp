#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcm {

/// A point of R^d. Dimension is carried by the size.
using Point = std::vector<double>;

/// Axis-aligned box [lo, hi] used for random point generation.
struct Box {
    Point lo;
    Point hi;

    std::size_t dim() const noexcept { return lo.size(); }
    static Box cube(std::size_t dim, double lo, double hi) {
        return Box{Point(dim, lo), Point(dim, hi)};
    }
};

double norm2(std::span<const double> x) noexcept;
double distance2(std::span<const double> x, std::span<const double> y) noexcept;
bool all_finite(std::span<const double> x) noexcept;

/// Number of worker threads used by the parallel loops. Results never depend on it.
struct Parallelism {
    unsigned workers = 1;
};

}  // namespace pcm
