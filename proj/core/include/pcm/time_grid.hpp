#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcm {

/// Finite set of strictly increasing positive times standing in for "all t > 0".
class TimeGrid {
public:
    /// Throws InvalidParameter if empty, not strictly increasing, or any t <= 0.
    explicit TimeGrid(std::vector<double> points);

    /// n log-spaced points from lo to hi inclusive.
    static TimeGrid log_spaced(double lo, double hi, std::size_t n);

    /// 50 log-spaced points on [1e-3, 1e2].
    static TimeGrid standard();

    std::span<const double> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const noexcept { return points_[i]; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

private:
    std::vector<double> points_;
};

}  // namespace pcm
