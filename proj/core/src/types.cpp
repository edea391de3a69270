#include "pcm/types.hpp"

#include <algorithm>
#include <cmath>

namespace pcm {

namespace {

// Sum of squares overflowed or underflowed: rescale by the largest entry.
template <class Get>
double scaled_norm(std::size_t n, Get get) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(get(i)));
    if (m == 0.0 || !std::isfinite(m)) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = get(i) / m;
        s += v * v;
    }
    return m * std::sqrt(s);
}

constexpr double kTinySquare = 1e-290;

}  // namespace

double norm2(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) s += v * v;
    if (std::isfinite(s) && s > kTinySquare) return std::sqrt(s);
    return scaled_norm(x.size(), [&](std::size_t i) { return x[i]; });
}

double distance2(std::span<const double> x, std::span<const double> y) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    if (std::isfinite(s) && s > kTinySquare) return std::sqrt(s);
    return scaled_norm(x.size(), [&](std::size_t i) { return x[i] - y[i]; });
}

bool all_finite(std::span<const double> x) noexcept {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace pcm
