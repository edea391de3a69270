#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's own evaluation paths.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pcm::oracle {

/// P(|Z| < t) for standard normal Z, via erf (the library uses erfc).
inline double folded_normal_cdf(double t) { return t <= 0.0 ? 0.0 : std::erf(t / std::numbers::sqrt2); }

/// Phi through erf.
inline double phi(double x) { return 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)); }

/// Step distribution of an ordinary metric.
inline double step(double d, double t) { return t > d ? 1.0 : 0.0; }

/// Hand-iterated quarter-turn half map: T(a, b) = ((a - b) / 2, (a + b) / 2).
inline std::vector<std::vector<double>> rotation_half_orbit(double a, double b, std::size_t n) {
    std::vector<std::vector<double>> out{{a, b}};
    for (std::size_t k = 0; k < n; ++k) {
        const double na = 0.5 * (a - b);
        const double nb = 0.5 * (a + b);
        a = na;
        b = nb;
        out.push_back({a, b});
    }
    return out;
}

/// Solution of X = h + a int_0^t X ds with constant h.
inline double linear_volterra(double h, double a, double t) { return h * std::exp(a * t); }

/// Tiny independent LCG for test-side random inputs.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : s_(seed * 2862933555777941757ull + 3037000493ull) {}
    double uniform() {
        s_ = s_ * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(s_ >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t s_;
};

}  // namespace pcm::oracle
