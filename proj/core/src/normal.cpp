#include "pcm/normal.hpp"

#include <cmath>
#include <numbers>

namespace pcm {

double std_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace pcm
