#pragma once

namespace pcm {

/// Standard normal CDF, absolute error below 1e-15 (computed through erfc).
double std_normal_cdf(double x) noexcept;

}  // namespace pcm
