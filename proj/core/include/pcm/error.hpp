#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcm {

/// A precondition on an argument was violated.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Rejection sampling could not find a feasible point within its attempt cap.
class InfeasibleSampling : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iteration produced a non-finite value. `partial_orbit` holds the
/// iterates computed before the failure (empty for field-valued solvers).
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::size_t iteration,
                    std::vector<std::vector<double>> partial_orbit = {})
        : std::runtime_error(what), iteration_(iteration),
          partial_orbit_(std::move(partial_orbit)) {}

    std::size_t iteration() const noexcept { return iteration_; }
    const std::vector<std::vector<double>>& partial_orbit() const noexcept {
        return partial_orbit_;
    }

private:
    std::size_t iteration_;
    std::vector<std::vector<double>> partial_orbit_;
};

/// The hybrid contraction rate is >= 1, so no geometric rate can be certified.
class RateNotCertified : public std::runtime_error {
public:
    explicit RateNotCertified(double delta)
        : std::runtime_error("rate not certified: delta = " + std::to_string(delta)),
          delta_(delta) {}

    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

}  // namespace pcm
