#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pcm/types.hpp"

namespace pcm {

/// Random kernel k(t, s, omega_j). When `outer` and `inner` are set the kernel
/// is separable, k(t, s, j) = outer(t, j) * inner(s, j), and the quadrature
/// runs as a cumulative sum instead of a full double loop.
struct Kernel {
    std::string name;
    std::function<double(double, double, std::size_t)> eval;
    std::function<double(double, std::size_t)> outer;
    std::function<double(double, std::size_t)> inner;

    bool separable() const noexcept { return outer && inner; }
    /// Same kernel with the separable fast path removed.
    Kernel dense() const { return Kernel{name, eval, {}, {}}; }
};

/// Random forcing h(t, omega_j).
struct Forcing {
    std::string name;
    std::function<double(double, std::size_t)> eval;
};

/// f(s, x) with a declared Lipschitz constant in x.
struct Nonlinearity {
    std::string name;
    std::function<double(double, double)> eval;
    double lipschitz = 0.0;
};

Kernel constant_kernel(double c);
/// k(t, s) = exp(-(t - s)).
Kernel exp_decay_kernel();

Forcing constant_forcing(double c);
/// h(t, omega_j) = mean + sd * Z_j, Z_j standard normal from the stream derive_seed(seed, j).
Forcing random_normal_forcing(double mean, double sd, std::uint64_t seed);
/// The Z_j used by random_normal_forcing.
double path_normal(std::uint64_t seed, std::size_t path);

/// f(s, x) = a x, Lipschitz |a|.
Nonlinearity linear_nonlinearity(double a);
/// f(s, x) = c, Lipschitz 0.
Nonlinearity constant_nonlinearity(double c);

/// X(t, omega) = h(t, omega) + int_0^t k(t, s, omega) f(s, X(s, omega)) ds on a
/// time grid 0 = t_0 < ... < t_n = 1 with n_paths independent draws of omega.
struct SIEProblem {
    std::vector<double> times;
    Kernel kernel;
    Forcing forcing;
    Nonlinearity nonlinearity;
    double lipschitz = 0.0;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;

    /// Uniform grid with n_steps intervals on [0, 1]; lipschitz taken from f.
    static SIEProblem uniform(std::size_t n_steps, Kernel k, Forcing h, Nonlinearity f,
                              std::size_t n_paths = 1, std::uint64_t seed = 0);

    /// Throws InvalidParameter on a bad grid, negative Lipschitz constant or no paths.
    void validate() const;
    std::size_t n_times() const noexcept { return times.size(); }
};

/// X(t_i, omega_j), paths x times, row-major by path.
class PathField {
public:
    PathField() = default;
    PathField(std::size_t n_paths, std::size_t n_times, double fill = 0.0)
        : n_paths_(n_paths), n_times_(n_times), data_(n_paths * n_times, fill) {}

    std::size_t n_paths() const noexcept { return n_paths_; }
    std::size_t n_times() const noexcept { return n_times_; }
    double& at(std::size_t path, std::size_t i) noexcept { return data_[path * n_times_ + i]; }
    double at(std::size_t path, std::size_t i) const noexcept { return data_[path * n_times_ + i]; }
    std::span<double> path(std::size_t j) noexcept { return {data_.data() + j * n_times_, n_times_}; }
    std::span<const double> path(std::size_t j) const noexcept {
        return {data_.data() + j * n_times_, n_times_};
    }
    std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t n_paths_ = 0;
    std::size_t n_times_ = 0;
    std::vector<double> data_;
};

/// h sampled on the grid.
PathField sie_forcing(const SIEProblem& p, Parallelism par = {});

/// (TX)(t_i) = h(t_i) + causal composite trapezoid of k(t_i, s) f(s, X(s)) over [0, t_i].
/// Throws DivergenceError on non-finite output.
PathField sie_apply(const SIEProblem& p, const PathField& x, Parallelism par = {});

/// Full-interval trapezoid weights on the grid.
std::vector<double> trapezoid_weights(std::span<const double> times);

/// sqrt(mean over paths of sum_i w_i x(t_i)^2).
double l2_norm(std::span<const double> weights, const PathField& x);
double l2_distance(std::span<const double> weights, const PathField& x, const PathField& y);

struct SIEConditions {
    double lipschitz = 0.0;
    double sup_k = 0.0;       ///< max |k(t_i, s_l, omega_j)| over s_l <= t_i
    double m_hat = 0.0;       ///< path mean of M(omega_j) = max_i int_0^{t_i} |k| ds
    double m_stderr = 0.0;    ///< standard error of m_hat
    double max_lm = 0.0;      ///< max_j L M(omega_j)
    double k_const = 0.0;     ///< L sqrt(m_hat sup_k)
    bool satisfied = false;   ///< k_const < 1/2 and L M(omega_j) < 1/2 on every path
};

SIEConditions sie_conditions(const SIEProblem& p, Parallelism par = {});

struct SIESolution {
    PathField field;
    std::vector<double> step_norms;  ///< ||X^{m} - X^{m-1}||_{L2}, m = 1, 2, ...
    SIEConditions conditions;
    bool converged = false;
    std::size_t iterations = 0;
    bool nonnegative = true;  ///< every iterate stayed in the nonnegative cone
    std::vector<std::string> warnings;
};

/// Picard iteration from X^0 = h until the successive L2 difference drops below eps.
SIESolution sie_solve(const SIEProblem& p, double eps, std::size_t max_iter,
                      Parallelism par = {});

}  // namespace pcm
