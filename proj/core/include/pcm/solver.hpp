#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pcm/mappings.hpp"
#include "pcm/space.hpp"

namespace pcm {

enum class StopReason { Converged, MaxIter };

std::string_view to_string(StopReason r) noexcept;

/// Picard orbit x_{n+1} = T x_n with the step distributions F_{x_n, x_{n+1}}.
struct IterationTrace {
    std::vector<Point> points;
    std::vector<DistFn> step_dists;  ///< step_dists[n] = F_{x_n, x_{n+1}}
    StopReason stopped = StopReason::MaxIter;
    double eps = 0.0;

    std::size_t n_iters() const noexcept { return points.size() - 1; }
    const Point& last() const noexcept { return points.back(); }
};

/// Iterates until tau_converged(x_n, x_{n+1}, eps) or max_iter steps.
/// Throws InvalidParameter for an infeasible x0 or bad eps/max_iter, and
/// DivergenceError (carrying the orbit so far) on a non-finite iterate.
IterationTrace picard(const Space& space, const Mapping& map, const Point& x0, double eps,
                      std::size_t max_iter);

/// Lower bound for F_{x_n, x_{n+1}}(t) under a Kannan map: F01(t / (2 alpha)^n).
Probability kannan_bound(const DistFn& f01, double alpha, std::size_t n, double t);

/// T-fold over j = n..m-1 of F01(t / ((m - n) (2 alpha)^j)), the lower bound
/// for F_{x_n, x_m}(t).
Probability cauchy_chain_bound(const DistFn& f01, double alpha, std::size_t n, std::size_t m,
                               double t, TNorm tnorm);

struct BoundRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double t = 0.0;
    double lhs = 0.0;  ///< observed F_{x_n, x_m}(t)
    double rhs = 0.0;  ///< theoretical lower bound
    double margin() const noexcept { return lhs - rhs; }
};

struct BoundCheck {
    double alpha = 0.0;
    double tol = 0.0;
    std::vector<double> grid;
    std::vector<BoundRow> step_rows;  ///< every (n, t) with m = n + 1
    std::size_t step_violations = 0;
    std::size_t chain_checks = 0;
    std::size_t chain_violations = 0;
    std::optional<BoundRow> worst_step;
    std::optional<BoundRow> worst_chain;
    bool holds = true;
};

/// Compares the observed step and chain distributions of a trace with the
/// Kannan bounds. Chain pairs: all n < m when the trace has at most
/// `max_chain_points` points, otherwise the pairs with m - n <= 8 plus (0, m)
/// and (n, last).
BoundCheck check_bounds(const Space& space, const IterationTrace& trace, double alpha,
                        const TimeGrid& grid, double tol, std::size_t max_chain_points = 160);

struct FixedPointCheck {
    bool is_fixed = false;
    double worst = 1.0;  ///< min over grid of F_{Tx, x}(t)
};

/// is_fixed iff F_{Tx, x}(t) >= 1 - tol on every grid point.
FixedPointCheck verify_fixed_point(const Space& space, const Mapping& map, const Point& x,
                                   const TimeGrid& grid, double tol);

struct UniquenessResult {
    bool unique = false;
    std::vector<Point> limits;
    std::vector<bool> converged;
    std::vector<std::size_t> iterations;
};

/// Runs picard from each start (independent orbits, parallel); unique iff all
/// converged and every pair of limits is tau-close at agree_tol.
UniquenessResult uniqueness_probe(const Space& space, const Mapping& map,
                                  std::span<const Point> starts, double eps, std::size_t max_iter,
                                  double agree_tol, Parallelism par = {});

}  // namespace pcm
