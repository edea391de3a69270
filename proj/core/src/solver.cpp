#include "pcm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcm/error.hpp"
#include "pcm/parallel.hpp"

namespace pcm {

std::string_view to_string(StopReason r) noexcept {
    return r == StopReason::Converged ? "converged" : "max_iter";
}

IterationTrace picard(const Space& space, const Mapping& map, const Point& x0, double eps,
                      std::size_t max_iter) {
    if (!(eps > 0.0)) throw InvalidParameter("picard needs eps > 0");
    if (max_iter == 0) throw InvalidParameter("picard needs max_iter >= 1");
    if (x0.size() != space.dim()) throw InvalidParameter("x0 dimension does not match the space");
    if (!all_finite(x0) || !space.feasible(x0))
        throw InvalidParameter("x0 is not a feasible point of the space");

    IterationTrace tr;
    tr.eps = eps;
    tr.points.push_back(x0);
    for (std::size_t n = 0; n < max_iter; ++n) {
        Point next = map(tr.points.back());
        if (next.size() != space.dim() || !all_finite(next)) {
            throw DivergenceError("picard iterate " + std::to_string(n + 1) + " is not finite",
                                  n + 1, std::move(tr.points));
        }
        tr.step_dists.push_back(space.distance(tr.points.back(), next));
        const bool done = tau_converged(space, tr.points.back(), next, eps);
        tr.points.push_back(std::move(next));
        if (done) {
            tr.stopped = StopReason::Converged;
            return tr;
        }
    }
    tr.stopped = StopReason::MaxIter;
    return tr;
}

namespace {

void require_kannan_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidParameter("kannan alpha must lie in (0, 1/2)");
}

}  // namespace

Probability kannan_bound(const DistFn& f01, double alpha, std::size_t n, double t) {
    require_kannan_alpha(alpha);
    if (!(t > 0.0)) throw InvalidParameter("bound needs t > 0");
    return f01.eval(t / std::pow(2.0 * alpha, static_cast<double>(n)));
}

Probability cauchy_chain_bound(const DistFn& f01, double alpha, std::size_t n, std::size_t m,
                               double t, TNorm tnorm) {
    require_kannan_alpha(alpha);
    if (!(t > 0.0)) throw InvalidParameter("bound needs t > 0");
    if (!(n < m)) throw InvalidParameter("chain bound needs n < m");
    const double span = static_cast<double>(m - n);
    std::vector<double> terms;
    terms.reserve(m - n);
    for (std::size_t j = n; j < m; ++j)
        terms.push_back(f01.eval(t / (span * std::pow(2.0 * alpha, static_cast<double>(j)))));
    return tnorm.fold(terms);
}

BoundCheck check_bounds(const Space& space, const IterationTrace& trace, double alpha,
                        const TimeGrid& grid, double tol, std::size_t max_chain_points) {
    require_kannan_alpha(alpha);
    BoundCheck bc;
    bc.alpha = alpha;
    bc.tol = tol;
    bc.grid.assign(grid.begin(), grid.end());
    if (trace.points.size() < 2) return bc;

    const DistFn& f01 = trace.step_dists.front();
    const TNorm tnorm = space.tnorm();

    for (std::size_t n = 0; n < trace.step_dists.size(); ++n) {
        for (double t : grid) {
            BoundRow row{n, n + 1, t, trace.step_dists[n].eval(t), kannan_bound(f01, alpha, n, t)};
            if (row.margin() < -tol) ++bc.step_violations;
            if (!bc.worst_step || row.margin() < bc.worst_step->margin()) bc.worst_step = row;
            bc.step_rows.push_back(row);
        }
    }

    const std::size_t last = trace.points.size() - 1;
    auto chain_pair = [&](std::size_t n, std::size_t m) {
        if (last + 1 <= max_chain_points) return true;
        return m - n <= 8 || n == 0 || m == last;
    };
    for (std::size_t n = 0; n < last; ++n) {
        for (std::size_t m = n + 1; m <= last; ++m) {
            if (!chain_pair(n, m)) continue;
            const DistFn fnm = space.distance(trace.points[n], trace.points[m]);
            for (double t : grid) {
                BoundRow row{n, m, t, fnm.eval(t),
                             cauchy_chain_bound(f01, alpha, n, m, t, tnorm)};
                ++bc.chain_checks;
                if (row.margin() < -tol) ++bc.chain_violations;
                if (!bc.worst_chain || row.margin() < bc.worst_chain->margin())
                    bc.worst_chain = row;
            }
        }
    }
    bc.holds = bc.step_violations == 0 && bc.chain_violations == 0;
    return bc;
}

FixedPointCheck verify_fixed_point(const Space& space, const Mapping& map, const Point& x,
                                   const TimeGrid& grid, double tol) {
    const Point tx = map(x);
    const DistFn f = space.distance(tx, x);
    FixedPointCheck r;
    for (double t : grid) r.worst = std::min(r.worst, f.eval(t).value());
    r.is_fixed = r.worst >= 1.0 - tol;
    return r;
}

UniquenessResult uniqueness_probe(const Space& space, const Mapping& map,
                                  std::span<const Point> starts, double eps, std::size_t max_iter,
                                  double agree_tol, Parallelism par) {
    if (starts.size() < 2) throw InvalidParameter("uniqueness probe needs at least 2 starts");
    if (!(agree_tol > 0.0)) throw InvalidParameter("uniqueness probe needs agree_tol > 0");
    std::vector<IterationTrace> runs(starts.size());
    parallel_for(starts.size(), par, [&](std::size_t i) {
        runs[i] = picard(space, map, starts[i], eps, max_iter);
    });

    UniquenessResult r;
    r.unique = true;
    for (const auto& run : runs) {
        r.limits.push_back(run.last());
        r.converged.push_back(run.stopped == StopReason::Converged);
        r.iterations.push_back(run.n_iters());
        if (run.stopped != StopReason::Converged) r.unique = false;
    }
    for (std::size_t i = 0; i < r.limits.size() && r.unique; ++i)
        for (std::size_t j = i + 1; j < r.limits.size() && r.unique; ++j)
            r.unique = tau_converged(space, r.limits[i], r.limits[j], agree_tol);
    return r;
}

}  // namespace pcm
