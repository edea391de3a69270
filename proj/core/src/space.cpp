#include "pcm/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcm/error.hpp"
#include "pcm/parallel.hpp"

namespace pcm {

Space::Space(std::string name, std::size_t dim, DistanceMap distance, TNorm tnorm,
             Box sampling_box, std::optional<Cone> point_cone)
    : name_(std::move(name)), dim_(dim), distance_(std::move(distance)), tnorm_(tnorm),
      box_(std::move(sampling_box)), cone_(std::move(point_cone)) {
    if (dim_ == 0) throw InvalidParameter("space dimension must be positive");
    if (!distance_) throw InvalidParameter("space needs a distance map");
    if (box_.lo.size() != dim_ || box_.hi.size() != dim_)
        throw InvalidParameter("sampling box dimension does not match the space");
    for (std::size_t i = 0; i < dim_; ++i)
        if (!(box_.lo[i] <= box_.hi[i])) throw InvalidParameter("sampling box has lo > hi");
    if (cone_ && cone_->dim() != dim_)
        throw InvalidParameter("point cone dimension does not match the space");
}

bool Space::feasible(std::span<const double> x) const {
    if (x.size() != dim_) return false;
    return !cone_ || cone_->contains(x);
}

Point Space::sample_point(SplitMix64& rng) const {
    constexpr std::size_t kMaxAttempts = 100000;
    Point x(dim_);
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        for (std::size_t i = 0; i < dim_; ++i) x[i] = rng.uniform(box_.lo[i], box_.hi[i]);
        if (!cone_ || cone_->contains(x)) return x;
    }
    throw InfeasibleSampling("infeasible sampling region: box and point cone barely intersect");
}

Space dirac_space(std::size_t dim, TNorm tnorm, std::optional<Box> box,
                  std::optional<Cone> point_cone) {
    auto metric = [](std::span<const double> x, std::span<const double> y) {
        return DistFn::dirac(distance2(x, y));
    };
    return Space("dirac", dim, metric, tnorm, box ? *box : Box::cube(dim, -1.0, 1.0),
                 std::move(point_cone));
}

Space directional_gaussian_space(const Cone& order_cone, double delta, TNorm tnorm,
                                 std::optional<Box> box) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidParameter("directional gaussian delta must lie in (0,1]");
    const std::size_t dim = order_cone.dim();
    auto metric = [order_cone, delta](std::span<const double> u, std::span<const double> v) {
        Point diff(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - v[i];
        if (order_cone.contains(diff)) return DistFn::gaussian_shift(norm2(diff));
        return DistFn::scaled_gaussian(delta);
    };
    return Space("directional-gaussian", dim, metric, tnorm,
                 box ? *box : Box::cube(dim, -1.0, 1.0));
}

// ---------------------------------------------------------------------------

namespace {

/// Running minimum of margins; ties keep the earliest candidate.
struct Tracker {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::optional<AxiomWitness> witness;

    void observe(double margin, double tol, const auto& make_witness) {
        ++checks;
        if (margin < -tol) ++violations;
        if (margin < worst) {
            worst = margin;
            witness = make_witness();
        }
    }

    void merge(const Tracker& other) {
        checks += other.checks;
        violations += other.violations;
        if (other.worst < worst) {
            worst = other.worst;
            witness = other.witness;
        }
    }

    AxiomResult finish(std::string name) const {
        AxiomResult r;
        r.name = std::move(name);
        r.checks = checks;
        r.violations = violations;
        r.worst_margin = checks == 0 ? 0.0 : worst;
        r.pass = violations == 0;
        if (!r.pass) r.witness = witness;
        return r;
    }
};

}  // namespace

AxiomReport check_axioms(const Space& space, std::size_t n_points, const TimeGrid& grid,
                         double tol, std::uint64_t seed, Parallelism par) {
    if (n_points < 3) throw InvalidParameter("axiom check needs at least 3 points");
    SplitMix64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) pts.push_back(space.sample_point(rng));
    auto report = check_axioms(space, std::move(pts), grid, tol, par);
    report.seed = seed;
    return report;
}

AxiomReport check_axioms(const Space& space, std::vector<Point> points, const TimeGrid& grid,
                         double tol, Parallelism par) {
    const std::size_t n = points.size();
    if (n == 0) throw InvalidParameter("axiom check needs points");
    for (const auto& p : points)
        if (p.size() != space.dim()) throw InvalidParameter("point dimension does not match space");

    const std::size_t g = grid.size();
    const TNorm tnorm = space.tnorm();

    // Distance functions and their grid values for every ordered pair.
    std::vector<DistFn> dist;
    dist.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist.push_back(space.distance(points[i], points[j]));
    std::vector<double> val(n * n * g);
    for (std::size_t ij = 0; ij < n * n; ++ij)
        for (std::size_t a = 0; a < g; ++a) val[ij * g + a] = dist[ij].eval(grid[a]);
    auto V = [&](std::size_t i, std::size_t j, std::size_t a) { return val[(i * n + j) * g + a]; };

    AxiomReport rep;
    rep.n_points = n;
    rep.tol = tol;
    rep.grid.assign(grid.begin(), grid.end());

    Tracker ident, sym, feas;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < g; ++a)
            ident.observe(V(i, i, a) - 1.0, tol, [&] {
                return AxiomWitness{{i}, {points[i]}, grid[a], std::nullopt};
            });

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t a = 0; a < g; ++a)
                sym.observe(-std::abs(V(i, j, a) - V(j, i, a)), tol, [&] {
                    return AxiomWitness{{i, j}, {points[i], points[j]}, grid[a], std::nullopt};
                });
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const DistFn& f = dist[i * n + j];
            if (!f.is_proper()) {
                ++rep.sub_distribution_pairs;
                rep.min_upper_limit = std::min(rep.min_upper_limit, f.upper_limit());
            }
            if (i < j && points[i] != points[j]) {
                bool all_one = true;
                for (std::size_t a = 0; a < g && all_one; ++a) all_one = V(i, j, a) >= 1.0;
                if (all_one) ++rep.indistinguishable_pairs;
            }
        }
    }

    if (const auto& cone = space.point_cone()) {
        for (std::size_t i = 0; i < n; ++i) {
            double margin = std::numeric_limits<double>::infinity();
            for (const auto& nrm : cone->normals()) {
                double d = 0.0;
                for (std::size_t c = 0; c < nrm.size(); ++c) d += nrm[c] * points[i][c];
                margin = std::min(margin, d);
            }
            feas.observe(std::min(margin, 0.0), Cone::kBoundaryTol, [&] {
                return AxiomWitness{{i}, {points[i]}, 0.0, std::nullopt};
            });
        }
    }

    // Triangle inequality over all ordered triples, parallel in the first index.
    std::vector<Tracker> tri(n);
    parallel_for(n, par, [&](std::size_t i) {
        std::vector<double> far(n * g * g);  // F_{x_i, x_k}(t_a + t_b)
        for (std::size_t k = 0; k < n; ++k) {
            const DistFn& f = dist[i * n + k];
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = 0; b < g; ++b)
                    far[(k * g + a) * g + b] = f.eval(grid[a] + grid[b]);
        }
        Tracker& tr = tri[i];
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t a = 0; a < g; ++a) {
                    const double fij = V(i, j, a);
                    for (std::size_t b = 0; b < g; ++b) {
                        const double rhs = tnorm.apply(clamp_probability(fij),
                                                       clamp_probability(V(j, k, b)));
                        const double margin = far[(k * g + a) * g + b] - rhs;
                        tr.observe(margin, tol, [&] {
                            return AxiomWitness{{i, j, k},
                                                {points[i], points[j], points[k]},
                                                grid[a],
                                                grid[b]};
                        });
                    }
                }
            }
        }
    });
    Tracker triangle;
    for (const auto& t : tri) triangle.merge(t);

    rep.identity = ident.finish("identity");
    rep.symmetry = sym.finish("symmetry");
    rep.triangle = triangle.finish("triangle");
    rep.feasibility = feas.finish("cone-feasibility");
    rep.points = std::move(points);
    return rep;
}

// ---------------------------------------------------------------------------

bool tau_converged(const Space& space, std::span<const double> x, std::span<const double> y,
                   double eps) {
    if (!(eps > 0.0)) throw InvalidParameter("tau convergence needs eps > 0");
    return space.distance(x, y).eval(eps).value() > 1.0 - eps;
}

bool cauchy_window(const Space& space, std::span<const Point> pts, double eps) {
    if (!(eps > 0.0)) throw InvalidParameter("Cauchy window needs eps > 0");
    for (std::size_t m = 0; m < pts.size(); ++m)
        for (std::size_t n = m + 1; n < pts.size(); ++n)
            if (!tau_converged(space, pts[m], pts[n], eps)) return false;
    return true;
}

}  // namespace pcm
