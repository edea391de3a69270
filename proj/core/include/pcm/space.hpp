#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcm/cone.hpp"
#include "pcm/dist.hpp"
#include "pcm/rng.hpp"
#include "pcm/tnorm.hpp"
#include "pcm/types.hpp"

namespace pcm {

/// Distance map X x X -> distribution functions. Must be pure.
using DistanceMap = std::function<DistFn(std::span<const double>, std::span<const double>)>;

/// A probabilistic cone metric space over R^d.
///
/// `point_cone`, when set, is the feasible region for points (x in P); random
/// points are drawn uniformly from `sampling_box`, intersected with the cone.
class Space {
public:
    Space(std::string name, std::size_t dim, DistanceMap distance, TNorm tnorm, Box sampling_box,
          std::optional<Cone> point_cone = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return dim_; }
    TNorm tnorm() const noexcept { return tnorm_; }
    const Box& sampling_box() const noexcept { return box_; }
    const std::optional<Cone>& point_cone() const noexcept { return cone_; }

    DistFn distance(std::span<const double> x, std::span<const double> y) const {
        return distance_(x, y);
    }

    bool feasible(std::span<const double> x) const;

    /// Uniform in the box, rejection against the cone; throws InfeasibleSampling
    /// after 1e5 attempts.
    Point sample_point(SplitMix64& rng) const;

private:
    std::string name_;
    std::size_t dim_;
    DistanceMap distance_;
    TNorm tnorm_;
    Box box_;
    std::optional<Cone> cone_;
};

/// Menger embedding of (R^d, Euclidean): F_{x,y} = DiracStep{||x - y||}.
/// The default sampling box is [-1, 1]^d.
Space dirac_space(std::size_t dim, TNorm tnorm = TNorm{}, std::optional<Box> box = std::nullopt,
                  std::optional<Cone> point_cone = std::nullopt);

/// The directional Gaussian space on R^d with order cone P:
///   F_{u,v}(t) = Phi(t - ||u - v||)  if u - v in P,
///                delta * Phi(t)      otherwise.
Space directional_gaussian_space(const Cone& order_cone, double delta, TNorm tnorm = TNorm{},
                                 std::optional<Box> box = std::nullopt);

// ---------------------------------------------------------------------------
// Axiom verification

struct AxiomWitness {
    std::vector<std::size_t> indices;  ///< point indices (1, 2 or 3 of them)
    std::vector<Point> points;
    double t = 0.0;
    std::optional<double> s;  ///< second time for the triangle axiom
};

struct AxiomResult {
    std::string name;
    bool pass = true;
    double worst_margin = 0.0;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::optional<AxiomWitness> witness;  ///< present iff !pass
};

struct AxiomReport {
    std::size_t n_points = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<double> grid;
    std::vector<Point> points;

    AxiomResult identity;       ///< F_{x,x}(t) = 1
    AxiomResult symmetry;       ///< F_{x,y} = F_{y,x}
    AxiomResult triangle;       ///< F_{x,z}(t+s) >= T(F_{x,y}(t), F_{y,z}(s))
    AxiomResult feasibility;    ///< points lie in the point cone

    /// Pairs of distinct points whose distance is 1 on the whole grid. The grid
    /// cannot separate them; reported, not counted as a failure.
    std::size_t indistinguishable_pairs = 0;
    /// Ordered pairs whose distance function is a sub-distribution (limit < 1).
    std::size_t sub_distribution_pairs = 0;
    double min_upper_limit = 1.0;

    bool all_pass() const noexcept {
        return identity.pass && symmetry.pass && triangle.pass && feasibility.pass;
    }
};

/// Samples n_points points and checks the axioms: identity on every point,
/// symmetry on every ordered pair, the triangle inequality on every ordered
/// triple over grid x grid, and point-cone feasibility.
AxiomReport check_axioms(const Space& space, std::size_t n_points, const TimeGrid& grid,
                         double tol, std::uint64_t seed, Parallelism par = {});

/// Same checks on caller-supplied points.
AxiomReport check_axioms(const Space& space, std::vector<Point> points, const TimeGrid& grid,
                         double tol, Parallelism par = {});

// ---------------------------------------------------------------------------
// Convergence detectors

/// F_{x,y}(eps) > 1 - eps. Throws InvalidParameter unless eps > 0.
bool tau_converged(const Space& space, std::span<const double> x, std::span<const double> y,
                   double eps);

/// tau_converged for every pair in the window.
bool cauchy_window(const Space& space, std::span<const Point> pts, double eps);

}  // namespace pcm
