#include "pcm/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pcm/error.hpp"

namespace pcm {

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Cone Cone::orthant(std::size_t dim) {
    if (dim == 0) throw InvalidParameter("cone dimension must be positive");
    std::vector<std::vector<double>> normals(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) normals[i][i] = 1.0;
    return Cone(Type::Orthant, dim, std::move(normals));
}

Cone Cone::halfspaces(std::vector<std::vector<double>> normals) {
    if (normals.empty()) throw InvalidParameter("halfspace cone needs at least one normal");
    const std::size_t dim = normals.front().size();
    if (dim == 0) throw InvalidParameter("cone dimension must be positive");
    for (const auto& a : normals) {
        if (a.size() != dim) throw InvalidParameter("halfspace normals have mismatched dimensions");
        if (!all_finite(a)) throw InvalidParameter("halfspace normal is not finite");
    }
    return Cone(Type::Halfspaces, dim, std::move(normals));
}

void Cone::check_dim(std::span<const double> x) const {
    if (x.size() != dim_)
        throw InvalidParameter("dimension mismatch: cone has dim " + std::to_string(dim_) +
                               ", vector has " + std::to_string(x.size()));
}

bool Cone::contains(std::span<const double> x) const {
    check_dim(x);
    if (type_ == Type::Orthant) {
        for (double v : x)
            if (!(v >= -kBoundaryTol)) return false;
        return true;
    }
    for (const auto& a : normals_)
        if (!(dot(a, x) >= -kBoundaryTol)) return false;
    return true;
}

bool Cone::leq(std::span<const double> x, std::span<const double> y) const {
    check_dim(x);
    check_dim(y);
    Point diff(dim_);
    for (std::size_t i = 0; i < dim_; ++i) diff[i] = y[i] - x[i];
    return contains(diff);
}

double Cone::max_step(std::span<const double> y, std::span<const double> p) const {
    check_dim(y);
    check_dim(p);
    double lam = std::numeric_limits<double>::infinity();
    for (const auto& a : normals_) {
        const double ap = dot(a, p);
        if (ap > 0.0) lam = std::min(lam, std::max(0.0, dot(a, y)) / ap);
    }
    return lam;
}

Point Cone::sample(SplitMix64& rng, double radius, std::size_t max_attempts) const {
    Point x(dim_);
    if (type_ == Type::Orthant) {
        for (auto& v : x) v = rng.uniform(0.0, radius);
        return x;
    }
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (auto& v : x) v = rng.uniform(-radius, radius);
        if (contains(x)) return x;
    }
    throw InfeasibleSampling("infeasible sampling region: no cone member after " +
                             std::to_string(max_attempts) + " attempts");
}

NormalityResult normality_check(const Cone& cone, double n_const, std::size_t sample_count,
                                std::uint64_t seed) {
    if (!(n_const > 0.0)) throw InvalidParameter("normality constant must be > 0");
    if (sample_count == 0) throw InvalidParameter("normality check needs at least one sample");

    NormalityResult r;
    SplitMix64 rng(seed);
    for (std::size_t k = 0; k < sample_count; ++k) {
        const Point y = cone.sample(rng);
        const Point p = cone.sample(rng);
        double lam = 0.0;
        if (k > 0) {
            double cap = cone.max_step(y, p);
            if (!std::isfinite(cap)) cap = 1.0;
            lam = rng.uniform() * cap;
        }
        Point x(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] - lam * p[i];
        if (!cone.contains(x)) continue;  // rounding at the boundary

        ++r.samples;
        const double ny = norm2(y);
        if (!(ny > 0.0)) continue;
        const double ratio = norm2(x) / ny;
        if (ratio > r.worst_ratio || !r.witness_x) {
            r.worst_ratio = ratio;
            r.witness_x = x;
            r.witness_y = y;
        }
    }
    r.holds = r.worst_ratio <= n_const;
    return r;
}

}  // namespace pcm
