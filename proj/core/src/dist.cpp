#include "pcm/dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcm/error.hpp"
#include "pcm/normal.hpp"

namespace pcm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidParameter(std::string(what) + " must be finite");
}

}  // namespace

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw InvalidParameter("probability out of [0,1]: " + std::to_string(value));
}

Probability clamp_probability(double x) noexcept {
    if (!(x > 0.0)) return Probability(0.0, Probability::Unchecked{});
    if (x > 1.0) return Probability(1.0, Probability::Unchecked{});
    return Probability(x, Probability::Unchecked{});
}

std::string_view to_string(DistKind kind) noexcept {
    switch (kind) {
        case DistKind::DiracStep: return "dirac";
        case DistKind::GaussianShift: return "gaussian-shift";
        case DistKind::ScaledGaussian: return "scaled-gaussian";
        case DistKind::Empirical: return "empirical";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// TimeGrid

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidParameter("time grid must be nonempty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i] > 0.0) || !std::isfinite(points_[i]))
            throw InvalidParameter("time grid points must be positive and finite");
        if (i > 0 && !(points_[i] > points_[i - 1]))
            throw InvalidParameter("time grid must be strictly increasing");
    }
}

TimeGrid TimeGrid::log_spaced(double lo, double hi, std::size_t n) {
    if (n == 0) throw InvalidParameter("time grid size must be >= 1");
    if (!(lo > 0.0) || !(hi >= lo)) throw InvalidParameter("log grid needs 0 < lo <= hi");
    if (n == 1) return TimeGrid({lo});
    std::vector<double> pts(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    pts.front() = lo;
    pts.back() = hi;
    return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::standard() { return log_spaced(1e-3, 1e2, 50); }

// ---------------------------------------------------------------------------
// DistFn

DistFn DistFn::dirac(double d) {
    require_finite(d, "dirac jump");
    if (d < 0.0) throw InvalidParameter("dirac jump must be nonnegative");
    return DistFn(DiracStep{d});
}

DistFn DistFn::gaussian_shift(double d) {
    require_finite(d, "gaussian shift");
    return DistFn(GaussianShift{d});
}

DistFn DistFn::scaled_gaussian(double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidParameter("scaled gaussian delta must lie in (0,1]");
    return DistFn(ScaledGaussian{delta});
}

DistFn DistFn::from_samples(std::span<const double> values) {
    return from_samples(std::vector<double>(values.begin(), values.end()));
}

DistFn DistFn::from_samples(std::vector<double>&& values) {
    if (values.empty()) throw InvalidParameter("empirical distribution needs at least one sample");
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidParameter("empirical sample is not finite");
        if (v < 0.0) throw InvalidParameter("empirical sample is negative");
    }
    std::sort(values.begin(), values.end());
    return DistFn(Empirical{std::make_shared<const std::vector<double>>(std::move(values))});
}

Probability DistFn::eval(double t) const noexcept {
    const double u = scale_ == 1.0 ? t : t / scale_;
    const double v = std::visit(
        Overloaded{
            [u](const DiracStep& s) { return u > s.d ? 1.0 : 0.0; },
            [u](const GaussianShift& s) { return std_normal_cdf(u - s.d); },
            [u](const ScaledGaussian& s) { return u > 0.0 ? s.delta * std_normal_cdf(u) : 0.0; },
            [u](const Empirical& e) {
                const auto& xs = *e.samples;
                // lower_bound gives the count of samples strictly below u.
                const auto below = std::lower_bound(xs.begin(), xs.end(), u) - xs.begin();
                return static_cast<double>(below) / static_cast<double>(xs.size());
            },
        },
        base_);
    return clamp_probability(v);
}

DistFn DistFn::timescale(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("timescale factor must be > 0");
    if (const auto* s = std::get_if<DiracStep>(&base_)) return DistFn(DiracStep{s->d * scale_ * c});
    return DistFn(base_, scale_ * c);
}

double DistFn::upper_limit() const noexcept {
    if (const auto* s = std::get_if<ScaledGaussian>(&base_)) return s->delta;
    return 1.0;
}

double DistFn::default_tolerance() const noexcept {
    if (const auto* e = std::get_if<Empirical>(&base_))
        return 2.0 / std::sqrt(static_cast<double>(e->size()));
    return 0.0;
}

// ---------------------------------------------------------------------------

std::vector<double> pointwise_min(const DistFn& f, const DistFn& g, const TimeGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(std::min(f.eval(t).value(), g.eval(t).value()));
    return out;
}

Dominance dominates(const DistFn& f, const DistFn& g, const TimeGrid& grid, double tol) {
    Dominance r;
    r.worst_margin = f.eval(grid[0]) - g.eval(grid[0]);
    r.witness_t = grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double m = f.eval(grid[i]) - g.eval(grid[i]);
        if (m < r.worst_margin) {
            r.worst_margin = m;
            r.witness_t = grid[i];
        }
    }
    r.holds = r.worst_margin >= -tol;
    return r;
}

Dominance dominates(const DistFn& f, const DistFn& g, const TimeGrid& grid) {
    return dominates(f, g, grid, std::max(f.default_tolerance(), g.default_tolerance()));
}

QuantileSketch quantile_sketch(const Empirical& e) noexcept {
    const auto& xs = *e.samples;
    const std::size_t n = xs.size();
    auto rank = [&](double q) {
        // nearest-rank: ceil(q n) - 1, clamped
        auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        return xs[k == 0 ? 0 : std::min(k - 1, n - 1)];
    };
    return {xs.front(), rank(0.25), rank(0.5), rank(0.75), xs.back()};
}

}  // namespace pcm
