#include "pcm/contract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcm/error.hpp"
#include "pcm/parallel.hpp"

namespace pcm {

std::string_view to_string(ContractionKind kind) noexcept {
    switch (kind) {
        case ContractionKind::Banach: return "banach";
        case ContractionKind::Kannan: return "kannan";
        case ContractionKind::Chatterjea: return "chatterjea";
        case ContractionKind::Zamfirescu: return "zamfirescu";
    }
    return "unknown";
}

std::optional<ContractionKind> parse_contraction_kind(std::string_view name) noexcept {
    if (name == "banach") return ContractionKind::Banach;
    if (name == "kannan") return ContractionKind::Kannan;
    if (name == "chatterjea") return ContractionKind::Chatterjea;
    if (name == "zamfirescu") return ContractionKind::Zamfirescu;
    return std::nullopt;
}

std::vector<PointPair> sample_pairs(const Space& space, const Mapping& map, std::size_t n_pairs,
                                    std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<PointPair> pairs;
    pairs.reserve(n_pairs);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        Point x = space.sample_point(rng);
        switch (i % 4) {
            case 2: pairs.push_back({x, x}); break;
            case 3: {
                Point tx = map(x);
                pairs.push_back({std::move(x), std::move(tx)});
                break;
            }
            default: {
                Point y = space.sample_point(rng);
                pairs.push_back({std::move(x), std::move(y)});
            }
        }
    }
    return pairs;
}

namespace {

void require_open(double v, double lo, double hi, const char* name) {
    if (!(v > lo && v < hi))
        throw InvalidParameter(std::string(name) + " must lie in (" + std::to_string(lo) + ", " +
                               std::to_string(hi) + ")");
}

/// Distances a pair contributes to any of the four conditions.
struct PairDists {
    DistFn txty, xy, xtx, yty, xty, ytx;
};

PairDists pair_dists(const Space& s, const Mapping& map, const PointPair& p) {
    const Point tx = map(p.x);
    const Point ty = map(p.y);
    return {s.distance(tx, ty), s.distance(p.x, p.y), s.distance(p.x, tx),
            s.distance(p.y, ty), s.distance(p.x, ty), s.distance(p.y, tx)};
}

double banach_margin(const PairDists& d, double alpha, double t) {
    return d.txty.eval(t) - d.xy.eval(t / alpha);
}

double kannan_margin(const PairDists& d, double alpha, double t) {
    const double u = t / (2.0 * alpha);
    return d.txty.eval(t) - std::min(d.xtx.eval(u).value(), d.yty.eval(u).value());
}

double chatterjea_margin(const PairDists& d, double alpha, double t) {
    const double u = t / (2.0 * alpha);
    return d.txty.eval(t) - std::min(d.xty.eval(u).value(), d.ytx.eval(u).value());
}

struct PairResult {
    double worst = std::numeric_limits<double>::infinity();
    double t = 0.0;
    std::size_t violations = 0;
};

template <class MarginFn>
ContractionCertificate run_check(ContractionKind kind, const Space& space, const Mapping& map,
                                 std::span<const PointPair> pairs, const TimeGrid& grid,
                                 double tol, Parallelism par, MarginFn margin) {
    std::vector<PairResult> results(pairs.size());
    parallel_for(pairs.size(), par, [&](std::size_t i) {
        const PairDists d = pair_dists(space, map, pairs[i]);
        PairResult& r = results[i];
        for (double t : grid) {
            const double m = margin(d, t);
            if (m < -tol) ++r.violations;
            if (m < r.worst) {
                r.worst = m;
                r.t = t;
            }
        }
    });

    ContractionCertificate c;
    c.kind = kind;
    c.mapping = map.name;
    c.n_pairs = pairs.size();
    c.grid.assign(grid.begin(), grid.end());
    c.tol = tol;
    c.notes = map.notes;
    c.worst_margin = pairs.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        c.violations += results[i].violations;
        if (results[i].worst < c.worst_margin) {
            c.worst_margin = results[i].worst;
            worst_index = i;
        }
    }
    c.pass = c.worst_margin >= -tol;
    if (!c.pass)
        c.witness = ContractionWitness{pairs[worst_index].x, pairs[worst_index].y,
                                       results[worst_index].t};
    return c;
}

}  // namespace

ContractionCertificate check_banach(const Space& space, const Mapping& map, double alpha,
                                    std::span<const PointPair> pairs, const TimeGrid& grid,
                                    double tol, Parallelism par) {
    require_open(alpha, 0.0, 1.0, "banach alpha");
    auto c = run_check(ContractionKind::Banach, space, map, pairs, grid, tol, par,
                       [alpha](const PairDists& d, double t) { return banach_margin(d, alpha, t); });
    c.alpha = alpha;
    return c;
}

ContractionCertificate check_kannan(const Space& space, const Mapping& map, double alpha,
                                    std::span<const PointPair> pairs, const TimeGrid& grid,
                                    double tol, Parallelism par) {
    require_open(alpha, 0.0, 0.5, "kannan alpha");
    auto c = run_check(ContractionKind::Kannan, space, map, pairs, grid, tol, par,
                       [alpha](const PairDists& d, double t) { return kannan_margin(d, alpha, t); });
    c.alpha = alpha;
    return c;
}

ContractionCertificate check_chatterjea(const Space& space, const Mapping& map, double alpha,
                                        std::span<const PointPair> pairs, const TimeGrid& grid,
                                        double tol, Parallelism par) {
    require_open(alpha, 0.0, 0.5, "chatterjea alpha");
    auto c = run_check(
        ContractionKind::Chatterjea, space, map, pairs, grid, tol, par,
        [alpha](const PairDists& d, double t) { return chatterjea_margin(d, alpha, t); });
    c.alpha = alpha;
    return c;
}

ContractionCertificate check_zamfirescu(const Space& space, const Mapping& map, double alpha,
                                        double beta, double gamma,
                                        std::span<const PointPair> pairs, const TimeGrid& grid,
                                        double tol, Parallelism par) {
    require_open(alpha, 0.0, 1.0, "zamfirescu alpha");
    require_open(beta, 0.0, 0.5, "zamfirescu beta");
    require_open(gamma, 0.0, 0.5, "zamfirescu gamma");
    auto c = run_check(ContractionKind::Zamfirescu, space, map, pairs, grid, tol, par,
                       [=](const PairDists& d, double t) {
                           return std::max({banach_margin(d, alpha, t), kannan_margin(d, beta, t),
                                            chatterjea_margin(d, gamma, t)});
                       });
    c.alpha = alpha;
    c.beta = beta;
    c.gamma = gamma;
    return c;
}

double zamfirescu_delta(double alpha, double beta, double gamma) {
    require_open(alpha, 0.0, 1.0, "zamfirescu alpha");
    require_open(beta, 0.0, 0.5, "zamfirescu beta");
    require_open(gamma, 0.0, 0.5, "zamfirescu gamma");
    const double delta =
        std::max({alpha, 2.0 * beta / (1.0 - beta), 2.0 * gamma / (1.0 - gamma)});
    if (delta >= 1.0) throw RateNotCertified(delta);
    return delta;
}

}  // namespace pcm
