#include "pcm/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pcm/error.hpp"
#include "pcm/parallel.hpp"
#include "pcm/rng.hpp"

namespace pcm {

Ensemble::Ensemble(std::size_t n, std::size_t dim, std::vector<double> data,
                   std::optional<Cone> cone, std::uint64_t seed)
    : n_(n), dim_(dim), data_(std::move(data)), cone_(std::move(cone)), seed_(seed) {
    if (n_ == 0 || dim_ == 0) throw InvalidParameter("ensemble needs N >= 1 and d >= 1");
    if (data_.size() != n_ * dim_) throw InvalidParameter("ensemble data is not N x d");
    if (!all_finite(data_)) throw InvalidParameter("ensemble has non-finite entries");
    if (cone_) {
        if (cone_->dim() != dim_) throw InvalidParameter("ensemble cone dimension mismatch");
        for (std::size_t j = 0; j < n_; ++j)
            if (!cone_->contains(sample(j)))
                throw InvalidParameter("ensemble sample " + std::to_string(j) +
                                       " lies outside the declared cone");
    }
}

Ensemble RandomOperator::apply(const Ensemble& x, Parallelism par) const {
    const std::size_t d = x.dim();
    std::vector<double> out(x.size() * d);
    parallel_for(x.size(), par, [&](std::size_t j) {
        const Point v = fn(j, x.sample(j));
        if (v.size() != d) throw InvalidParameter("random operator changed the dimension");
        std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(j * d));
    });
    return Ensemble(x.size(), d, std::move(out), std::nullopt, x.seed());
}

RandomOperator samplewise(Mapping map) {
    std::string name = "samplewise(" + map.name + ")";
    auto notes = map.notes;
    auto fn = [m = std::move(map)](std::size_t, std::span<const double> v) { return m(v); };
    return RandomOperator{std::move(name), fn, std::move(notes)};
}

namespace {

void require_same_shape(const Ensemble& x, const Ensemble& y) {
    if (x.size() != y.size() || x.dim() != y.dim())
        throw InvalidParameter("ensembles have different shapes");
}

std::vector<double> samplewise_distances(const Ensemble& x, const Ensemble& y) {
    require_same_shape(x, y);
    std::vector<double> d(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) d[j] = distance2(x.sample(j), y.sample(j));
    return d;
}

}  // namespace

DistFn empirical_metric(const Ensemble& x, const Ensemble& y) {
    return DistFn::from_samples(samplewise_distances(x, y));
}

EnsemblePair scaled_ensemble_pair(std::size_t n, std::size_t dim, double rho_max,
                                  std::uint64_t seed, double radius) {
    if (!(rho_max >= 0.0) || !(radius > 0.0))
        throw InvalidParameter("scaled ensemble needs rho_max >= 0 and radius > 0");
    std::vector<double> xs(n * dim), ys(n * dim);
    for (std::size_t j = 0; j < n; ++j) {
        SplitMix64 rng(derive_seed(seed, j));
        const double rho = rng.uniform(0.0, rho_max);
        for (std::size_t c = 0; c < dim; ++c) {
            const double v = rng.uniform(0.0, radius);
            xs[j * dim + c] = v;
            ys[j * dim + c] = (1.0 + rho) * v;
        }
    }
    const Cone orthant = Cone::orthant(dim);
    return {Ensemble(n, dim, std::move(xs), orthant, seed),
            Ensemble(n, dim, std::move(ys), orthant, seed)};
}

RandomKannanReport check_random_kannan(const RandomOperator& op,
                                       std::span<const EnsemblePair> pairs, double alpha,
                                       const TimeGrid& grid, double tol, Parallelism par) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidParameter("kannan alpha must lie in (0, 1/2)");
    if (pairs.empty()) throw InvalidParameter("random kannan check needs ensemble pairs");

    RandomKannanReport rep;
    rep.alpha = alpha;
    rep.notes = op.notes;
    rep.notes.emplace_back(
        "the almost-sure inequality yields the distributional bound at argument t/alpha; "
        "the checked form uses t/(2 alpha), which it implies for alpha < 1/2");
    rep.samplewise_worst_excess = -std::numeric_limits<double>::infinity();

    ContractionCertificate& cert = rep.distributional;
    cert.kind = ContractionKind::Kannan;
    cert.mapping = op.name;
    cert.alpha = alpha;
    cert.n_pairs = pairs.size();
    cert.grid.assign(grid.begin(), grid.end());
    cert.tol = tol;
    cert.worst_margin = std::numeric_limits<double>::infinity();

    // Floating-point slack on the samplewise comparison.
    constexpr double kRelSlack = 1e-12;

    for (const auto& p : pairs) {
        require_same_shape(p.x, p.y);
        const Ensemble tx = op.apply(p.x, par);
        const Ensemble ty = op.apply(p.y, par);
        const auto d_txty = samplewise_distances(tx, ty);
        const auto d_xtx = samplewise_distances(p.x, tx);
        const auto d_yty = samplewise_distances(p.y, ty);

        for (std::size_t j = 0; j < d_txty.size(); ++j) {
            const double rhs = alpha * std::max(d_xtx[j], d_yty[j]);
            const double excess = d_txty[j] - rhs;
            rep.samplewise_worst_excess = std::max(rep.samplewise_worst_excess, excess);
            if (excess > kRelSlack * std::max(1.0, rhs)) ++rep.samplewise_violations;
        }
        rep.samples += d_txty.size();

        const DistFn f_txty = DistFn::from_samples(d_txty);
        const DistFn f_xtx = DistFn::from_samples(d_xtx);
        const DistFn f_yty = DistFn::from_samples(d_yty);
        for (double t : grid) {
            const double u = t / (2.0 * alpha);
            const double m = f_txty.eval(t) - std::min(f_xtx.eval(u).value(), f_yty.eval(u).value());
            if (m < -tol) ++cert.violations;
            if (m < cert.worst_margin) {
                cert.worst_margin = m;
                cert.witness = ContractionWitness{{}, {}, t};
            }
        }
    }
    rep.violation_fraction =
        static_cast<double>(rep.samplewise_violations) / static_cast<double>(rep.samples);
    rep.samplewise_pass = rep.samplewise_violations == 0;
    cert.pass = cert.worst_margin >= -tol;
    if (cert.pass) cert.witness.reset();
    cert.notes = rep.notes;
    return rep;
}

}  // namespace pcm
