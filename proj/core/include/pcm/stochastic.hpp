#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcm/cone.hpp"
#include "pcm/contract.hpp"
#include "pcm/dist.hpp"
#include "pcm/mappings.hpp"
#include "pcm/types.hpp"

namespace pcm {

/// N draws X(omega_1..N) of a random point in R^d, stored row-major.
class Ensemble {
public:
    /// Throws InvalidParameter if N or d is zero, data is not N*d long, any
    /// entry is non-finite, or (when given) a sample lies outside the cone.
    Ensemble(std::size_t n, std::size_t dim, std::vector<double> data,
             std::optional<Cone> cone = std::nullopt, std::uint64_t seed = 0);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::optional<Cone>& cone() const noexcept { return cone_; }

    std::span<const double> sample(std::size_t j) const noexcept {
        return {data_.data() + j * dim_, dim_};
    }
    std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t n_;
    std::size_t dim_;
    std::vector<double> data_;
    std::optional<Cone> cone_;
    std::uint64_t seed_;
};

/// Samplewise map (omega index, X(omega)) -> (TX)(omega).
struct RandomOperator {
    std::string name;
    std::function<Point(std::size_t, std::span<const double>)> fn;
    std::vector<std::string> notes;

    /// Applies the operator to every sample; the result carries no cone.
    Ensemble apply(const Ensemble& x, Parallelism par = {}) const;
};

/// The same deterministic map on every sample.
RandomOperator samplewise(Mapping map);

/// F_{X,Y}(t) = fraction of samples with ||X_j - Y_j|| < t.
DistFn empirical_metric(const Ensemble& x, const Ensemble& y);

struct EnsemblePair {
    Ensemble x;
    Ensemble y;
};

/// X_j uniform in [0, radius]^d (orthant samples), Y_j = (1 + rho_j) X_j with
/// rho_j uniform in [0, rho_max]. Sample j draws from its own derived stream.
EnsemblePair scaled_ensemble_pair(std::size_t n, std::size_t dim, double rho_max,
                                  std::uint64_t seed, double radius = 1.0);

struct RandomKannanReport {
    double alpha = 0.0;
    std::size_t samples = 0;
    std::size_t samplewise_violations = 0;
    double violation_fraction = 0.0;
    bool samplewise_pass = true;
    /// Largest ||TX - TY|| - alpha max{||X - TX||, ||Y - TY||} over all samples.
    double samplewise_worst_excess = 0.0;
    /// Kannan condition on the empirical metrics, one certificate over all pairs.
    ContractionCertificate distributional;
    std::vector<std::string> notes;

    bool pass() const noexcept { return samplewise_pass && distributional.pass; }
};

/// (a) ||TX - TY|| <= alpha max{||X - TX||, ||Y - TY||} per sample;
/// (b) F_{TX,TY}(t) >= min{F_{X,TX}(t / 2a), F_{Y,TY}(t / 2a)} - tol on the grid.
RandomKannanReport check_random_kannan(const RandomOperator& op,
                                       std::span<const EnsemblePair> pairs, double alpha,
                                       const TimeGrid& grid, double tol, Parallelism par = {});

}  // namespace pcm
