#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcm/mappings.hpp"
#include "pcm/space.hpp"

namespace pcm {

enum class ContractionKind { Banach, Kannan, Chatterjea, Zamfirescu };

std::string_view to_string(ContractionKind kind) noexcept;
std::optional<ContractionKind> parse_contraction_kind(std::string_view name) noexcept;

struct PointPair {
    Point x;
    Point y;
};

/// n_pairs test pairs for the contraction checkers. Indices i = 4q + r with
/// r = 0, 1 give independent (x, y) draws, r = 2 the diagonal (x, x) and r = 3
/// the orbit pair (x, Tx).
std::vector<PointPair> sample_pairs(const Space& space, const Mapping& map, std::size_t n_pairs,
                                    std::uint64_t seed);

struct ContractionWitness {
    Point x;
    Point y;
    double t = 0.0;
};

struct ContractionCertificate {
    ContractionKind kind = ContractionKind::Banach;
    std::string mapping;
    double alpha = 0.0;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::size_t n_pairs = 0;
    std::vector<double> grid;
    double tol = 0.0;
    double worst_margin = 0.0;
    std::size_t violations = 0;
    std::optional<ContractionWitness> witness;  ///< present iff !pass
    bool pass = true;
    std::vector<std::string> notes;
};

/// F_{Tx,Ty}(t) >= F_{x,y}(t / alpha), 0 < alpha < 1.
ContractionCertificate check_banach(const Space& space, const Mapping& map, double alpha,
                                    std::span<const PointPair> pairs, const TimeGrid& grid,
                                    double tol, Parallelism par = {});

/// F_{Tx,Ty}(t) >= min{F_{x,Tx}(t / 2a), F_{y,Ty}(t / 2a)}, 0 < alpha < 1/2.
ContractionCertificate check_kannan(const Space& space, const Mapping& map, double alpha,
                                    std::span<const PointPair> pairs, const TimeGrid& grid,
                                    double tol, Parallelism par = {});

/// F_{Tx,Ty}(t) >= min{F_{x,Ty}(t / 2a), F_{y,Tx}(t / 2a)}, 0 < alpha < 1/2.
ContractionCertificate check_chatterjea(const Space& space, const Mapping& map, double alpha,
                                        std::span<const PointPair> pairs, const TimeGrid& grid,
                                        double tol, Parallelism par = {});

/// At each (x, y, t) at least one of the Banach (alpha), Kannan (beta) and
/// Chatterjea (gamma) inequalities holds; the margin is the largest clause margin.
ContractionCertificate check_zamfirescu(const Space& space, const Mapping& map, double alpha,
                                        double beta, double gamma,
                                        std::span<const PointPair> pairs, const TimeGrid& grid,
                                        double tol, Parallelism par = {});

/// max{alpha, 2 beta / (1 - beta), 2 gamma / (1 - gamma)}.
/// Throws RateNotCertified when the result is >= 1.
double zamfirescu_delta(double alpha, double beta, double gamma);

}  // namespace pcm
