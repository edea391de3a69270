#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "pcm/contract.hpp"
#include "pcm/dist.hpp"
#include "pcm/sie.hpp"
#include "pcm/solver.hpp"
#include "pcm/space.hpp"
#include "pcm/stochastic.hpp"

namespace pcm::cli {

/// Serialized form of a distribution function: the variant and its parameters;
/// for an empirical CDF the sample count and a quantile sketch.
nlohmann::json to_json(const DistFn& f);
nlohmann::json to_json(const AxiomResult& r);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const ContractionCertificate& c);
nlohmann::json to_json(const RandomKannanReport& r);
nlohmann::json to_json(const BoundRow& r);
nlohmann::json to_json(const BoundCheck& b);
nlohmann::json to_json(const SIEConditions& c);

/// Orbit summary; the full orbit goes to CSV.
nlohmann::json trace_summary(const IterationTrace& trace);

/// ||x_{n+1}|| / ||x_n|| for every step with ||x_n|| > 0.
std::vector<double> norm_ratios(const IterationTrace& trace);

/// iter, x_1..x_d, then F_{x_n, x_{n+1}}(t) for every grid t.
void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace, const TimeGrid& grid);
/// t, mean over paths of X(t).
void write_mean_path_csv(const std::filesystem::path& path, std::span<const double> times, const PathField& x);
/// iteration, L2 difference to the previous iterate.
void write_residuals_csv(const std::filesystem::path& path, std::span<const double> step_norms);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Doubles in CSV use the shortest round-trip form so files are reproducible.
std::string format_double(double v);

}  // namespace pcm::cli
