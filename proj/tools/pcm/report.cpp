#include "report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "pcm/tnorm.hpp"

namespace pcm::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// nlohmann writes non-finite doubles as null; keep them readable instead.
json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json points_json(std::span<const Point> pts) {
    json out = json::array();
    for (const auto& p : pts) out.push_back(p);
    return out;
}

std::ofstream open(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

json to_json(const DistFn& f) {
    json j = std::visit(
        Overloaded{
            [](const DiracStep& s) { return json{{"d", num(s.d)}}; },
            [](const GaussianShift& s) { return json{{"d", num(s.d)}}; },
            [](const ScaledGaussian& s) { return json{{"delta", s.delta}}; },
            [](const Empirical& e) {
                const auto q = quantile_sketch(e);
                return json{{"n", e.size()},
                            {"quantiles",
                             {{"min", q.min}, {"p25", q.p25}, {"p50", q.p50}, {"p75", q.p75}, {"max", q.max}}}};
            },
        },
        f.base());
    j["kind"] = std::string(to_string(f.kind()));
    if (f.scale() != 1.0) j["scale"] = f.scale();
    return j;
}

json to_json(const AxiomResult& r) {
    json j{{"name", r.name},
           {"pass", r.pass},
           {"worst_margin", num(r.worst_margin)},
           {"checks", r.checks},
           {"violations", r.violations}};
    if (r.witness) {
        json w{{"indices", r.witness->indices}, {"points", points_json(r.witness->points)}, {"t", r.witness->t}};
        if (r.witness->s) w["s"] = *r.witness->s;
        j["witness"] = std::move(w);
    }
    return j;
}

json to_json(const AxiomReport& r) {
    return json{{"n_points", r.n_points},
                {"seed", r.seed},
                {"tol", r.tol},
                {"grid_size", r.grid.size()},
                {"points", points_json(r.points)},
                {"identity", to_json(r.identity)},
                {"symmetry", to_json(r.symmetry)},
                {"triangle", to_json(r.triangle)},
                {"feasibility", to_json(r.feasibility)},
                {"indistinguishable_pairs", r.indistinguishable_pairs},
                {"sub_distribution_pairs", r.sub_distribution_pairs},
                {"min_upper_limit", r.min_upper_limit},
                {"flags",
                 {{"sub_distribution", r.sub_distribution_pairs > 0},
                  {"asymmetry", !r.symmetry.pass},
                  {"identity_failure", !r.identity.pass},
                  {"triangle_failure", !r.triangle.pass}}},
                {"all_pass", r.all_pass()}};
}

json to_json(const ContractionCertificate& c) {
    json j{{"kind", std::string(to_string(c.kind))},
           {"mapping", c.mapping},
           {"alpha", c.alpha},
           {"n_pairs", c.n_pairs},
           {"grid_size", c.grid.size()},
           {"tol", c.tol},
           {"worst_margin", num(c.worst_margin)},
           {"violations", c.violations},
           {"pass", c.pass},
           {"notes", c.notes}};
    if (c.beta) j["beta"] = *c.beta;
    if (c.gamma) j["gamma"] = *c.gamma;
    if (c.witness) j["witness"] = {{"x", c.witness->x}, {"y", c.witness->y}, {"t", c.witness->t}};
    return j;
}

json to_json(const RandomKannanReport& r) {
    return json{{"alpha", r.alpha},
                {"samples", r.samples},
                {"samplewise_violations", r.samplewise_violations},
                {"violation_fraction", r.violation_fraction},
                {"samplewise_pass", r.samplewise_pass},
                {"samplewise_worst_excess", num(r.samplewise_worst_excess)},
                {"distributional", to_json(r.distributional)},
                {"notes", r.notes},
                {"pass", r.pass()}};
}

json to_json(const BoundRow& r) {
    return json{{"n", r.n}, {"m", r.m}, {"t", r.t}, {"observed", r.lhs}, {"bound", r.rhs}, {"margin", r.margin()}};
}

json to_json(const BoundCheck& b) {
    json j{{"alpha", b.alpha},
           {"tol", b.tol},
           {"grid_size", b.grid.size()},
           {"step_checks", b.step_rows.size()},
           {"step_violations", b.step_violations},
           {"chain_checks", b.chain_checks},
           {"chain_violations", b.chain_violations},
           {"holds", b.holds}};
    if (b.worst_step) j["worst_step"] = to_json(*b.worst_step);
    if (b.worst_chain) j["worst_chain"] = to_json(*b.worst_chain);
    return j;
}

json to_json(const SIEConditions& c) {
    return json{{"lipschitz", c.lipschitz},
                {"sup_k", c.sup_k},
                {"m_hat", c.m_hat},
                {"m_stderr", c.m_stderr},
                {"max_lm", c.max_lm},
                {"K", c.k_const},
                {"satisfied", c.satisfied}};
}

std::vector<double> norm_ratios(const IterationTrace& trace) {
    std::vector<double> out;
    for (std::size_t n = 0; n + 1 < trace.points.size(); ++n) {
        const double a = norm2(trace.points[n]);
        if (a > 0.0) out.push_back(norm2(trace.points[n + 1]) / a);
    }
    return out;
}

json trace_summary(const IterationTrace& trace) {
    json j{{"iterations", trace.n_iters()},
           {"stop_reason", std::string(to_string(trace.stopped))},
           {"eps", trace.eps},
           {"x0", trace.points.front()},
           {"limit", trace.last()},
           {"first_step", to_json(trace.step_dists.front())}};
    const auto ratios = norm_ratios(trace);
    if (!ratios.empty()) {
        double log_sum = 0.0;
        std::size_t used = 0;
        for (double r : ratios) {
            if (r > 0.0) {
                log_sum += std::log(r);
                ++used;
            }
        }
        json r{{"first", ratios.front()}, {"last", ratios.back()}, {"count", ratios.size()}};
        if (used > 0) r["geometric_mean"] = std::exp(log_sum / static_cast<double>(used));
        j["norm_ratio"] = std::move(r);
    }
    return j;
}

void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace, const TimeGrid& grid) {
    auto out = open(path);
    const std::size_t d = trace.points.front().size();
    out << "iter";
    for (std::size_t i = 0; i < d; ++i) out << ",x" << (i + 1);
    for (double t : grid) out << ",F(" << format_double(t) << ")";
    out << '\n';
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        out << n;
        for (double v : trace.points[n]) out << ',' << format_double(v);
        for (double t : grid) {
            out << ',';
            if (n < trace.step_dists.size()) out << format_double(trace.step_dists[n].eval(t));
        }
        out << '\n';
    }
}

void write_mean_path_csv(const std::filesystem::path& path, std::span<const double> times, const PathField& x) {
    auto out = open(path);
    out << "t,mean\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.n_paths(); ++j) s += x.at(j, i);
        out << format_double(times[i]) << ',' << format_double(s / static_cast<double>(x.n_paths())) << '\n';
    }
}

void write_residuals_csv(const std::filesystem::path& path, std::span<const double> step_norms) {
    auto out = open(path);
    out << "iteration,l2_diff\n";
    for (std::size_t m = 0; m < step_norms.size(); ++m) out << (m + 1) << ',' << format_double(step_norms[m]) << '\n';
}

void write_json(const std::filesystem::path& path, const json& doc) {
    auto out = open(path);
    out << doc.dump(2) << '\n';
}

}  // namespace pcm::cli
