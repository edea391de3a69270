#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pcm/contract.hpp"
#include "pcm/error.hpp"
#include "pcm/rng.hpp"
#include "pcm/sie.hpp"
#include "pcm/solver.hpp"
#include "pcm/space.hpp"
#include "pcm/stochastic.hpp"
#include "pcm/tnorm.hpp"
#include "report.hpp"

#ifndef PCM_VERSION
#define PCM_VERSION "0.0.0"
#endif

namespace pcm::cli {

using nlohmann::json;

const char* tool_version() { return PCM_VERSION; }

namespace {

json describe(const Space& s) {
    return json{{"name", s.name()},
                {"dim", s.dim()},
                {"tnorm", std::string(to_string(s.tnorm().kind()))},
                {"point_cone", s.point_cone().has_value()}};
}

std::vector<double> alpha_list(const json& classify) {
    if (!classify.contains("alpha")) return {0.25};
    const auto& a = classify["alpha"];
    if (a.is_number()) return {a.get<double>()};
    return a.get<std::vector<double>>();
}

std::filesystem::path out_file(const RunOptions& opt, const char* name) { return *opt.out / name; }

}  // namespace

json run_axioms(const Config& cfg, const RunOptions& opt) {
    const auto space = build_space(cfg);
    const auto grid = build_grid(cfg);
    const auto n = cfg.get<std::size_t>("axioms", "n_points", 10);
    const auto tol = cfg.get<double>("axioms", "tol", 0.0);
    const auto report = check_axioms(space, n, grid, tol, opt.seed, opt.par);
    return json{{"space", describe(space)}, {"axioms", to_json(report)}};
}

json run_classify(const Config& cfg, const RunOptions& opt) {
    const auto space = build_space(cfg);
    const auto grid = build_grid(cfg);
    const auto map = build_mapping(cfg);
    const json& c = cfg.section("classify");

    std::vector<ContractionKind> kinds;
    for (const auto& k : c.value("kinds", std::vector<std::string>{"banach", "kannan", "chatterjea"}))
        kinds.push_back(*parse_contraction_kind(k));
    const auto alphas = alpha_list(c);
    const auto n_pairs = c.value("n_pairs", std::size_t{200});
    const double tol = c.value("tol", 0.0);

    json results{{"space", describe(space)}, {"mapping", map.name}, {"mapping_notes", map.notes}};
    const auto pairs = sample_pairs(space, map, n_pairs, opt.seed);

    json certs = json::array();
    json passing = json::object();
    for (auto kind : kinds) {
        const std::string kname(to_string(kind));
        passing[kname] = json::array();
        for (double a : alphas) {
            ContractionCertificate cert;
            json extra = json::object();
            switch (kind) {
                case ContractionKind::Banach:
                    cert = check_banach(space, map, a, pairs, grid, tol, opt.par);
                    break;
                case ContractionKind::Kannan:
                case ContractionKind::Chatterjea:
                    if (!(a < 0.5)) throw ConfigError("classify.alpha", kname + " needs alpha < 0.5");
                    cert = kind == ContractionKind::Kannan
                               ? check_kannan(space, map, a, pairs, grid, tol, opt.par)
                               : check_chatterjea(space, map, a, pairs, grid, tol, opt.par);
                    break;
                case ContractionKind::Zamfirescu: {
                    if (!c.contains("beta")) throw ConfigError("classify.beta", "required for zamfirescu");
                    if (!c.contains("gamma")) throw ConfigError("classify.gamma", "required for zamfirescu");
                    const double b = c["beta"].get<double>(), g = c["gamma"].get<double>();
                    try {
                        extra["delta"] = zamfirescu_delta(a, b, g);
                        extra["rate_certified"] = true;
                    } catch (const RateNotCertified& e) {
                        extra["delta"] = e.delta();
                        extra["rate_certified"] = false;
                    }
                    cert = check_zamfirescu(space, map, a, b, g, pairs, grid, tol, opt.par);
                    break;
                }
            }
            json cj = to_json(cert);
            cj.update(extra);
            if (cert.pass) passing[kname].push_back(a);
            certs.push_back(std::move(cj));
        }
    }
    results["certificates"] = std::move(certs);
    results["passing_alphas"] = std::move(passing);

    if (c.contains("random_kannan")) {
        const json& r = c["random_kannan"];
        const auto n = r.value("n_samples", std::size_t{10000});
        const double rho_max = r.value("rho_max", 0.15);
        const double rtol = r.value("tol", 2.0 / std::sqrt(static_cast<double>(n)));
        const auto ra = r.value("alphas", std::vector<double>{0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45});
        const std::vector<EnsemblePair> ens{scaled_ensemble_pair(n, space.dim(), rho_max, opt.seed)};
        const auto op = samplewise(map);
        json reports = json::array();
        json pass_list = json::array();
        for (double a : ra) {
            const auto rep = check_random_kannan(op, ens, a, grid, rtol, opt.par);
            if (rep.pass()) pass_list.push_back(a);
            reports.push_back(to_json(rep));
        }
        results["random_kannan"] = {{"n_samples", n},
                                    {"rho_max", rho_max},
                                    {"tol", rtol},
                                    {"reports", std::move(reports)},
                                    {"passing_alphas", std::move(pass_list)}};
    }
    return results;
}

json run_solve(const Config& cfg, const RunOptions& opt) {
    const auto space = build_space(cfg);
    const auto grid = build_grid(cfg);
    const auto map = build_mapping(cfg);
    if (!cfg.has("solve")) throw ConfigError("solve", "required field is missing");
    const json& s = cfg.section("solve");
    const double eps = s.value("eps", 1e-6);
    const auto max_iter = s.value("max_iter", std::size_t{10000});
    const double btol = s.value("bound_tol", 0.0);

    const auto x0 = s.at("x0").get<Point>();
    if (x0.size() != space.dim())
        throw ConfigError("solve.x0", "expected " + std::to_string(space.dim()) + " entries");
    if (!space.feasible(x0)) throw ConfigError("solve.x0", "not a feasible point of the space");

    const auto trace = picard(space, map, x0, eps, max_iter);
    const auto fixed = verify_fixed_point(space, map, trace.last(), grid, btol);

    json results{{"space", describe(space)},
                 {"mapping", map.name},
                 {"mapping_notes", map.notes},
                 {"trace", trace_summary(trace)},
                 {"converged", trace.stopped == StopReason::Converged},
                 {"fixed_point", {{"accepted", fixed.is_fixed}, {"worst", fixed.worst}}}};

    if (s.contains("alpha")) {
        const double a = s["alpha"].get<double>();
        const auto pairs = sample_pairs(space, map, 200, opt.seed);
        results["kannan_certificate"] = to_json(check_kannan(space, map, a, pairs, grid, btol, opt.par));
        results["bounds"] = to_json(check_bounds(space, trace, a, grid, btol));
    }

    if (s.contains("uniqueness")) {
        const json& u = s["uniqueness"];
        const auto n_starts = u.value("n_starts", std::size_t{10});
        const double agree = u.value("agree_tol", 1e-6);
        SplitMix64 rng(derive_seed(opt.seed, 1));
        std::vector<Point> starts;
        for (std::size_t k = 0; k < n_starts; ++k) starts.push_back(space.sample_point(rng));
        const auto probe = uniqueness_probe(space, map, starts, eps, max_iter, agree, opt.par);
        double spread = 0.0;
        for (const auto& a : probe.limits)
            for (const auto& b : probe.limits) spread = std::max(spread, distance2(a, b));
        results["uniqueness"] = {{"unique", probe.unique},
                                 {"starts", starts},
                                 {"limits", probe.limits},
                                 {"converged", probe.converged},
                                 {"iterations", probe.iterations},
                                 {"max_pairwise_distance", spread}};
    }

    if (opt.out) write_trace_csv(out_file(opt, "trace.csv"), trace, grid);
    return results;
}

json run_sie(const Config& cfg, const RunOptions& opt) {
    auto p = build_sie_problem(cfg, opt.seed);
    const json& s = cfg.section("sie");
    const double eps = s.value("eps", 1e-10);
    const auto max_iter = s.value("max_iter", std::size_t{200});

    SIESolution sol;
    try {
        p.validate();
        sol = sie_solve(p, eps, max_iter, opt.par);
    } catch (const InvalidParameter& e) {
        throw ConfigError("sie", e.what());
    }

    std::vector<double> ratios;
    for (std::size_t m = 1; m < sol.step_norms.size(); ++m)
        ratios.push_back(sol.step_norms[m - 1] > 0.0 ? sol.step_norms[m] / sol.step_norms[m - 1] : 0.0);

    const std::size_t last = p.n_times() - 1;
    double mean_end = 0.0;
    for (std::size_t j = 0; j < p.n_paths; ++j) mean_end += sol.field.at(j, last);
    mean_end /= static_cast<double>(p.n_paths);

    json results{{"problem",
                  {{"n_t", p.n_times() - 1},
                   {"n_paths", p.n_paths},
                   {"kernel", p.kernel.name},
                   {"forcing", p.forcing.name},
                   {"nonlinearity", p.nonlinearity.name},
                   {"lipschitz", p.lipschitz},
                   {"eps", eps},
                   {"max_iter", max_iter}}},
                 {"conditions", to_json(sol.conditions)},
                 {"converged", sol.converged},
                 {"iterations", sol.iterations},
                 {"step_norms", sol.step_norms},
                 {"step_ratios", ratios},
                 {"nonnegative", sol.nonnegative},
                 {"warnings", sol.warnings},
                 {"mean_at_t1", mean_end}};

    // Closed forms for a constant kernel c: X = h e^{c a t} when f = a x, and
    // X = h + c b t when f = b.
    const json& k = s["kernel"];
    const json& f = s["nonlinearity"];
    if (k["type"] == "constant") {
        const double c = k.value("c", 1.0);
        const bool linear = f["type"] == "linear";
        const double coef = linear ? f["a"].get<double>() : f["c"].get<double>();
        double worst = 0.0;
        for (std::size_t j = 0; j < p.n_paths; ++j) {
            const double h = p.forcing.eval(0.0, j);
            for (std::size_t i = 0; i < p.n_times(); ++i) {
                const double t = p.times[i];
                const double exact = linear ? h * std::exp(c * coef * t) : h + c * coef * t;
                worst = std::max(worst, std::abs(sol.field.at(j, i) - exact));
            }
        }
        results["closed_form"] = {{"formula", linear ? "h exp(c a t)" : "h + c b t"}, {"max_abs_error", worst}};
    }

    if (opt.out) {
        write_mean_path_csv(out_file(opt, "sie_mean_path.csv"), p.times, sol.field);
        write_residuals_csv(out_file(opt, "sie_residuals.csv"), sol.step_norms);
    }
    return results;
}

std::vector<DemoExperiment> demo_experiments() {
    const json dirac = {{"distance", "dirac"}, {"dim", 2}, {"tnorm", "min"}};
    const json rotation = {{"distance", "directional-gaussian"},
                           {"dim", 2},
                           {"tnorm", "min"},
                           {"delta", 0.5},
                           {"cone", {{"type", "orthant"}}}};
    const json sweep = {0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
    return {
        {"menger-axioms", "axioms", {{"space", dirac}, {"axioms", {{"n_points", 10}}}}},
        {"rotation-space-axioms", "axioms", {{"space", rotation}, {"axioms", {{"n_points", 10}}}}},
        {"rotation-classify",
         "classify",
         {{"space", rotation},
          {"mapping", "rotation-half"},
          {"classify",
           {{"kinds", {"kannan", "chatterjea"}},
            {"alpha", sweep},
            {"n_pairs", 200},
            {"random_kannan", {{"n_samples", 10000}, {"rho_max", 0.15}, {"alphas", sweep}}}}}}},
        {"rotation-solve",
         "solve",
         {{"space", dirac},
          {"mapping", "rotation-half"},
          {"solve",
           {{"x0", {1.0, 0.0}},
            {"eps", 1e-10},
            {"max_iter", 1000},
            {"uniqueness", {{"n_starts", 10}, {"agree_tol", 1e-6}}}}}}},
        {"sie-linear",
         "sie",
         {{"sie",
           {{"n_t", 1000},
            {"kernel", {{"type", "constant"}, {"c", 1.0}}},
            {"forcing", {{"type", "constant"}, {"c", 1.0}}},
            {"nonlinearity", {{"type", "linear"}, {"a", 0.4}}}}}}},
        {"sie-stochastic",
         "sie",
         {{"sie",
           {{"n_t", 1000},
            {"n_paths", 1000},
            {"kernel", {{"type", "constant"}, {"c", 1.0}}},
            {"forcing", {{"type", "random-normal"}, {"mean", 1.0}, {"sd", 0.1}}},
            {"nonlinearity", {{"type", "linear"}, {"a", 0.4}}}}}}},
    };
}

namespace {

json dispatch(const std::string& command, const Config& cfg, const RunOptions& opt) {
    if (command == "axioms") return run_axioms(cfg, opt);
    if (command == "classify") return run_classify(cfg, opt);
    if (command == "solve") return run_solve(cfg, opt);
    if (command == "sie") return run_sie(cfg, opt);
    throw std::invalid_argument("unknown command " + command);
}

json envelope(const std::string& command, std::uint64_t seed, json config, json results, double wall) {
    return json{{"tool", kToolName},
                {"version", tool_version()},
                {"command", command},
                {"seed", seed},
                {"config", std::move(config)},
                {"results", std::move(results)},
                {"wall_time_s", wall}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

json run_demo(const RunOptions& opt) {
    json out = json::array();
    for (const auto& e : demo_experiments()) {
        RunOptions sub = opt;
        if (opt.out) sub.out = *opt.out / e.name;
        const Config cfg(e.config);
        json results = dispatch(e.command, cfg, sub);
        if (sub.out) write_json(*sub.out / (e.command + ".json"), results);
        out.push_back({{"name", e.name}, {"command", e.command}, {"config", e.config}, {"results", std::move(results)}});
    }
    return json{{"experiments", std::move(out)}};
}

json run_command(const std::string& command, const Config& cfg, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    json results = dispatch(command, cfg, opt);
    json report = envelope(command, opt.seed, cfg.doc(), std::move(results), seconds_since(t0));
    if (opt.out) write_json(*opt.out / (command + ".json"), report);
    return report;
}

json run_demo_report(const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    json results = run_demo(opt);
    json report = envelope("demo", opt.seed, json::object(), std::move(results), seconds_since(t0));
    if (opt.out) write_json(*opt.out / "demo.json", report);
    return report;
}

json strip_wall_time(json report) {
    report.erase("wall_time_s");
    return report;
}

}  // namespace pcm::cli
