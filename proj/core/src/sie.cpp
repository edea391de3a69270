#include "pcm/sie.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcm/error.hpp"
#include "pcm/parallel.hpp"
#include "pcm/rng.hpp"

namespace pcm {

Kernel constant_kernel(double c) {
    std::ostringstream name;
    name << "constant:" << c;
    return Kernel{name.str(), [c](double, double, std::size_t) { return c; },
                  [c](double, std::size_t) { return c; }, [](double, std::size_t) { return 1.0; }};
}

Kernel exp_decay_kernel() {
    return Kernel{"exp-decay", [](double t, double s, std::size_t) { return std::exp(-(t - s)); },
                  [](double t, std::size_t) { return std::exp(-t); },
                  [](double s, std::size_t) { return std::exp(s); }};
}

Forcing constant_forcing(double c) {
    std::ostringstream name;
    name << "constant:" << c;
    return Forcing{name.str(), [c](double, std::size_t) { return c; }};
}

double path_normal(std::uint64_t seed, std::size_t path) {
    SplitMix64 rng(derive_seed(seed, path));
    return rng.normal();
}

Forcing random_normal_forcing(double mean, double sd, std::uint64_t seed) {
    std::ostringstream name;
    name << "random-normal:" << mean << ',' << sd;
    return Forcing{name.str(), [=](double, std::size_t j) { return mean + sd * path_normal(seed, j); }};
}

Nonlinearity linear_nonlinearity(double a) {
    std::ostringstream name;
    name << "linear:" << a;
    return Nonlinearity{name.str(), [a](double, double x) { return a * x; }, std::abs(a)};
}

Nonlinearity constant_nonlinearity(double c) {
    std::ostringstream name;
    name << "constant:" << c;
    return Nonlinearity{name.str(), [c](double, double) { return c; }, 0.0};
}

SIEProblem SIEProblem::uniform(std::size_t n_steps, Kernel k, Forcing h, Nonlinearity f,
                               std::size_t n_paths, std::uint64_t seed) {
    if (n_steps == 0) throw InvalidParameter("SIE grid needs at least one step");
    SIEProblem p;
    p.times.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
        p.times[i] = static_cast<double>(i) / static_cast<double>(n_steps);
    p.lipschitz = f.lipschitz;
    p.kernel = std::move(k);
    p.forcing = std::move(h);
    p.nonlinearity = std::move(f);
    p.n_paths = n_paths;
    p.seed = seed;
    return p;
}

void SIEProblem::validate() const {
    if (times.size() < 2) throw InvalidParameter("SIE grid needs at least two times");
    if (times.front() != 0.0) throw InvalidParameter("SIE grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw InvalidParameter("SIE grid must be increasing");
    if (!(lipschitz >= 0.0)) throw InvalidParameter("Lipschitz constant must be >= 0");
    if (n_paths == 0) throw InvalidParameter("SIE needs at least one path");
    if (!kernel.eval || !forcing.eval || !nonlinearity.eval)
        throw InvalidParameter("SIE problem is missing kernel, forcing or nonlinearity");
}

std::vector<double> trapezoid_weights(std::span<const double> times) {
    std::vector<double> w(times.size(), 0.0);
    for (std::size_t l = 0; l + 1 < times.size(); ++l) {
        const double h = times[l + 1] - times[l];
        w[l] += 0.5 * h;
        w[l + 1] += 0.5 * h;
    }
    return w;
}

double l2_norm(std::span<const double> weights, const PathField& x) {
    double total = 0.0;
    for (std::size_t j = 0; j < x.n_paths(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.n_times(); ++i) s += weights[i] * x.at(j, i) * x.at(j, i);
        total += s;
    }
    return std::sqrt(total / static_cast<double>(x.n_paths()));
}

double l2_distance(std::span<const double> weights, const PathField& x, const PathField& y) {
    double total = 0.0;
    for (std::size_t j = 0; j < x.n_paths(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.n_times(); ++i) {
            const double d = x.at(j, i) - y.at(j, i);
            s += weights[i] * d * d;
        }
        total += s;
    }
    return std::sqrt(total / static_cast<double>(x.n_paths()));
}

PathField sie_forcing(const SIEProblem& p, Parallelism par) {
    p.validate();
    PathField h(p.n_paths, p.n_times());
    parallel_for(p.n_paths, par, [&](std::size_t j) {
        for (std::size_t i = 0; i < p.n_times(); ++i) h.at(j, i) = p.forcing.eval(p.times[i], j);
    });
    return h;
}

PathField sie_apply(const SIEProblem& p, const PathField& x, Parallelism par) {
    p.validate();
    const std::size_t n = p.n_times();
    if (x.n_paths() != p.n_paths || x.n_times() != n)
        throw InvalidParameter("path field shape does not match the problem");
    const auto& ts = p.times;

    PathField out(p.n_paths, n);
    parallel_for(p.n_paths, par, [&](std::size_t j) {
        std::vector<double> fx(n);
        for (std::size_t l = 0; l < n; ++l) fx[l] = p.nonlinearity.eval(ts[l], x.at(j, l));

        if (p.kernel.separable()) {
            // integral_i = outer(t_i) * sum over intervals of trapezoid(inner * f)
            double acc = 0.0;
            double prev = p.kernel.inner(ts[0], j) * fx[0];
            out.at(j, 0) = p.forcing.eval(ts[0], j);
            for (std::size_t i = 1; i < n; ++i) {
                const double cur = p.kernel.inner(ts[i], j) * fx[i];
                acc += 0.5 * (ts[i] - ts[i - 1]) * (prev + cur);
                prev = cur;
                out.at(j, i) = p.forcing.eval(ts[i], j) + p.kernel.outer(ts[i], j) * acc;
            }
        } else {
            std::vector<double> g(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t l = 0; l <= i; ++l) g[l] = p.kernel.eval(ts[i], ts[l], j) * fx[l];
                double acc = 0.0;
                for (std::size_t l = 0; l < i; ++l) acc += 0.5 * (ts[l + 1] - ts[l]) * (g[l] + g[l + 1]);
                out.at(j, i) = p.forcing.eval(ts[i], j) + acc;
            }
        }
    });
    if (!all_finite(out.data())) throw DivergenceError("SIE iterate is not finite", 0);
    return out;
}

SIEConditions sie_conditions(const SIEProblem& p, Parallelism par) {
    p.validate();
    const std::size_t n = p.n_times();
    const auto& ts = p.times;
    std::vector<double> sup_k(p.n_paths, 0.0), m(p.n_paths, 0.0);

    parallel_for(p.n_paths, par, [&](std::size_t j) {
        double sup = 0.0, mj = 0.0;
        if (p.kernel.separable()) {
            double acc = 0.0, inner_max = 0.0;
            double prev = std::abs(p.kernel.inner(ts[0], j));
            inner_max = prev;
            sup = std::abs(p.kernel.outer(ts[0], j)) * inner_max;
            for (std::size_t i = 1; i < n; ++i) {
                const double cur = std::abs(p.kernel.inner(ts[i], j));
                inner_max = std::max(inner_max, cur);
                acc += 0.5 * (ts[i] - ts[i - 1]) * (prev + cur);
                prev = cur;
                const double a = std::abs(p.kernel.outer(ts[i], j));
                sup = std::max(sup, a * inner_max);
                mj = std::max(mj, a * acc);
            }
        } else {
            std::vector<double> g(n);
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t l = 0; l <= i; ++l) {
                    g[l] = std::abs(p.kernel.eval(ts[i], ts[l], j));
                    sup = std::max(sup, g[l]);
                }
                for (std::size_t l = 0; l < i; ++l) acc += 0.5 * (ts[l + 1] - ts[l]) * (g[l] + g[l + 1]);
                mj = std::max(mj, acc);
            }
        }
        sup_k[j] = sup;
        m[j] = mj;
    });

    SIEConditions c;
    c.lipschitz = p.lipschitz;
    double sum = 0.0, max_m = 0.0;
    for (std::size_t j = 0; j < p.n_paths; ++j) {
        c.sup_k = std::max(c.sup_k, sup_k[j]);
        sum += m[j];
        max_m = std::max(max_m, m[j]);
    }
    const double np = static_cast<double>(p.n_paths);
    c.m_hat = sum / np;
    if (p.n_paths > 1) {
        double ss = 0.0;
        for (double v : m) ss += (v - c.m_hat) * (v - c.m_hat);
        c.m_stderr = std::sqrt(ss / (np - 1.0) / np);
    }
    c.max_lm = c.lipschitz * max_m;
    c.k_const = c.lipschitz * std::sqrt(c.m_hat * c.sup_k);
    c.satisfied = c.k_const < 0.5 && c.max_lm < 0.5;
    return c;
}

SIESolution sie_solve(const SIEProblem& p, double eps, std::size_t max_iter, Parallelism par) {
    if (!(eps > 0.0)) throw InvalidParameter("SIE solver needs eps > 0");
    if (max_iter == 0) throw InvalidParameter("SIE solver needs max_iter >= 1");

    SIESolution sol;
    sol.conditions = sie_conditions(p, par);
    if (!sol.conditions.satisfied) {
        std::ostringstream w;
        w.precision(17);
        w << "contraction conditions not satisfied (K = " << sol.conditions.k_const
          << ", max L*M = " << sol.conditions.max_lm << "); solver run anyway";
        sol.warnings.push_back(w.str());
    }

    const auto weights = trapezoid_weights(p.times);
    auto nonneg = [](const PathField& f) {
        return std::all_of(f.data().begin(), f.data().end(), [](double v) { return v >= 0.0; });
    };

    PathField x = sie_forcing(p, par);
    sol.nonnegative = nonneg(x);
    for (std::size_t m = 1; m <= max_iter; ++m) {
        PathField next;
        try {
            next = sie_apply(p, x, par);
        } catch (const DivergenceError&) {
            throw DivergenceError("SIE iterate " + std::to_string(m) + " is not finite", m);
        }
        const double step = l2_distance(weights, next, x);
        sol.step_norms.push_back(step);
        sol.nonnegative = sol.nonnegative && nonneg(next);
        x = std::move(next);
        sol.iterations = m;
        if (!std::isfinite(step))
            throw DivergenceError("SIE step norm is not finite at iterate " + std::to_string(m), m);
        if (step < eps) {
            sol.converged = true;
            break;
        }
    }
    sol.field = std::move(x);
    return sol;
}

}  // namespace pcm
