#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmforge/geometry.hpp"
#include "swarmforge/runner.hpp"

namespace swarmforge {

/// Per-frame planning knobs: penalty shape, the fraction of particles warmed
/// from the previous frame's best path, and the truncation window.
struct PlannerConfig {
    double alpha = 30.0;  ///< penalty scale
    double beta = 4.0;    ///< penalty exponent
    double gamma = 0.25;  ///< fraction of each group seeded near the previous path
    double delta = 10.0;  ///< truncation threshold on the window's std deviation
    std::size_t tw = 20;  ///< truncation window length, iterations
    double pi_radius = 20.0;              ///< half-width of the warm-start box, cm
    std::size_t max_iters_per_frame = 50;
    std::size_t groups = 8;
    std::size_t per_group = 170;
    std::size_t dim = 16;
    bool auto_truncate = true; ///< fixed-budget baselines run with this off
    /// Let the truncation window retain values from earlier frames instead
    /// of restarting empty. Off, a frame can never stop before `tw`
    /// iterations; on, converged frames can stop almost immediately.
    bool window_carryover = false;

    std::size_t waypoints() const { return dim / 2; }
    std::size_t pi_count() const {
        return static_cast<std::size_t>(gamma * static_cast<double>(per_group));
    }

    void validate() const {
        if (!(alpha >= 0.0) || !(beta >= 1.0))
            throw std::invalid_argument("planner config: need alpha >= 0 and beta >= 1");
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::invalid_argument("planner config: gamma must lie in [0, 1]");
        if (tw < 2) throw std::invalid_argument("planner config: tw must be >= 2");
        if (!(delta > 0.0)) throw std::invalid_argument("planner config: delta must be > 0");
        if (!(pi_radius > 0.0))
            throw std::invalid_argument("planner config: pi_radius must be > 0");
        if (max_iters_per_frame < 1)
            throw std::invalid_argument("planner config: max_iters_per_frame must be >= 1");
        if (groups < 1 || per_group < 1)
            throw std::invalid_argument("planner config: G and N must be >= 1");
        if (dim < 2 || dim % 2 != 0)
            throw std::invalid_argument("planner config: dim must be even and >= 2");
    }
};

/// Outcome of planning one frame.
struct PlanRecord {
    Path best_path;
    double fitness = 0.0;
    double length = 0.0;
    std::size_t intersections = 0; ///< Q of the best path
    std::size_t iterations = 0;
    bool truncated = false;  ///< stopped early by the convergence rule
    std::string stop_reason; ///< "converged" or "cap"
    bool collision_free = false;
    double wall_seconds = 0.0;
};

/// Warm-started swarm: when a previous best path exists, the first
/// floor(gamma*N) particles of every group draw each coordinate uniformly
/// from [prev - pi_radius, prev + pi_radius] clipped to the map; everyone
/// else draws from the full box. With gamma = 0 or no previous path this is
/// exactly init_swarm, draw for draw.
inline SwarmState priori_init(const std::optional<Path>& prev_best, const HyperMatrix& hypers,
                              const SearchBounds& bounds, const PlannerConfig& config,
                              RngStream& rng) {
    config.validate();
    hypers.validate();
    bounds.validate();
    if (hypers.group_count() != config.groups)
        throw std::invalid_argument("priori_init: hyper matrix group count != G");
    if (bounds.dimension() != config.dim)
        throw std::invalid_argument("priori_init: bounds dimension != planner dim");
    if (prev_best && prev_best->waypoints.size() != config.waypoints())
        throw std::invalid_argument("priori_init: previous path waypoint count mismatch");

    const std::size_t G = config.groups;
    const std::size_t N = config.per_group;
    const std::size_t D = config.dim;
    const std::size_t half = config.waypoints();

    SwarmState s;
    s.groups = G;
    s.per_group = N;
    s.dim = D;
    s.x.resize(G * N * D);
    s.v.resize(G * N * D);
    s.pbest_f.assign(G * N, std::numeric_limits<double>::infinity());
    s.gbest_x.assign(G * D, 0.0);
    s.gbest_f.assign(G, std::numeric_limits<double>::infinity());
    s.tbest_x.assign(D, 0.0);

    const std::size_t warm = prev_best ? config.pi_count() : 0;
    for (std::size_t g = 0; g < G; ++g)
        for (std::size_t n = 0; n < N; ++n) {
            double* xp = s.x.data() + (g * N + n) * D;
            if (n < warm) {
                for (std::size_t d = 0; d < D; ++d) {
                    const Point2& w = prev_best->waypoints[d % half];
                    const double center = d < half ? w.x : w.y;
                    const double lo = std::max(bounds.x_lo[d], center - config.pi_radius);
                    const double hi = std::min(bounds.x_hi[d], center + config.pi_radius);
                    xp[d] = rng.uniform(lo, hi);
                }
            } else {
                for (std::size_t d = 0; d < D; ++d)
                    xp[d] = rng.uniform(bounds.x_lo[d], bounds.x_hi[d]);
            }
        }
    for (std::size_t g = 0; g < G; ++g) {
        const GroupHypers& h = hypers.groups[g];
        double* vg = s.v.data() + g * N * D;
        for (std::size_t i = 0; i < N * D; ++i) {
            const double vmax = h.v_limit * bounds.span(i % D);
            vg[i] = rng.uniform(-vmax, vmax);
        }
    }
    s.pbest_x = s.x;
    return s;
}

/// Truncation test: true once the window holds `tw` values whose population
/// standard deviation is below delta and the incumbent best is collision
/// free. Never fires on a part-filled window.
inline bool should_truncate(std::span<const double> lfv_window, bool best_is_collision_free,
                            const PlannerConfig& config) {
    if (lfv_window.size() < config.tw) return false;
    const std::span<const double> tail = lfv_window.last(config.tw);
    double mean = 0.0;
    for (double v : tail) mean += v;
    mean /= static_cast<double>(config.tw);
    double var = 0.0;
    for (double v : tail) var += (v - mean) * (v - mean);
    var /= static_cast<double>(config.tw);
    return std::sqrt(var) < config.delta && best_is_collision_free;
}

/// Plan one frame against a frozen world: a warm-started swarm minimizes the
/// path fitness until the truncation rule fires or the iteration cap is hit.
/// A cap-reached frame whose best still collides is reported, not thrown.
/// `carried_window`, when given and carryover is enabled, holds the running
/// best-fitness window across frames.
inline PlanRecord plan_frame(const PolygonWorld& world, const std::optional<Path>& prev_best,
                             const HyperMatrix& hypers, const PlannerConfig& config,
                             std::uint64_t seed, std::vector<double>* carried_window = nullptr) {
    config.validate();
    const double t0 = detail::monotonic_seconds();
    const PathPlanningProblem problem(world, config.dim, config.alpha, config.beta);

    RngStream rng(seed);
    SwarmState s = priori_init(prev_best, hypers, problem.bounds(), config, rng);

    std::vector<double> local_window;
    std::vector<double>& window =
        (config.window_carryover && carried_window) ? *carried_window : local_window;

    std::vector<double> fitness(s.particle_count());
    PlanRecord record;
    const std::size_t cap = config.max_iters_per_frame;
    for (std::size_t k = 1; k <= cap; ++k) {
        problem.evaluate_rows(s.x, s.particle_count(), fitness);
        detail::require_finite(fitness, s.per_group, k);
        update_bests(s, fitness);
        record.iterations = k;

        window.push_back(s.tbest_f);
        if (window.size() > config.tw) window.erase(window.begin());
        if (config.auto_truncate) {
            const bool best_cf = count_intersections(decode_path(s.tbest_x), world) == 0;
            if (should_truncate(window, best_cf, config)) {
                record.truncated = true;
                break;
            }
        }
        if (k < cap) step(s, hypers, problem.bounds(), rng, k, cap);
    }

    record.best_path = decode_path(s.tbest_x);
    record.fitness = s.tbest_f;
    record.length = path_length(record.best_path, world);
    record.intersections = count_intersections(record.best_path, world);
    record.collision_free = record.intersections == 0;
    record.stop_reason = record.truncated ? "converged" : "cap";
    record.wall_seconds = detail::monotonic_seconds() - t0;
    return record;
}

} // namespace swarmforge
