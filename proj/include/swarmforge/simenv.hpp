#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmforge/planner.hpp"

namespace swarmforge {

/// Dynamic-world scenario: a square map with drifting endpoints and a mix of
/// moving and fixed rectangular obstacles.
struct ScenarioConfig {
    double map_size = 366.0; ///< cm, square
    std::size_t dynamic_obstacles = 6;
    std::size_t static_obstacles = 2;
    double min_side = 30.0;   ///< obstacle side range, cm
    double max_side = 80.0;
    double max_speed = 5.0;   ///< dynamic obstacle speed falls in (0, max_speed]
    double start_speed = 3.0; ///< vertical drift of the start point, cm/s
    double target_speed = 8.0;
    std::size_t frames = 100;
    double dt = 1.0; ///< seconds per frame
    std::uint64_t root_seed = 1;

    void validate() const {
        if (!(map_size > 0.0))
            throw std::invalid_argument("scenario: map size must be positive");
        if (!(min_side > 0.0) || min_side > max_side || max_side >= map_size)
            throw std::invalid_argument("scenario: obstacle side range invalid");
        if (!(max_speed > 0.0))
            throw std::invalid_argument("scenario: max speed must be positive");
        if (frames < 1) throw std::invalid_argument("scenario: frame count must be >= 1");
        if (!(dt > 0.0)) throw std::invalid_argument("scenario: dt must be positive");
    }
};

enum class PlannerVariant { sepso, sepso_noat, sepso_nopi, dtpso, dppso, pso };

inline const std::vector<std::pair<std::string, PlannerVariant>>& planner_variants() {
    static const std::vector<std::pair<std::string, PlannerVariant>> table = {
        {"sepso", PlannerVariant::sepso},     {"sepso-noat", PlannerVariant::sepso_noat},
        {"sepso-nopi", PlannerVariant::sepso_nopi}, {"dtpso", PlannerVariant::dtpso},
        {"dppso", PlannerVariant::dppso},     {"pso", PlannerVariant::pso}};
    return table;
}

inline std::string variant_name(PlannerVariant v) {
    for (const auto& [name, value] : planner_variants())
        if (value == v) return name;
    throw std::invalid_argument("unknown planner variant");
}

inline PlannerVariant parse_variant(const std::string& name) {
    for (const auto& [key, value] : planner_variants())
        if (key == name) return value;
    throw std::invalid_argument("unknown planner variant '" + name +
                                "' (expected one of sepso, sepso-noat, sepso-nopi, "
                                "dtpso, dppso, pso)");
}

/// Aggregated scenario outcome plus the per-frame records it was computed
/// from.
struct SimMetrics {
    std::string variant;
    std::size_t frames = 0;
    std::uint64_t seed = 0;
    double mean_path_length = 0.0;
    double mean_wall_seconds = 0.0;
    double mean_iterations = 0.0;
    double collision_free_fraction = 0.0;
    std::vector<PlanRecord> records;
};

/// Seed-deterministic world: fixed start/target columns drifting vertically,
/// rectangular obstacles with sampled sizes, positions and (for the dynamic
/// ones) velocities. Placements that land on the start or target point are
/// redrawn.
inline PolygonWorld generate_world(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();
    RngStream rng(seed);

    PolygonWorld world;
    world.width = config.map_size;
    world.height = config.map_size;
    world.start = {0.5 * config.map_size, 0.1 * config.map_size};
    world.target = {0.5 * config.map_size, 0.9 * config.map_size};
    world.start_velocity = {0.0, config.start_speed};
    world.target_velocity = {0.0, config.target_speed};

    constexpr double clearance = 2.0; // cm kept free around start/target
    const std::size_t total = config.dynamic_obstacles + config.static_obstacles;
    for (std::size_t i = 0; i < total; ++i) {
        Obstacle o;
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            const double w = rng.uniform(config.min_side, config.max_side);
            const double h = rng.uniform(config.min_side, config.max_side);
            const double cx = rng.uniform(w / 2.0, config.map_size - w / 2.0);
            const double cy = rng.uniform(h / 2.0, config.map_size - h / 2.0);
            const auto covers = [&](const Point2& p) {
                return p.x >= cx - w / 2.0 - clearance && p.x <= cx + w / 2.0 + clearance &&
                       p.y >= cy - h / 2.0 - clearance && p.y <= cy + h / 2.0 + clearance;
            };
            if (covers(world.start) || covers(world.target)) continue;
            o.vertices = {{cx - w / 2.0, cy - h / 2.0},
                          {cx + w / 2.0, cy - h / 2.0},
                          {cx + w / 2.0, cy + h / 2.0},
                          {cx - w / 2.0, cy + h / 2.0}};
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("generate_world: could not place obstacle " +
                                     std::to_string(i) + " clear of start/target");
        if (i < config.dynamic_obstacles) {
            const double speed = config.max_speed * (1.0 - rng.uniform()); // (0, max]
            const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
            o.velocity = {speed * std::cos(angle), speed * std::sin(angle)};
            o.kind = ObstacleKind::dynamic;
        } else {
            o.velocity = {0.0, 0.0};
            o.kind = ObstacleKind::fixed;
        }
        world.obstacles.push_back(std::move(o));
    }
    world.validate();
    return world;
}

namespace detail {

/// Reflect a moving body back inside [0, limit] on one axis. `lo`/`hi` are
/// its extremal coordinates after the move; returns the rigid shift to apply
/// and flips the velocity component when a border was reached.
inline double reflect_axis(double lo, double hi, double limit, double& velocity) {
    if (lo <= 0.0) {
        velocity = -velocity;
        return -2.0 * lo;
    }
    if (hi >= limit) {
        velocity = -velocity;
        return -2.0 * (hi - limit);
    }
    return 0.0;
}

} // namespace detail

/// Advance the world by dt: every dynamic body translates by velocity * dt
/// and bounces off the map borders with its speed preserved.
inline PolygonWorld step_world(const PolygonWorld& world, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_world: dt must be positive");
    PolygonWorld next = world;

    const auto move_point = [&](Point2& p, Point2& v) {
        p.x += v.x * dt;
        p.y += v.y * dt;
        p.x += detail::reflect_axis(p.x, p.x, next.width, v.x);
        p.y += detail::reflect_axis(p.y, p.y, next.height, v.y);
    };
    move_point(next.start, next.start_velocity);
    move_point(next.target, next.target_velocity);

    for (Obstacle& o : next.obstacles) {
        if (o.velocity.x == 0.0 && o.velocity.y == 0.0) continue;
        for (Point2& p : o.vertices) {
            p.x += o.velocity.x * dt;
            p.y += o.velocity.y * dt;
        }
        const detail::Bbox box = detail::bbox_of(o.vertices);
        const double shift_x = detail::reflect_axis(box.lo_x, box.hi_x, next.width, o.velocity.x);
        const double shift_y = detail::reflect_axis(box.lo_y, box.hi_y, next.height, o.velocity.y);
        if (shift_x != 0.0 || shift_y != 0.0)
            for (Point2& p : o.vertices) {
                p.x += shift_x;
                p.y += shift_y;
            }
    }
    return next;
}

/// Planner setup for one Table-style variant: which hyper matrix drives the
/// swarm and whether the warm start and the truncation rule are active.
inline PlannerConfig variant_config(PlannerVariant variant, const PlannerConfig& base) {
    PlannerConfig cfg = base;
    switch (variant) {
    case PlannerVariant::sepso:
        break;
    case PlannerVariant::sepso_noat:
        cfg.auto_truncate = false;
        cfg.max_iters_per_frame = 30;
        break;
    case PlannerVariant::sepso_nopi:
        cfg.gamma = 0.0;
        break;
    case PlannerVariant::dtpso:
    case PlannerVariant::dppso:
        cfg.gamma = 0.0;
        cfg.auto_truncate = false;
        cfg.max_iters_per_frame = 30;
        break;
    case PlannerVariant::pso:
        cfg.gamma = 0.0;
        cfg.auto_truncate = false;
        cfg.max_iters_per_frame = 30;
        cfg.groups = 1;
        cfg.per_group = base.groups * base.per_group;
        break;
    }
    return cfg;
}

inline HyperMatrix variant_hypers(PlannerVariant variant, const HyperMatrix& evolved) {
    switch (variant) {
    case PlannerVariant::sepso:
    case PlannerVariant::sepso_noat:
    case PlannerVariant::sepso_nopi:
        return evolved;
    case PlannerVariant::dtpso:
    case PlannerVariant::dppso:
        return default_group_hypers();
    case PlannerVariant::pso: {
        const PsoParams p;
        HyperMatrix m;
        m.groups = {{p.c1, p.c2, 0.0, p.omega_init, p.omega_end, p.v_limit}};
        return m;
    }
    }
    throw std::invalid_argument("unknown planner variant");
}

/// Run the frame loop: plan against the frozen world, record the result,
/// advance the world, repeat. World evolution depends only on the scenario
/// seed, so every variant sees the identical obstacle trajectories.
inline SimMetrics run_scenario(const ScenarioConfig& config, PlannerVariant variant,
                               std::size_t frames,
                               const PlannerConfig& base = PlannerConfig{},
                               const HyperMatrix& evolved = evolved_path_hypers()) {
    config.validate();
    if (frames < 1) throw std::invalid_argument("run_scenario: frame count must be >= 1");

    const PlannerConfig cfg = variant_config(variant, base);
    const HyperMatrix hypers = variant_hypers(variant, evolved);

    PolygonWorld world = generate_world(config, derive_seed(config.root_seed, "world"));

    SimMetrics metrics;
    metrics.variant = variant_name(variant);
    metrics.frames = frames;
    metrics.seed = config.root_seed;
    metrics.records.reserve(frames);

    std::optional<Path> prev_best;
    std::vector<double> window;
    for (std::size_t f = 0; f < frames; ++f) {
        PlanRecord record = plan_frame(world, prev_best, hypers, cfg,
                                       derive_seed(config.root_seed, "plan", f), &window);
        prev_best = record.best_path;
        metrics.mean_path_length += record.length;
        metrics.mean_wall_seconds += record.wall_seconds;
        metrics.mean_iterations += static_cast<double>(record.iterations);
        metrics.collision_free_fraction += record.collision_free ? 1.0 : 0.0;
        metrics.records.push_back(std::move(record));
        world = step_world(world, config.dt);
    }
    const double count = static_cast<double>(frames);
    metrics.mean_path_length /= count;
    metrics.mean_wall_seconds /= count;
    metrics.mean_iterations /= count;
    metrics.collision_free_fraction /= count;
    return metrics;
}

} // namespace swarmforge
