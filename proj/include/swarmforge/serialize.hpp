#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "swarmforge/hsef.hpp"
#include "swarmforge/runner.hpp"
#include "swarmforge/simenv.hpp"

namespace swarmforge {

using nlohmann::json;

// --- geometry -------------------------------------------------------------

inline void to_json(json& j, const Point2& p) { j = json{{"x", p.x}, {"y", p.y}}; }

inline void from_json(const json& j, Point2& p) {
    j.at("x").get_to(p.x);
    j.at("y").get_to(p.y);
}

inline void to_json(json& j, const Obstacle& o) {
    j = json{{"kind", o.kind == ObstacleKind::dynamic ? "dynamic" : "static"},
             {"velocity", o.velocity},
             {"vertices", o.vertices}};
}

inline void from_json(const json& j, Obstacle& o) {
    o.kind = j.at("kind").get<std::string>() == "dynamic" ? ObstacleKind::dynamic
                                                          : ObstacleKind::fixed;
    j.at("velocity").get_to(o.velocity);
    j.at("vertices").get_to(o.vertices);
}

inline void to_json(json& j, const PolygonWorld& w) {
    j = json{{"width", w.width},
             {"height", w.height},
             {"start", w.start},
             {"start_velocity", w.start_velocity},
             {"target", w.target},
             {"target_velocity", w.target_velocity},
             {"obstacles", w.obstacles}};
}

inline void from_json(const json& j, PolygonWorld& w) {
    j.at("width").get_to(w.width);
    j.at("height").get_to(w.height);
    j.at("start").get_to(w.start);
    j.at("start_velocity").get_to(w.start_velocity);
    j.at("target").get_to(w.target);
    j.at("target_velocity").get_to(w.target_velocity);
    j.at("obstacles").get_to(w.obstacles);
}

inline void to_json(json& j, const Path& p) { j = json{{"waypoints", p.waypoints}}; }

inline void from_json(const json& j, Path& p) { j.at("waypoints").get_to(p.waypoints); }

// --- hyper-parameters -----------------------------------------------------

inline void to_json(json& j, const GroupHypers& h) {
    j = json{{"c1", h.c1},       {"c2", h.c2},
             {"c3", h.c3},       {"omega_init", h.omega_init},
             {"omega_end", h.omega_end}, {"v_limit", h.v_limit}};
}

inline void from_json(const json& j, GroupHypers& h) {
    j.at("c1").get_to(h.c1);
    j.at("c2").get_to(h.c2);
    j.at("c3").get_to(h.c3);
    j.at("omega_init").get_to(h.omega_init);
    j.at("omega_end").get_to(h.omega_end);
    j.at("v_limit").get_to(h.v_limit);
}

inline void to_json(json& j, const HyperMatrix& m) { j = json{{"groups", m.groups}}; }

inline void from_json(const json& j, HyperMatrix& m) { j.at("groups").get_to(m.groups); }

// --- reports ---------------------------------------------------------------

inline void to_json(json& j, const RunReport& r) {
    j = json{{"algorithm", r.algorithm},
             {"problem", r.problem},
             {"seed", r.seed},
             {"iterations", r.iterations},
             {"trace", r.trace},
             {"final_point", r.final_point},
             {"final_fitness", r.final_fitness},
             {"evaluations", r.evaluations},
             {"wall_seconds", r.wall_seconds}};
}

inline void from_json(const json& j, RunReport& r) {
    j.at("algorithm").get_to(r.algorithm);
    j.at("problem").get_to(r.problem);
    j.at("seed").get_to(r.seed);
    j.at("iterations").get_to(r.iterations);
    j.at("trace").get_to(r.trace);
    j.at("final_point").get_to(r.final_point);
    j.at("final_fitness").get_to(r.final_fitness);
    j.at("evaluations").get_to(r.evaluations);
    j.at("wall_seconds").get_to(r.wall_seconds);
}

inline void to_json(json& j, const PlanRecord& r) {
    j = json{{"best_path", r.best_path},
             {"fitness", r.fitness},
             {"length", r.length},
             {"intersections", r.intersections},
             {"iterations", r.iterations},
             {"truncated", r.truncated},
             {"stop_reason", r.stop_reason},
             {"collision_free", r.collision_free},
             {"wall_seconds", r.wall_seconds}};
}

inline void from_json(const json& j, PlanRecord& r) {
    j.at("best_path").get_to(r.best_path);
    j.at("fitness").get_to(r.fitness);
    j.at("length").get_to(r.length);
    j.at("intersections").get_to(r.intersections);
    j.at("iterations").get_to(r.iterations);
    j.at("truncated").get_to(r.truncated);
    j.at("stop_reason").get_to(r.stop_reason);
    j.at("collision_free").get_to(r.collision_free);
    j.at("wall_seconds").get_to(r.wall_seconds);
}

inline void to_json(json& j, const SimMetrics& m) {
    j = json{{"variant", m.variant},
             {"frames", m.frames},
             {"seed", m.seed},
             {"mean_path_length", m.mean_path_length},
             {"mean_wall_seconds", m.mean_wall_seconds},
             {"mean_iterations", m.mean_iterations},
             {"collision_free_fraction", m.collision_free_fraction},
             {"records", m.records}};
}

inline void from_json(const json& j, SimMetrics& m) {
    j.at("variant").get_to(m.variant);
    j.at("frames").get_to(m.frames);
    j.at("seed").get_to(m.seed);
    j.at("mean_path_length").get_to(m.mean_path_length);
    j.at("mean_wall_seconds").get_to(m.mean_wall_seconds);
    j.at("mean_iterations").get_to(m.mean_iterations);
    j.at("collision_free_fraction").get_to(m.collision_free_fraction);
    j.at("records").get_to(m.records);
}

/// Evolved-hypers document: the matrix plus enough context to rerun the
/// evolution that produced it.
struct HypersDocument {
    HyperMatrix hypers;
    std::string problem;
    InnerBudget inner;
    OuterBudget outer;
    std::uint64_t seed = 0;
};

inline void to_json(json& j, const InnerBudget& b) {
    j = json{{"groups", b.groups}, {"per_group", b.per_group}, {"iterations", b.iterations}};
}

inline void from_json(const json& j, InnerBudget& b) {
    j.at("groups").get_to(b.groups);
    j.at("per_group").get_to(b.per_group);
    j.at("iterations").get_to(b.iterations);
}

inline void to_json(json& j, const OuterBudget& b) {
    j = json{{"groups", b.groups}, {"per_group", b.per_group}, {"evolutions", b.evolutions}};
}

inline void from_json(const json& j, OuterBudget& b) {
    j.at("groups").get_to(b.groups);
    j.at("per_group").get_to(b.per_group);
    j.at("evolutions").get_to(b.evolutions);
}

inline void to_json(json& j, const HypersDocument& doc) {
    j = json{{"groups", doc.hypers.groups},
             {"problem", doc.problem},
             {"inner_budget", doc.inner},
             {"outer_budget", doc.outer},
             {"seed", doc.seed}};
}

inline void from_json(const json& j, HypersDocument& doc) {
    j.at("groups").get_to(doc.hypers.groups);
    j.at("problem").get_to(doc.problem);
    j.at("inner_budget").get_to(doc.inner);
    j.at("outer_budget").get_to(doc.outer);
    j.at("seed").get_to(doc.seed);
}

inline void to_json(json& j, const EvolutionReport& r) {
    j = json{{"best_lfv_trace", r.best_lfv_trace},
             {"evolution_lfv_trace", r.evolution_lfv_trace},
             {"best", r.best},
             {"evolutions", r.evolutions},
             {"lfv_evaluations", r.lfv_evaluations},
             {"root_seed", r.root_seed},
             {"outer_seed", r.outer_seed},
             {"lfv_seed_root", r.lfv_seed_root}};
}

inline void from_json(const json& j, EvolutionReport& r) {
    j.at("best_lfv_trace").get_to(r.best_lfv_trace);
    j.at("evolution_lfv_trace").get_to(r.evolution_lfv_trace);
    j.at("best").get_to(r.best);
    j.at("evolutions").get_to(r.evolutions);
    j.at("lfv_evaluations").get_to(r.lfv_evaluations);
    j.at("root_seed").get_to(r.root_seed);
    j.at("outer_seed").get_to(r.outer_seed);
    j.at("lfv_seed_root").get_to(r.lfv_seed_root);
}

// --- scenario config --------------------------------------------------------

inline void to_json(json& j, const ScenarioConfig& c) {
    j = json{{"map_size", c.map_size},
             {"dynamic_obstacles", c.dynamic_obstacles},
             {"static_obstacles", c.static_obstacles},
             {"min_side", c.min_side},
             {"max_side", c.max_side},
             {"max_speed", c.max_speed},
             {"start_speed", c.start_speed},
             {"target_speed", c.target_speed},
             {"frames", c.frames},
             {"dt", c.dt},
             {"root_seed", c.root_seed}};
}

inline void from_json(const json& j, ScenarioConfig& c) {
    // Partial documents override defaults field by field.
    c.map_size = j.value("map_size", c.map_size);
    c.dynamic_obstacles = j.value("dynamic_obstacles", c.dynamic_obstacles);
    c.static_obstacles = j.value("static_obstacles", c.static_obstacles);
    c.min_side = j.value("min_side", c.min_side);
    c.max_side = j.value("max_side", c.max_side);
    c.max_speed = j.value("max_speed", c.max_speed);
    c.start_speed = j.value("start_speed", c.start_speed);
    c.target_speed = j.value("target_speed", c.target_speed);
    c.frames = j.value("frames", c.frames);
    c.dt = j.value("dt", c.dt);
    c.root_seed = j.value("root_seed", c.root_seed);
}

// --- CSV --------------------------------------------------------------------

/// Shortest decimal form that parses back to the same double; keeps CSV
/// output byte-stable across runs.
inline std::string csv_number(double v) { return json(v).dump(); }

inline std::string metrics_csv_header() {
    return "variant,frames,seed,mean_path_length,mean_wall_seconds,mean_iterations,"
           "collision_free_fraction\n";
}

inline std::string metrics_csv_row(const SimMetrics& m) {
    std::ostringstream out;
    out << m.variant << ',' << m.frames << ',' << m.seed << ','
        << csv_number(m.mean_path_length) << ',' << csv_number(m.mean_wall_seconds) << ','
        << csv_number(m.mean_iterations) << ',' << csv_number(m.collision_free_fraction)
        << '\n';
    return out.str();
}

// --- SVG ---------------------------------------------------------------------

/// One frame as an SVG image: static obstacles orange, dynamic black, the
/// planned path blue from the green start to the red target. The y axis is
/// flipped so +y points up as in the world's coordinates.
inline std::string render_frame_svg(const PolygonWorld& world, const Path* path = nullptr) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << world.width
        << "\" height=\"" << world.height << "\" viewBox=\"0 0 " << world.width << ' '
        << world.height << "\">\n";
    svg << "<g transform=\"translate(0," << world.height << ") scale(1,-1)\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << world.width << "\" height=\"" << world.height
        << "\" fill=\"white\" stroke=\"gray\"/>\n";
    for (const Obstacle& o : world.obstacles) {
        svg << "<polygon points=\"";
        for (const Point2& p : o.vertices) svg << p.x << ',' << p.y << ' ';
        svg << "\" fill=\"" << (o.kind == ObstacleKind::dynamic ? "black" : "orange")
            << "\"/>\n";
    }
    if (path) {
        svg << "<polyline points=\"" << world.start.x << ',' << world.start.y << ' ';
        for (const Point2& w : path->waypoints) svg << w.x << ',' << w.y << ' ';
        svg << world.target.x << ',' << world.target.y
            << "\" fill=\"none\" stroke=\"blue\" stroke-width=\"2\"/>\n";
    }
    svg << "<circle cx=\"" << world.start.x << "\" cy=\"" << world.start.y
        << "\" r=\"5\" fill=\"green\"/>\n";
    svg << "<circle cx=\"" << world.target.x << "\" cy=\"" << world.target.y
        << "\" r=\"5\" fill=\"red\"/>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

// --- files --------------------------------------------------------------------

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return json::parse(in);
}

} // namespace swarmforge
