#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmforge/problem.hpp"

namespace swarmforge {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

enum class ObstacleKind { fixed, dynamic };

/// Closed polygon given by its vertices in order; edge i joins vertex i to
/// vertex (i+1) mod size. Dynamic obstacles carry a velocity in cm/s.
struct Obstacle {
    std::vector<Point2> vertices;
    Point2 velocity{0.0, 0.0};
    ObstacleKind kind = ObstacleKind::fixed;

    void validate() const {
        if (vertices.size() < 3)
            throw std::invalid_argument("obstacle needs at least 3 vertices");
        for (const Point2& p : vertices)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw std::invalid_argument("obstacle vertex is not finite");
    }
};

/// Planning world: a rectangular map with moving endpoints and polygonal
/// obstacles. Coordinates are in cm, velocities in cm/s.
struct PolygonWorld {
    double width = 0.0;
    double height = 0.0;
    Point2 start;
    Point2 target;
    Point2 start_velocity{0.0, 0.0};
    Point2 target_velocity{0.0, 0.0};
    std::vector<Obstacle> obstacles;

    bool contains(const Point2& p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }

    void validate() const {
        if (!(width > 0.0) || !(height > 0.0))
            throw std::invalid_argument("world dimensions must be positive");
        if (!contains(start) || !contains(target))
            throw std::invalid_argument("start/target outside the map");
        for (const Obstacle& o : obstacles) {
            o.validate();
            for (const Point2& p : o.vertices)
                if (!contains(p))
                    throw std::invalid_argument("obstacle vertex outside the map");
        }
    }
};

/// Waypoints in visit order; the world's start and target bracket them.
struct Path {
    std::vector<Point2> waypoints;
};

/// Split a [x_1..x_{D/2}, y_1..y_{D/2}] particle into waypoints.
inline Path decode_path(std::span<const double> particle) {
    if (particle.empty() || particle.size() % 2 != 0)
        throw std::invalid_argument("decode_path: dimension must be even and positive");
    const std::size_t half = particle.size() / 2;
    Path path;
    path.waypoints.resize(half);
    for (std::size_t i = 0; i < half; ++i)
        path.waypoints[i] = {particle[i], particle[half + i]};
    return path;
}

inline std::vector<double> encode_path(const Path& path) {
    const std::size_t half = path.waypoints.size();
    std::vector<double> particle(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        particle[i] = path.waypoints[i].x;
        particle[half + i] = path.waypoints[i].y;
    }
    return particle;
}

namespace detail {

inline constexpr double kOrientEps = 1e-12;

/// Sign of the cross product (b-a) x (c-a): +1 counter-clockwise, -1
/// clockwise, 0 within the degenerate band around collinear.
inline int orientation(const Point2& a, const Point2& b, const Point2& c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (cross > kOrientEps) return 1;
    if (cross < -kOrientEps) return -1;
    return 0;
}

/// Whether a point known to be collinear with segment ab lies within its
/// bounding box (and therefore on the segment).
inline bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

} // namespace detail

/// Closed-segment intersection test: true when the segments share at least
/// one point, including touching endpoints and collinear overlap.
inline bool segments_intersect(const Point2& a1, const Point2& a2, const Point2& b1,
                               const Point2& b2) {
    const int o1 = detail::orientation(a1, a2, b1);
    const int o2 = detail::orientation(a1, a2, b2);
    const int o3 = detail::orientation(b1, b2, a1);
    const int o4 = detail::orientation(b1, b2, a2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && detail::on_segment(a1, a2, b1)) return true;
    if (o2 == 0 && detail::on_segment(a1, a2, b2)) return true;
    if (o3 == 0 && detail::on_segment(b1, b2, a1)) return true;
    if (o4 == 0 && detail::on_segment(b1, b2, a2)) return true;
    return false;
}

/// Even-odd test, strict: points on the boundary do not count as inside.
inline bool point_strictly_inside(const Point2& p, const std::vector<Point2>& polygon) {
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = polygon[i];
        const Point2& b = polygon[(i + 1) % n];
        if (detail::orientation(a, b, p) == 0 && detail::on_segment(a, b, p))
            return false;
    }
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = polygon[i];
        const Point2& b = polygon[(i + 1) % n];
        const bool crosses = (a.y > p.y) != (b.y > p.y);
        if (crosses && p.x < a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y))
            inside = !inside;
    }
    return inside;
}

namespace detail {

/// Visit the full segment chain start -> w_1 -> ... -> w_last -> target.
template <typename Fn>
void for_each_path_segment(const Path& path, const PolygonWorld& world, Fn&& fn) {
    Point2 prev = world.start;
    for (const Point2& w : path.waypoints) {
        fn(prev, w);
        prev = w;
    }
    fn(prev, world.target);
}

struct Bbox {
    double lo_x, lo_y, hi_x, hi_y;
};

inline Bbox bbox_of(const std::vector<Point2>& vertices) {
    Bbox b{vertices[0].x, vertices[0].y, vertices[0].x, vertices[0].y};
    for (const Point2& p : vertices) {
        b.lo_x = std::min(b.lo_x, p.x);
        b.lo_y = std::min(b.lo_y, p.y);
        b.hi_x = std::max(b.hi_x, p.x);
        b.hi_y = std::max(b.hi_y, p.y);
    }
    return b;
}

/// Overlap with a margin comfortably wider than the orientation epsilon
/// band, so the prefilter can never skip a pair the full test would accept.
inline bool bbox_overlap(const Bbox& a, const Bbox& b) {
    constexpr double margin = 1e-9;
    return a.lo_x <= b.hi_x + margin && b.lo_x <= a.hi_x + margin &&
           a.lo_y <= b.hi_y + margin && b.lo_y <= a.hi_y + margin;
}

} // namespace detail

/// Collision score Q: one count per intersecting (path segment, obstacle
/// edge) pair, plus one per obstacle that strictly contains the first
/// waypoint — without the latter a path buried entirely inside an obstacle
/// would score as collision-free.
inline std::size_t count_intersections(const Path& path, const PolygonWorld& world) {
    if (path.waypoints.empty())
        throw std::invalid_argument("count_intersections: path has no waypoints");
    // Cull obstacles a segment cannot reach before running edge tests; this
    // dominates the planner's per-particle cost.
    std::vector<detail::Bbox> boxes;
    boxes.reserve(world.obstacles.size());
    for (const Obstacle& o : world.obstacles) boxes.push_back(detail::bbox_of(o.vertices));

    std::size_t q = 0;
    detail::for_each_path_segment(path, world, [&](const Point2& s1, const Point2& s2) {
        const detail::Bbox seg{std::min(s1.x, s2.x), std::min(s1.y, s2.y),
                               std::max(s1.x, s2.x), std::max(s1.y, s2.y)};
        for (std::size_t oi = 0; oi < world.obstacles.size(); ++oi) {
            if (!detail::bbox_overlap(seg, boxes[oi])) continue;
            const std::vector<Point2>& vs = world.obstacles[oi].vertices;
            const std::size_t n = vs.size();
            for (std::size_t i = 0; i < n; ++i)
                if (segments_intersect(s1, s2, vs[i], vs[(i + 1) % n])) ++q;
        }
    });
    for (const Obstacle& o : world.obstacles)
        if (point_strictly_inside(path.waypoints.front(), o.vertices)) ++q;
    return q;
}

/// Total Euclidean length of start -> waypoints -> target.
inline double path_length(const Path& path, const PolygonWorld& world) {
    if (path.waypoints.empty())
        throw std::invalid_argument("path_length: path has no waypoints");
    double total = 0.0;
    detail::for_each_path_segment(path, world, [&](const Point2& s1, const Point2& s2) {
        total += std::hypot(s2.x - s1.x, s2.y - s1.y);
    });
    return total;
}

/// Path quality: length plus the collision penalty alpha * Q^beta.
inline double path_fitness(std::span<const double> particle, const PolygonWorld& world,
                           double alpha, double beta) {
    if (alpha < 0.0 || beta < 1.0)
        throw std::invalid_argument("path_fitness: need alpha >= 0 and beta >= 1");
    const Path path = decode_path(particle);
    const std::size_t q = count_intersections(path, world);
    return path_length(path, world) + alpha * std::pow(static_cast<double>(q), beta);
}

/// Waypoint optimization posed as a fitness problem: the first D/2
/// coordinates range over the map width, the rest over the height.
class PathPlanningProblem final : public FitnessProblem {
public:
    PathPlanningProblem(PolygonWorld world, std::size_t dim, double alpha, double beta)
        : world_(std::move(world)), alpha_(alpha), beta_(beta) {
        if (dim == 0 || dim % 2 != 0)
            throw std::invalid_argument("path problem dimension must be even and positive");
        world_.validate();
        std::vector<double> lo(dim, 0.0), hi(dim);
        for (std::size_t d = 0; d < dim; ++d)
            hi[d] = d < dim / 2 ? world_.width : world_.height;
        bounds_ = SearchBounds{std::move(lo), std::move(hi)};
    }

    const std::string& name() const override { return name_; }
    std::size_t dimension() const override { return bounds_.dimension(); }
    const SearchBounds& bounds() const override { return bounds_; }

    void evaluate_rows(std::span<const double> xs, std::size_t rows,
                       std::span<double> out) const override {
        const std::size_t D = dimension();
        for (std::size_t r = 0; r < rows; ++r)
            out[r] = path_fitness(xs.subspan(r * D, D), world_, alpha_, beta_);
    }

    const PolygonWorld& world() const { return world_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    PolygonWorld world_;
    double alpha_;
    double beta_;
    SearchBounds bounds_;
    std::string name_ = "path";
};

} // namespace swarmforge
