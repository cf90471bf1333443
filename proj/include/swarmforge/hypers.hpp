#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace swarmforge {

/// Behavioral hyper-parameters of one particle group.
struct GroupHypers {
    double c1 = 0.0;          ///< attraction to the particle's own best
    double c2 = 0.0;          ///< attraction to the group best
    double c3 = 0.0;          ///< attraction to the population best
    double omega_init = 0.0;  ///< inertia at the start of the schedule
    double omega_end = 0.0;   ///< inertia at the end of the schedule
    double v_limit = 0.0;     ///< velocity bound as a fraction of the search span

    bool operator==(const GroupHypers&) const = default;
};

/// The (G x 6) matrix of per-group hyper-parameters consumed by the batched
/// update and evolved by the self-evolving layer.
struct HyperMatrix {
    std::vector<GroupHypers> groups;

    std::size_t group_count() const { return groups.size(); }

    bool operator==(const HyperMatrix&) const = default;

    void validate() const {
        if (groups.empty())
            throw std::invalid_argument("HyperMatrix: at least one group required");
        for (const GroupHypers& g : groups) {
            const double all[] = {g.c1, g.c2, g.c3, g.omega_init, g.omega_end, g.v_limit};
            for (double v : all)
                if (!std::isfinite(v))
                    throw std::invalid_argument("HyperMatrix: non-finite entry");
            if (g.c1 < 0 || g.c2 < 0 || g.c3 < 0)
                throw std::invalid_argument("HyperMatrix: acceleration constants must be >= 0");
            if (!(0.0 <= g.omega_end && g.omega_end <= g.omega_init && g.omega_init <= 1.0))
                throw std::invalid_argument("HyperMatrix: need 0 <= omega_end <= omega_init <= 1");
            if (!(0.0 < g.v_limit && g.v_limit <= 1.0))
                throw std::invalid_argument("HyperMatrix: need 0 < v_limit <= 1");
        }
    }
};

/// Eight-group defaults used by the diversity-based optimizer and by the
/// outer swarm of the self-evolving layer.
inline HyperMatrix default_group_hypers() {
    return HyperMatrix{{
        {2, 1, 1, 0.4, 0.2, 0.2},
        {1, 1, 2, 0.7, 0.3, 0.1},
        {2, 2, 1, 0.8, 0.1, 0.6},
        {2, 2, 1, 0.8, 0.6, 0.4},
        {2, 1, 2, 0.2, 0.1, 0.3},
        {2, 1, 2, 0.9, 0.5, 0.5},
        {1, 2, 2, 0.4, 0.1, 0.8},
        {1, 2, 2, 0.9, 0.3, 0.3},
    }};
}

/// Classic single-swarm PSO settings (used by the reference baseline).
struct PsoParams {
    double c1 = 2.0;
    double c2 = 2.0;
    double omega_init = 0.9;
    double omega_end = 0.4;
    double v_limit = 0.5;
};

/// Evolved eight-group hyper-parameters for the path-planning problem,
/// shipped as the built-in default for the evolved planner variant.
inline HyperMatrix evolved_path_hypers() {
    return HyperMatrix{{
        {1.53, 1.29, 1.34, 0.48, 0.19, 0.35},
        {1.72, 1.53, 1.34, 0.73, 0.28, 0.32},
        {1.34, 1.42, 1.33, 0.48, 0.21, 0.62},
        {1.76, 1.60, 1.21, 0.47, 0.30, 0.63},
        {1.68, 1.27, 1.25, 0.73, 0.36, 0.41},
        {1.66, 1.54, 1.54, 0.39, 0.16, 0.45},
        {1.57, 1.48, 1.75, 0.56, 0.34, 0.38},
        {1.31, 1.71, 1.23, 0.36, 0.25, 0.50},
    }};
}

/// Per-dimension search box. Velocity bounds are derived per group as
/// +/- v_limit * (x_hi - x_lo).
struct SearchBounds {
    std::vector<double> x_lo;
    std::vector<double> x_hi;

    SearchBounds() = default;
    SearchBounds(std::vector<double> lo, std::vector<double> hi)
        : x_lo(std::move(lo)), x_hi(std::move(hi)) {
        validate();
    }

    /// Same [lo, hi] interval in every dimension.
    static SearchBounds uniform_box(double lo, double hi, std::size_t dim) {
        return SearchBounds(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
    }

    std::size_t dimension() const { return x_lo.size(); }
    double span(std::size_t d) const { return x_hi[d] - x_lo[d]; }
    double v_max(const GroupHypers& g, std::size_t d) const { return g.v_limit * span(d); }

    void validate() const {
        if (x_lo.size() != x_hi.size())
            throw std::invalid_argument("SearchBounds: lo/hi dimension mismatch");
        if (x_lo.empty())
            throw std::invalid_argument("SearchBounds: dimension must be >= 1");
        for (std::size_t d = 0; d < x_lo.size(); ++d) {
            if (!std::isfinite(x_lo[d]) || !std::isfinite(x_hi[d]))
                throw std::invalid_argument("SearchBounds: non-finite bound");
            if (!(x_lo[d] < x_hi[d]))
                throw std::invalid_argument("SearchBounds: need x_lo < x_hi per dimension");
        }
    }
};

} // namespace swarmforge
