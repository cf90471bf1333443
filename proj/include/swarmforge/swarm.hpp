#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmforge/hypers.hpp"
#include "swarmforge/rng.hpp"

namespace swarmforge {

/// Batched swarm state. Positions, velocities and personal bests are flat
/// (G,N,D) tensors in row-major order; fitness bookkeeping follows the
/// minimization convention (lower is better).
struct SwarmState {
    std::size_t groups = 0;     ///< G
    std::size_t per_group = 0;  ///< N
    std::size_t dim = 0;        ///< D

    std::vector<double> x;        ///< positions, (G,N,D)
    std::vector<double> v;        ///< velocities, (G,N,D)
    std::vector<double> pbest_x;  ///< per-particle best positions, (G,N,D)
    std::vector<double> pbest_f;  ///< per-particle best fitness, (G,N)
    std::vector<double> gbest_x;  ///< per-group best positions, (G,D)
    std::vector<double> gbest_f;  ///< per-group best fitness, (G)
    std::vector<double> tbest_x;  ///< population best position, (D)
    double tbest_f = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;

    std::size_t particle_count() const { return groups * per_group; }

    std::size_t row(std::size_t g, std::size_t n) const { return g * per_group + n; }

    std::span<double> position(std::size_t g, std::size_t n) {
        return {x.data() + row(g, n) * dim, dim};
    }
    std::span<const double> position(std::size_t g, std::size_t n) const {
        return {x.data() + row(g, n) * dim, dim};
    }
    std::span<const double> personal_best(std::size_t g, std::size_t n) const {
        return {pbest_x.data() + row(g, n) * dim, dim};
    }
    std::span<const double> group_best(std::size_t g) const {
        return {gbest_x.data() + g * dim, dim};
    }
};

/// One batch of per-particle random factors, one scalar per (g,n) pair,
/// broadcast over dimensions. The normative draw order is r1 for all
/// particles (row-major), then r2, then r3; both the batched step and the
/// per-particle references consume the same batch.
struct StepRandoms {
    std::vector<double> r1, r2, r3;
};

inline StepRandoms draw_step_randoms(std::size_t groups, std::size_t per_group,
                                     RngStream& rng) {
    const std::size_t count = groups * per_group;
    StepRandoms r;
    r.r1.resize(count);
    r.r2.resize(count);
    r.r3.resize(count);
    for (double& u : r.r1) u = rng.uniform();
    for (double& u : r.r2) u = rng.uniform();
    for (double& u : r.r3) u = rng.uniform();
    return r;
}

/// Per-group inertia at iteration k of the linear schedule
/// omega_init - (omega_init - omega_end) * k / T.
inline std::vector<double> inertia_at(const HyperMatrix& hypers, std::size_t k,
                                      std::size_t total_iterations) {
    if (total_iterations == 0)
        throw std::invalid_argument("inertia_at: total iteration count must be >= 1");
    if (k > total_iterations)
        throw std::invalid_argument("inertia_at: k out of range");
    std::vector<double> omega(hypers.group_count());
    const double frac = static_cast<double>(k) / static_cast<double>(total_iterations);
    for (std::size_t g = 0; g < omega.size(); ++g) {
        const GroupHypers& h = hypers.groups[g];
        omega[g] = h.omega_init - (h.omega_init - h.omega_end) * frac;
    }
    return omega;
}

/// Uniform-random swarm. Positions fall in [x_lo, x_hi] per dimension and
/// velocities in the per-group velocity interval; personal bests start at the
/// initial positions with a +inf fitness sentinel so the first evaluation
/// installs them. Draw order: all positions row-major over (g,n,d), then all
/// velocities.
inline SwarmState init_swarm(const HyperMatrix& hypers, const SearchBounds& bounds,
                             std::size_t groups, std::size_t per_group, std::size_t dim,
                             RngStream& rng) {
    hypers.validate();
    bounds.validate();
    if (groups < 1 || per_group < 1 || dim < 1)
        throw std::invalid_argument("init_swarm: G, N, D must all be >= 1");
    if (hypers.group_count() != groups)
        throw std::invalid_argument("init_swarm: hyper matrix group count != G");
    if (bounds.dimension() != dim)
        throw std::invalid_argument("init_swarm: bounds dimension != D");

    SwarmState s;
    s.groups = groups;
    s.per_group = per_group;
    s.dim = dim;
    const std::size_t total = groups * per_group * dim;
    s.x.resize(total);
    s.v.resize(total);
    s.pbest_f.assign(groups * per_group, std::numeric_limits<double>::infinity());
    s.gbest_x.assign(groups * dim, 0.0);
    s.gbest_f.assign(groups, std::numeric_limits<double>::infinity());
    s.tbest_x.assign(dim, 0.0);

    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t d = i % dim;
        s.x[i] = rng.uniform(bounds.x_lo[d], bounds.x_hi[d]);
    }
    for (std::size_t g = 0; g < groups; ++g) {
        const GroupHypers& h = hypers.groups[g];
        double* vg = s.v.data() + g * per_group * dim;
        for (std::size_t i = 0; i < per_group * dim; ++i) {
            const double vmax = h.v_limit * bounds.span(i % dim);
            vg[i] = rng.uniform(-vmax, vmax);
        }
    }
    s.pbest_x = s.x;
    return s;
}

/// Advance the whole population by one iteration: the four-term velocity
/// update (inertia plus the three best-attraction terms, each scaled by one
/// per-particle random factor), velocity clip, position update, position
/// clip. Pure kinematics; fitness handling lives in the runner.
inline void step(SwarmState& state, const HyperMatrix& hypers, const SearchBounds& bounds,
                 RngStream& rng, std::size_t k, std::size_t total_iterations) {
    if (hypers.group_count() != state.groups)
        throw std::invalid_argument("step: hyper matrix group count != state groups");
    if (bounds.dimension() != state.dim)
        throw std::invalid_argument("step: bounds dimension != state dimension");

    const std::vector<double> omega = inertia_at(hypers, k, total_iterations);
    const StepRandoms rand = draw_step_randoms(state.groups, state.per_group, rng);

    const std::size_t N = state.per_group;
    const std::size_t D = state.dim;
    const double* tb = state.tbest_x.data();
    for (std::size_t g = 0; g < state.groups; ++g) {
        const GroupHypers& h = hypers.groups[g];
        const double w = omega[g];
        const double* gb = state.gbest_x.data() + g * D;
        for (std::size_t n = 0; n < N; ++n) {
            const std::size_t r = g * N + n;
            const double a1 = h.c1 * rand.r1[r];
            const double a2 = h.c2 * rand.r2[r];
            const double a3 = h.c3 * rand.r3[r];
            double* xv = state.x.data() + r * D;
            double* vv = state.v.data() + r * D;
            const double* pb = state.pbest_x.data() + r * D;
            for (std::size_t d = 0; d < D; ++d) {
                const double vmax = h.v_limit * (bounds.x_hi[d] - bounds.x_lo[d]);
                double nv = w * vv[d] + a1 * (pb[d] - xv[d]) + a2 * (gb[d] - xv[d]) +
                            a3 * (tb[d] - xv[d]);
                nv = std::clamp(nv, -vmax, vmax);
                vv[d] = nv;
                xv[d] = std::clamp(xv[d] + nv, bounds.x_lo[d], bounds.x_hi[d]);
            }
        }
    }
    state.iteration = k;
}

} // namespace swarmforge
