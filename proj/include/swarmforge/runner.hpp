#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmforge/problem.hpp"
#include "swarmforge/swarm.hpp"

namespace swarmforge {

/// A non-finite fitness value aborts the run, naming the offending particle.
class NonFiniteFitnessError : public std::runtime_error {
public:
    NonFiniteFitnessError(std::size_t group, std::size_t index, std::size_t iteration)
        : std::runtime_error("non-finite fitness for particle (" + std::to_string(group) +
                             "," + std::to_string(index) + ") at iteration " +
                             std::to_string(iteration)),
          group_(group), index_(index), iteration_(iteration) {}

    std::size_t group() const { return group_; }
    std::size_t index_in_group() const { return index_; }
    std::size_t iteration() const { return iteration_; }

private:
    std::size_t group_, index_, iteration_;
};

/// Outcome of one optimization run. The best-fitness trace is non-increasing
/// by construction.
struct RunReport {
    std::string algorithm;
    std::string problem;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    std::vector<double> trace;       ///< population-best fitness after each iteration
    std::vector<double> final_point; ///< best position found
    double final_fitness = 0.0;
    std::size_t evaluations = 0;
    double wall_seconds = 0.0;
};

namespace detail {

inline double monotonic_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

inline void require_finite(std::span<const double> fitness, std::size_t per_group,
                           std::size_t iteration) {
    for (std::size_t r = 0; r < fitness.size(); ++r)
        if (!std::isfinite(fitness[r]))
            throw NonFiniteFitnessError(r / per_group, r % per_group, iteration);
}

} // namespace detail

/// Install strictly better fitness into the per-particle, per-group and
/// population bests. Ties keep the incumbent; scan order is row-major, so
/// tie-breaking is deterministic.
inline void update_bests(SwarmState& s, std::span<const double> fitness) {
    if (fitness.size() != s.particle_count())
        throw std::invalid_argument("update_bests: fitness size != particle count");
    const std::size_t N = s.per_group;
    const std::size_t D = s.dim;
    for (std::size_t g = 0; g < s.groups; ++g) {
        for (std::size_t n = 0; n < N; ++n) {
            const std::size_t r = g * N + n;
            if (fitness[r] < s.pbest_f[r]) {
                s.pbest_f[r] = fitness[r];
                std::copy_n(s.x.data() + r * D, D, s.pbest_x.data() + r * D);
            }
        }
        for (std::size_t n = 0; n < N; ++n) {
            const std::size_t r = g * N + n;
            if (s.pbest_f[r] < s.gbest_f[g]) {
                s.gbest_f[g] = s.pbest_f[r];
                std::copy_n(s.pbest_x.data() + r * D, D, s.gbest_x.data() + g * D);
            }
        }
        if (s.gbest_f[g] < s.tbest_f) {
            s.tbest_f = s.gbest_f[g];
            std::copy_n(s.gbest_x.data() + g * D, D, s.tbest_x.data());
        }
    }
}

/// Batched optimizer loop: evaluate all particles, update the bests, then
/// advance the swarm, for exactly `iterations` rounds.
inline RunReport run_dtpso(const FitnessProblem& problem, const HyperMatrix& hypers,
                           std::size_t groups, std::size_t per_group,
                           std::size_t iterations, std::uint64_t seed) {
    if (iterations < 1)
        throw std::invalid_argument("run_dtpso: iteration count must be >= 1");
    if (problem.bounds().dimension() != problem.dimension())
        throw std::invalid_argument("run_dtpso: problem bounds do not match its dimension");

    const double t0 = detail::monotonic_seconds();
    RngStream rng(seed);
    SwarmState s = init_swarm(hypers, problem.bounds(), groups, per_group,
                              problem.dimension(), rng);
    std::vector<double> fitness(s.particle_count());

    RunReport report;
    report.algorithm = "dtpso";
    report.problem = problem.name();
    report.seed = seed;
    report.trace.reserve(iterations);
    for (std::size_t k = 1; k <= iterations; ++k) {
        problem.evaluate_rows(s.x, s.particle_count(), fitness);
        detail::require_finite(fitness, s.per_group, k);
        update_bests(s, fitness);
        report.trace.push_back(s.tbest_f);
        step(s, hypers, problem.bounds(), rng, k, iterations);
    }
    report.iterations = iterations;
    report.final_point = s.tbest_x;
    report.final_fitness = s.tbest_f;
    report.evaluations = s.particle_count() * iterations;
    report.wall_seconds = detail::monotonic_seconds() - t0;
    return report;
}

/// Per-particle reference implementation of the grouped update rule. Exists
/// to certify that the batched path computes the same trajectories and to
/// time the particle-wise code path; it shares the batched path's draw order
/// so the two produce identical results from the same seed.
inline RunReport run_dppso_reference(const FitnessProblem& problem,
                                     const HyperMatrix& hypers, std::size_t groups,
                                     std::size_t per_group, std::size_t iterations,
                                     std::uint64_t seed) {
    if (iterations < 1)
        throw std::invalid_argument("run_dppso_reference: iteration count must be >= 1");
    hypers.validate();
    if (hypers.group_count() != groups)
        throw std::invalid_argument("run_dppso_reference: hyper matrix group count != G");
    const SearchBounds& bounds = problem.bounds();
    const std::size_t D = problem.dimension();
    if (bounds.dimension() != D)
        throw std::invalid_argument("run_dppso_reference: problem bounds do not match dimension");

    struct Particle {
        std::vector<double> x, v, pbest_x;
        double pbest_f = std::numeric_limits<double>::infinity();
    };

    const double t0 = detail::monotonic_seconds();
    RngStream rng(seed);

    std::vector<std::vector<Particle>> swarm(groups, std::vector<Particle>(per_group));
    for (auto& group : swarm)
        for (Particle& p : group) {
            p.x.resize(D);
            for (std::size_t d = 0; d < D; ++d)
                p.x[d] = rng.uniform(bounds.x_lo[d], bounds.x_hi[d]);
        }
    for (std::size_t g = 0; g < groups; ++g) {
        const GroupHypers& h = hypers.groups[g];
        for (Particle& p : swarm[g]) {
            p.v.resize(D);
            for (std::size_t d = 0; d < D; ++d) {
                const double vmax = h.v_limit * bounds.span(d);
                p.v[d] = rng.uniform(-vmax, vmax);
            }
        }
    }
    for (auto& group : swarm)
        for (Particle& p : group) p.pbest_x = p.x;

    std::vector<std::vector<double>> gbest(groups, std::vector<double>(D, 0.0));
    std::vector<double> gbest_f(groups, std::numeric_limits<double>::infinity());
    std::vector<double> tbest(D, 0.0);
    double tbest_f = std::numeric_limits<double>::infinity();

    RunReport report;
    report.algorithm = "dppso";
    report.problem = problem.name();
    report.seed = seed;
    report.trace.reserve(iterations);

    for (std::size_t k = 1; k <= iterations; ++k) {
        for (std::size_t g = 0; g < groups; ++g)
            for (std::size_t n = 0; n < per_group; ++n) {
                Particle& p = swarm[g][n];
                const double f = problem.evaluate_point(p.x);
                if (!std::isfinite(f)) throw NonFiniteFitnessError(g, n, k);
                if (f < p.pbest_f) {
                    p.pbest_f = f;
                    p.pbest_x = p.x;
                }
            }
        for (std::size_t g = 0; g < groups; ++g) {
            for (std::size_t n = 0; n < per_group; ++n)
                if (swarm[g][n].pbest_f < gbest_f[g]) {
                    gbest_f[g] = swarm[g][n].pbest_f;
                    gbest[g] = swarm[g][n].pbest_x;
                }
            if (gbest_f[g] < tbest_f) {
                tbest_f = gbest_f[g];
                tbest = gbest[g];
            }
        }
        report.trace.push_back(tbest_f);

        const std::vector<double> omega = inertia_at(hypers, k, iterations);
        const StepRandoms rand = draw_step_randoms(groups, per_group, rng);
        for (std::size_t g = 0; g < groups; ++g) {
            const GroupHypers& h = hypers.groups[g];
            const double w = omega[g];
            for (std::size_t n = 0; n < per_group; ++n) {
                Particle& p = swarm[g][n];
                const std::size_t r = g * per_group + n;
                const double a1 = h.c1 * rand.r1[r];
                const double a2 = h.c2 * rand.r2[r];
                const double a3 = h.c3 * rand.r3[r];
                for (std::size_t d = 0; d < D; ++d) {
                    const double vmax = h.v_limit * (bounds.x_hi[d] - bounds.x_lo[d]);
                    double nv = w * p.v[d] + a1 * (p.pbest_x[d] - p.x[d]) +
                                a2 * (gbest[g][d] - p.x[d]) + a3 * (tbest[d] - p.x[d]);
                    nv = std::clamp(nv, -vmax, vmax);
                    p.v[d] = nv;
                    p.x[d] = std::clamp(p.x[d] + nv, bounds.x_lo[d], bounds.x_hi[d]);
                }
            }
        }
    }
    report.iterations = iterations;
    report.final_point = tbest;
    report.final_fitness = tbest_f;
    report.evaluations = groups * per_group * iterations;
    report.wall_seconds = detail::monotonic_seconds() - t0;
    return report;
}

/// Classic single-swarm PSO baseline (two attraction terms, one particle
/// population), used for experimental comparison.
inline RunReport run_pso_reference(const FitnessProblem& problem, std::size_t iterations,
                                   std::size_t population, std::uint64_t seed,
                                   const PsoParams& params = PsoParams{}) {
    if (iterations < 1)
        throw std::invalid_argument("run_pso_reference: iteration count must be >= 1");
    if (population < 1)
        throw std::invalid_argument("run_pso_reference: population must be >= 1");
    const SearchBounds& bounds = problem.bounds();
    const std::size_t D = problem.dimension();

    struct Particle {
        std::vector<double> x, v, pbest_x;
        double pbest_f = std::numeric_limits<double>::infinity();
    };

    const double t0 = detail::monotonic_seconds();
    RngStream rng(seed);

    std::vector<Particle> swarm(population);
    for (Particle& p : swarm) {
        p.x.resize(D);
        for (std::size_t d = 0; d < D; ++d)
            p.x[d] = rng.uniform(bounds.x_lo[d], bounds.x_hi[d]);
    }
    for (Particle& p : swarm) {
        p.v.resize(D);
        for (std::size_t d = 0; d < D; ++d) {
            const double vmax = params.v_limit * bounds.span(d);
            p.v[d] = rng.uniform(-vmax, vmax);
        }
    }
    for (Particle& p : swarm) p.pbest_x = p.x;

    std::vector<double> gbest(D, 0.0);
    double gbest_f = std::numeric_limits<double>::infinity();

    RunReport report;
    report.algorithm = "pso";
    report.problem = problem.name();
    report.seed = seed;
    report.trace.reserve(iterations);

    std::vector<double> r1(population), r2(population);
    for (std::size_t k = 1; k <= iterations; ++k) {
        for (std::size_t m = 0; m < population; ++m) {
            Particle& p = swarm[m];
            const double f = problem.evaluate_point(p.x);
            if (!std::isfinite(f)) throw NonFiniteFitnessError(0, m, k);
            if (f < p.pbest_f) {
                p.pbest_f = f;
                p.pbest_x = p.x;
            }
        }
        for (const Particle& p : swarm)
            if (p.pbest_f < gbest_f) {
                gbest_f = p.pbest_f;
                gbest = p.pbest_x;
            }
        report.trace.push_back(gbest_f);

        const double w = params.omega_init -
                         (params.omega_init - params.omega_end) *
                             static_cast<double>(k) / static_cast<double>(iterations);
        for (double& u : r1) u = rng.uniform();
        for (double& u : r2) u = rng.uniform();
        for (std::size_t m = 0; m < population; ++m) {
            Particle& p = swarm[m];
            const double a1 = params.c1 * r1[m];
            const double a2 = params.c2 * r2[m];
            for (std::size_t d = 0; d < D; ++d) {
                const double vmax = params.v_limit * (bounds.x_hi[d] - bounds.x_lo[d]);
                double nv = w * p.v[d] + a1 * (p.pbest_x[d] - p.x[d]) +
                            a2 * (gbest[d] - p.x[d]);
                nv = std::clamp(nv, -vmax, vmax);
                p.v[d] = nv;
                p.x[d] = std::clamp(p.x[d] + nv, bounds.x_lo[d], bounds.x_hi[d]);
            }
        }
    }
    report.iterations = iterations;
    report.final_point = gbest;
    report.final_fitness = gbest_f;
    report.evaluations = population * iterations;
    report.wall_seconds = detail::monotonic_seconds() - t0;
    return report;
}

} // namespace swarmforge
