#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmforge/runner.hpp"

namespace swarmforge {

/// Maps a G-row hyper matrix to and from a 6G-dimensional particle so an
/// outer swarm can search over inner-swarm hyper-parameters. Decoding is
/// total over the outer search box: coordinates are clamped to their field
/// ranges and an inverted inertia pair is swapped rather than rejected.
class HyperEncoding {
public:
    explicit HyperEncoding(std::size_t group_count) : groups_(group_count) {
        if (group_count < 1)
            throw std::invalid_argument("HyperEncoding: group count must be >= 1");
    }

    std::size_t group_count() const { return groups_; }
    std::size_t dimension() const { return 6 * groups_; }

    /// Per-coordinate box the outer swarm searches; brackets every hyper
    /// value the defaults use, with margin.
    SearchBounds outer_bounds() const {
        std::vector<double> lo(dimension()), hi(dimension());
        for (std::size_t g = 0; g < groups_; ++g)
            for (std::size_t f = 0; f < 6; ++f) {
                lo[6 * g + f] = kFieldLo[f];
                hi[6 * g + f] = kFieldHi[f];
            }
        return SearchBounds{std::move(lo), std::move(hi)};
    }

    std::vector<double> flatten(const HyperMatrix& m) const {
        if (m.group_count() != groups_)
            throw std::invalid_argument("flatten: group count mismatch");
        std::vector<double> out(dimension());
        for (std::size_t g = 0; g < groups_; ++g) {
            const GroupHypers& h = m.groups[g];
            out[6 * g + 0] = h.c1;
            out[6 * g + 1] = h.c2;
            out[6 * g + 2] = h.c3;
            out[6 * g + 3] = h.omega_init;
            out[6 * g + 4] = h.omega_end;
            out[6 * g + 5] = h.v_limit;
        }
        return out;
    }

    HyperMatrix unflatten(std::span<const double> particle) const {
        if (particle.size() != dimension())
            throw std::invalid_argument("unflatten: dimension mismatch");
        HyperMatrix m;
        m.groups.resize(groups_);
        for (std::size_t g = 0; g < groups_; ++g) {
            double field[6];
            for (std::size_t f = 0; f < 6; ++f)
                field[f] = std::clamp(particle[6 * g + f], kFieldLo[f], kFieldHi[f]);
            if (field[4] > field[3]) std::swap(field[3], field[4]);
            m.groups[g] = {field[0], field[1], field[2], field[3], field[4], field[5]};
        }
        m.validate();
        return m;
    }

private:
    // Field order: c1, c2, c3, omega_init, omega_end, v_limit.
    static constexpr double kFieldLo[6] = {0.5, 0.5, 0.5, 0.1, 0.05, 0.05};
    static constexpr double kFieldHi[6] = {2.5, 2.5, 2.5, 1.0, 0.8, 1.0};

    std::size_t groups_;
};

struct InnerBudget {
    std::size_t groups = 8;
    std::size_t per_group = 10;
    std::size_t iterations = 100;
};

struct OuterBudget {
    std::size_t groups = 8;
    std::size_t per_group = 10;
    std::size_t evolutions = 500;
};

struct EvolutionReport {
    std::vector<double> best_lfv_trace;      ///< best-so-far after each evolution
    std::vector<double> evolution_lfv_trace; ///< best among that evolution's candidates
    HyperMatrix best;
    std::size_t evolutions = 0;
    std::size_t lfv_evaluations = 0; ///< inner runs executed (= G_h * N_h * evolutions)
    std::uint64_t root_seed = 0;
    std::uint64_t outer_seed = 0;     ///< drives the outer swarm
    std::uint64_t lfv_seed_root = 0;  ///< inner run i uses derive_seed(lfv_seed_root, "lfv", i)
};

/// Score one hyper-parameter candidate: decode it, run the inner optimizer
/// to its budget, and return the lowest fitness it reached. Failures inside
/// the inner run discard the candidate via +inf instead of aborting the
/// outer search.
inline double lfv_fitness(std::span<const double> candidate, const HyperEncoding& encoding,
                          const FitnessProblem& problem, const InnerBudget& budget,
                          std::uint64_t seed) {
    try {
        const HyperMatrix hypers = encoding.unflatten(candidate);
        return run_dtpso(problem, hypers, budget.groups, budget.per_group,
                         budget.iterations, seed)
            .final_fitness;
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Outer self-evolution loop: a fixed-hyper outer swarm whose particles are
/// hyper matrices for the inner swarm, scored by lfv_fitness. The outer
/// hypers stay constant across all evolutions; each inner run gets a fresh
/// derived seed.
inline EvolutionReport evolve(const FitnessProblem& problem, const InnerBudget& inner,
                              const OuterBudget& outer, std::uint64_t seed,
                              const HyperMatrix& outer_hypers = default_group_hypers(),
                              const std::function<void(std::size_t, double)>& on_evolution = {}) {
    if (outer.evolutions < 1)
        throw std::invalid_argument("evolve: evolution count must be >= 1");
    if (inner.iterations < 1)
        throw std::invalid_argument("evolve: inner iteration count must be >= 1");
    if (outer_hypers.group_count() != outer.groups)
        throw std::invalid_argument("evolve: outer hyper matrix group count != outer G");

    const HyperEncoding encoding(inner.groups);
    const SearchBounds bounds = encoding.outer_bounds();

    EvolutionReport report;
    report.root_seed = seed;
    report.outer_seed = derive_seed(seed, "outer");
    report.lfv_seed_root = derive_seed(seed, "lfv");

    RngStream outer_rng(report.outer_seed);
    SwarmState s = init_swarm(outer_hypers, bounds, outer.groups, outer.per_group,
                              encoding.dimension(), outer_rng);

    const std::size_t candidates = s.particle_count();
    std::vector<double> fitness(candidates);
    std::size_t eval_index = 0;
    for (std::size_t e = 1; e <= outer.evolutions; ++e) {
        double round_best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < candidates; ++r) {
            const std::uint64_t inner_seed =
                derive_seed(report.lfv_seed_root, "lfv", eval_index++);
            const std::span<const double> candidate{s.x.data() + r * s.dim, s.dim};
            fitness[r] = lfv_fitness(candidate, encoding, problem, inner, inner_seed);
            round_best = std::min(round_best, fitness[r]);
        }
        update_bests(s, fitness);
        report.best_lfv_trace.push_back(s.tbest_f);
        report.evolution_lfv_trace.push_back(round_best);
        if (on_evolution) on_evolution(e, s.tbest_f);
        step(s, outer_hypers, bounds, outer_rng, e, outer.evolutions);
    }

    report.best = encoding.unflatten(s.tbest_x);
    report.evolutions = outer.evolutions;
    report.lfv_evaluations = eval_index;
    return report;
}

} // namespace swarmforge
