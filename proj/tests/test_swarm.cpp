#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "swarmforge/swarm.hpp"

using namespace swarmforge;

namespace {

HyperMatrix two_group_hypers() {
    HyperMatrix m;
    m.groups = {{2.0, 1.0, 1.0, 0.9, 0.3, 0.5}, {1.5, 2.0, 0.5, 0.7, 0.2, 0.25}};
    return m;
}

SearchBounds box(double lo, double hi, std::size_t dim) {
    return SearchBounds::uniform_box(lo, hi, dim);
}

} // namespace

TEST_CASE("hyper matrix validation") {
    HyperMatrix m = two_group_hypers();
    REQUIRE_NOTHROW(m.validate());

    SECTION("empty matrix rejected") {
        m.groups.clear();
        REQUIRE_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SECTION("inverted inertia pair rejected") {
        m.groups[0].omega_end = m.groups[0].omega_init + 0.1;
        REQUIRE_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SECTION("negative acceleration rejected") {
        m.groups[1].c2 = -0.5;
        REQUIRE_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SECTION("velocity limit outside (0, 1] rejected") {
        m.groups[0].v_limit = 0.0;
        REQUIRE_THROWS_AS(m.validate(), std::invalid_argument);
        m.groups[0].v_limit = 1.5;
        REQUIRE_THROWS_AS(m.validate(), std::invalid_argument);
    }
    SECTION("omega above one rejected") {
        m.groups[0].omega_init = 1.2;
        REQUIRE_THROWS_AS(m.validate(), std::invalid_argument);
    }
}

TEST_CASE("default hyper matrix holds the stock eight-group values") {
    const HyperMatrix m = default_group_hypers();
    REQUIRE(m.group_count() == 8);
    REQUIRE_NOTHROW(m.validate());
    const GroupHypers expected[8] = {
        {2, 1, 1, 0.4, 0.2, 0.2}, {1, 1, 2, 0.7, 0.3, 0.1}, {2, 2, 1, 0.8, 0.1, 0.6},
        {2, 2, 1, 0.8, 0.6, 0.4}, {2, 1, 2, 0.2, 0.1, 0.3}, {2, 1, 2, 0.9, 0.5, 0.5},
        {1, 2, 2, 0.4, 0.1, 0.8}, {1, 2, 2, 0.9, 0.3, 0.3}};
    for (std::size_t g = 0; g < 8; ++g) REQUIRE(m.groups[g] == expected[g]);
}

TEST_CASE("evolved path hypers are valid and eight groups") {
    const HyperMatrix m = evolved_path_hypers();
    REQUIRE(m.group_count() == 8);
    REQUIRE_NOTHROW(m.validate());
}

TEST_CASE("search bounds") {
    const SearchBounds b = box(-2.0, 3.0, 4);
    REQUIRE(b.dimension() == 4);
    REQUIRE(b.span(0) == 5.0);
    REQUIRE(b.v_max(GroupHypers{1, 1, 1, 0.9, 0.4, 0.2}, 1) == 1.0);

    // The two-argument constructor validates eagerly, so malformed bounds
    // never exist as live objects.
    SECTION("inverted bounds rejected") {
        REQUIRE_THROWS_AS(SearchBounds({1.0}, {0.0}), std::invalid_argument);
    }
    SECTION("mismatched lengths rejected") {
        REQUIRE_THROWS_AS(SearchBounds({0.0, 0.0}, {1.0}), std::invalid_argument);
    }
    SECTION("empty bounds rejected") {
        REQUIRE_THROWS_AS(SearchBounds({}, {}), std::invalid_argument);
    }
}

TEST_CASE("inertia schedule is linear from omega_init to omega_end") {
    const HyperMatrix m = two_group_hypers();
    const std::size_t T = 10;
    const std::vector<double> at0 = inertia_at(m, 0, T);
    const std::vector<double> atT = inertia_at(m, T, T);
    const std::vector<double> mid = inertia_at(m, 5, T);
    for (std::size_t g = 0; g < 2; ++g) {
        REQUIRE_THAT(at0[g], Catch::Matchers::WithinRel(m.groups[g].omega_init, 1e-15));
        REQUIRE_THAT(atT[g], Catch::Matchers::WithinRel(m.groups[g].omega_end, 1e-15));
        const double expected =
            m.groups[g].omega_init - (m.groups[g].omega_init - m.groups[g].omega_end) * 0.5;
        REQUIRE_THAT(mid[g], Catch::Matchers::WithinRel(expected, 1e-15));
    }
    REQUIRE_THROWS_AS(inertia_at(m, 1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(inertia_at(m, 11, 10), std::invalid_argument);
}

TEST_CASE("init_swarm shapes, ranges and sentinels") {
    const HyperMatrix m = two_group_hypers();
    const SearchBounds b = box(-10.0, 10.0, 3);
    RngStream rng(99);
    const SwarmState s = init_swarm(m, b, 2, 5, 3, rng);

    REQUIRE(s.groups == 2);
    REQUIRE(s.per_group == 5);
    REQUIRE(s.dim == 3);
    REQUIRE(s.x.size() == 30);
    REQUIRE(s.v.size() == 30);
    REQUIRE(s.pbest_x == s.x);
    REQUIRE(std::all_of(s.pbest_f.begin(), s.pbest_f.end(),
                        [](double f) { return std::isinf(f); }));
    REQUIRE(std::isinf(s.tbest_f));
    REQUIRE(s.iteration == 0);

    for (double x : s.x) {
        REQUIRE(x >= -10.0);
        REQUIRE(x <= 10.0);
    }
    for (std::size_t g = 0; g < 2; ++g) {
        const double vmax = m.groups[g].v_limit * 20.0;
        for (std::size_t i = 0; i < 5 * 3; ++i) {
            const double v = s.v[g * 15 + i];
            REQUIRE(v >= -vmax);
            REQUIRE(v <= vmax);
        }
    }
}

TEST_CASE("init_swarm draw order: all positions first, then velocities") {
    const HyperMatrix m = two_group_hypers();
    const SearchBounds b = box(-1.0, 2.0, 4);
    RngStream rng(555);
    const SwarmState s = init_swarm(m, b, 2, 3, 4, rng);

    // Replay the documented order with a fresh stream on the same seed.
    RngStream replay(555);
    for (std::size_t i = 0; i < 2 * 3 * 4; ++i) {
        const std::size_t d = i % 4;
        REQUIRE(s.x[i] == replay.uniform(b.x_lo[d], b.x_hi[d]));
    }
    for (std::size_t g = 0; g < 2; ++g)
        for (std::size_t i = 0; i < 3 * 4; ++i) {
            const double vmax = m.groups[g].v_limit * b.span(i % 4);
            REQUIRE(s.v[g * 12 + i] == replay.uniform(-vmax, vmax));
        }
}

TEST_CASE("init_swarm rejects inconsistent arguments") {
    const HyperMatrix m = two_group_hypers();
    const SearchBounds b = box(0.0, 1.0, 3);
    RngStream rng(1);
    REQUIRE_THROWS_AS(init_swarm(m, b, 3, 4, 3, rng), std::invalid_argument); // G mismatch
    REQUIRE_THROWS_AS(init_swarm(m, b, 2, 4, 2, rng), std::invalid_argument); // D mismatch
    REQUIRE_THROWS_AS(init_swarm(m, b, 2, 0, 3, rng), std::invalid_argument);
}

TEST_CASE("step matches a hand-rolled per-particle update") {
    const HyperMatrix m = two_group_hypers();
    const SearchBounds b = box(-5.0, 5.0, 3);
    RngStream rng(2024);
    SwarmState s = init_swarm(m, b, 2, 4, 3, rng);

    // Give the bests distinct, plausible values.
    for (std::size_t r = 0; r < 8; ++r) s.pbest_f[r] = static_cast<double>(r);
    for (std::size_t i = 0; i < s.pbest_x.size(); ++i) s.pbest_x[i] *= 0.5;
    s.gbest_x.assign({1.0, -2.0, 0.5, /* group 1 */ -1.0, 0.25, 3.0});
    s.tbest_x.assign({0.1, 0.2, -0.3});

    // The oracle consumes the same randoms from a cloned stream.
    RngStream clone(2024);
    init_swarm(m, b, 2, 4, 3, clone); // advance past initialization draws
    const StepRandoms rand = draw_step_randoms(2, 4, clone);

    const std::size_t k = 3, T = 7;
    const std::vector<double> omega = inertia_at(m, k, T);
    std::vector<double> want_x = s.x, want_v = s.v;
    for (std::size_t g = 0; g < 2; ++g)
        for (std::size_t n = 0; n < 4; ++n) {
            const std::size_t r = g * 4 + n;
            const GroupHypers& h = m.groups[g];
            for (std::size_t d = 0; d < 3; ++d) {
                const std::size_t i = r * 3 + d;
                const double vmax = h.v_limit * 10.0;
                double nv = omega[g] * want_v[i] +
                            h.c1 * rand.r1[r] * (s.pbest_x[i] - want_x[i]) +
                            h.c2 * rand.r2[r] * (s.gbest_x[g * 3 + d] - want_x[i]) +
                            h.c3 * rand.r3[r] * (s.tbest_x[d] - want_x[i]);
                nv = std::clamp(nv, -vmax, vmax);
                want_v[i] = nv;
                want_x[i] = std::clamp(want_x[i] + nv, -5.0, 5.0);
            }
        }

    step(s, m, b, rng, k, T);
    REQUIRE(s.iteration == k);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        REQUIRE(s.x[i] == want_x[i]);
        REQUIRE(s.v[i] == want_v[i]);
    }
}

TEST_CASE("step keeps velocities and positions clipped") {
    HyperMatrix m = two_group_hypers();
    for (GroupHypers& h : m.groups) h.v_limit = 0.1;
    const SearchBounds b = box(0.0, 1.0, 2);
    RngStream rng(31);
    SwarmState s = init_swarm(m, b, 2, 6, 2, rng);
    s.gbest_x.assign(4, 50.0); // far outside, to provoke large velocities
    s.tbest_x.assign(2, -50.0);

    for (std::size_t k = 1; k <= 5; ++k) step(s, m, b, rng, k, 5);
    for (double v : s.v) REQUIRE(std::abs(v) <= 0.1 + 1e-15);
    for (double x : s.x) {
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 1.0);
    }
}

TEST_CASE("step randoms are drawn r1 block, then r2, then r3") {
    RngStream rng(77), replay(77);
    const StepRandoms r = draw_step_randoms(2, 3, rng);
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(r.r1[i] == replay.uniform());
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(r.r2[i] == replay.uniform());
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(r.r3[i] == replay.uniform());
}
