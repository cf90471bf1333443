#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "swarmforge/rng.hpp"

using namespace swarmforge;

TEST_CASE("same seed reproduces the stream") {
    RngStream a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform() == b.uniform());
}

TEST_CASE("different seeds give different streams") {
    RngStream a(1), b(2);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        if (a.uniform() == b.uniform()) ++same;
    REQUIRE(same < 5);
}

TEST_CASE("uniform matches the raw engine mapping") {
    // The stream is pinned to the standard-specified mt19937_64 sequence with
    // the top-53-bit mapping, so artifacts stay reproducible across builds.
    const std::uint64_t seed = 987654321;
    RngStream stream(seed);
    std::mt19937_64 engine(seed);
    for (int i = 0; i < 1000; ++i) {
        const double expected = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        REQUIRE(stream.uniform() == expected);
    }
}

TEST_CASE("the underlying engine is the standard one") {
    // The C++ standard fixes the 10000th output of a default-seeded
    // mt19937_64; if this fails, the engine is not what artifacts assume.
    std::mt19937_64 engine;
    engine.discard(9999);
    REQUIRE(engine() == 9981545732273789042ULL);
}

TEST_CASE("uniform() stays in [0, 1)") {
    RngStream rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("ranged uniform respects its interval and center") {
    RngStream rng(11);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform(-3.0, 5.0);
        REQUIRE(u >= -3.0);
        REQUIRE(u <= 5.0);
        sum += u;
    }
    REQUIRE_THAT(sum / n, Catch::Matchers::WithinAbs(1.0, 0.05));
}

TEST_CASE("seed is recorded") {
    RngStream rng(424242);
    REQUIRE(rng.seed() == 424242);
}

TEST_CASE("derived seeds are stable and distinct") {
    REQUIRE(derive_seed(1, "world") == derive_seed(1, "world"));
    REQUIRE(derive_seed(1, "world") != derive_seed(1, "plan"));
    REQUIRE(derive_seed(1, "world") != derive_seed(2, "world"));
    REQUIRE(derive_seed(1, "plan", 0) != derive_seed(1, "plan", 1));
    REQUIRE(derive_seed(1, "plan", 3) == derive_seed(1, "plan", 3));

    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(99, "trial", i));
    REQUIRE(seen.size() == 1000);
}
