// Minimal optimizer walkthrough: run the grouped swarm on the 30-d
// Rastrigin surface and watch the best-so-far trace fall.

#include <cstdio>

#include "swarmforge/benchmarks.hpp"
#include "swarmforge/runner.hpp"

int main() {
    using namespace swarmforge;

    const auto problem = make_benchmark("BF3");
    const HyperMatrix hypers = default_group_hypers();
    const RunReport report = run_dtpso(*problem, hypers, hypers.group_count(),
                                       /*per_group=*/10, /*iterations=*/1400,
                                       /*seed=*/42);

    std::printf("%-12s %zu groups x 10 particles, %zu iterations\n",
                problem->name().c_str(), hypers.group_count(), report.trace.size());
    for (std::size_t k = 0; k < report.trace.size(); k += 200)
        std::printf("  iter %4zu   best %.6g\n", k + 1, report.trace[k]);
    std::printf("  final       %.6g (%.2f s)\n", report.final_fitness,
                report.wall_seconds);
    return 0;
}
