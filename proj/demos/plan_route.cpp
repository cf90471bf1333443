// Dynamic planning walkthrough: generate a seeded world, plan a handful of
// frames while the obstacles move, and drop an SVG of the final frame.

#include <cstdio>

#include "swarmforge/serialize.hpp"

int main() {
    using namespace swarmforge;

    ScenarioConfig scenario; // 366x366 cm map, six movers, two fixed blocks
    PolygonWorld world = generate_world(scenario, derive_seed(7, "world"));

    PlannerConfig config;
    config.window_carryover = true; // let the convergence window span frames

    PlanRecord last;
    std::optional<Path> warm;
    std::vector<double> window;
    for (std::size_t frame = 0; frame < 10; ++frame) {
        last = plan_frame(world, warm, evolved_path_hypers(), config,
                          derive_seed(7, "plan", frame), &window);
        warm = last.best_path;
        std::printf("frame %2zu  length %7.2f cm  Q=%zu  %-9s after %2zu iterations\n",
                    frame, last.length, last.intersections, last.stop_reason.c_str(),
                    last.iterations);
        world = step_world(world, scenario.dt);
    }

    write_text_file("route.svg", render_frame_svg(world, &last.best_path));
    std::printf("wrote route.svg\n");
    return 0;
}
