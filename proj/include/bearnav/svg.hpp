#pragma once

#include <string>
#include <vector>

#include "bearnav/plan.hpp"
#include "bearnav/sim.hpp"

namespace bearnav::svg {

// Scene rendering: obstacles as gray polygons, tree edges green, collision
// samples red, landmarks blue, trajectories as one blue polyline each.
std::string render_scene(const plan::Environment& env, const plan::PlanTree& tree,
                         const std::vector<sim::TrajectoryLog>& trajectories);

}  // namespace bearnav::svg
