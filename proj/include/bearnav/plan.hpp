#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bearnav/geom.hpp"

namespace bearnav::plan {

// Planning world: rectangular state bounds, polygonal obstacles, known
// landmark positions, and the tree root (which is the navigation goal).
struct Environment {
    geom::Polytope2 bounds;
    std::vector<std::vector<Vec2>> obstacles;
    std::vector<Vec2> landmarks;
    Vec2 root;

    bool inside_obstacle(const Vec2& p) const;
    bool in_free_space(const Vec2& p) const;
    // Collision-check sampling step: 0.01 of the bounds diagonal.
    double collision_step() const;
};

// Tree over sampled states; nodes[0] is the root and parent[0] == 0.
// collision_samples retains the rejected samples that were inside obstacles.
struct PlanTree {
    std::vector<Vec2> nodes;
    std::vector<int> parent;
    std::vector<Vec2> collision_samples;
};

// Convex Voronoi-like region for edge (i, j): all bisectors with node i
// except the one against its parent j, intersected with the state bounds.
struct Cell {
    int i = -1;
    int j = -1;
    geom::Polytope2 region;
};

// RRT* rooted at env.root with steering radius eta and rewiring neighborhood
// min(eta, 2*eta*sqrt(log n / n)). Rejected samples whose position lies
// inside an obstacle are appended to collision_samples.
PlanTree rrt_star(const Environment& env, std::uint64_t seed, int max_iter, double eta);

// Iterative shortcutting: a non-leaf node is dropped when all its children
// and every sample it previously absorbed connect straight to its parent
// with clearance margin. Collision samples pass through unchanged.
PlanTree simplify_tree(const PlanTree& tree, const Environment& env);

std::vector<Cell> build_cells(const PlanTree& tree, const Environment& env);

// Edge (i, parent(i)) whose cell contains x; ties broken by distance to
// node i, then by lowest node index. Throws NotCovered.
std::pair<int, int> locate_edge(const Vec2& x, const PlanTree& tree,
                                const std::vector<Cell>& cells);

}  // namespace bearnav::plan
