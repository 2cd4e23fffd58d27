#include "bearnav/plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bearnav::plan {

namespace {

// Uniform doubles derived from raw mt19937_64 output so artifact bytes do not
// depend on the standard library's distribution implementation.
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = (engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

  private:
    std::mt19937_64 engine_;
};

int nearest_node(const std::vector<Vec2>& nodes, const Vec2& p) {
    int best = 0;
    double best_d2 = (nodes[0] - p).squaredNorm();
    for (int k = 1; k < static_cast<int>(nodes.size()); ++k) {
        const double d2 = (nodes[k] - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = k;
        }
    }
    return best;
}

Vec2 steer(const Vec2& from, const Vec2& to, double eta) {
    const Vec2 d = to - from;
    const double len = d.norm();
    if (len <= eta) return to;
    return from + (eta / len) * d;
}

// Refresh subtree costs after a rewire changed parent[child].
void propagate_cost(std::vector<double>& cost, const std::vector<int>& parent,
                    const std::vector<Vec2>& nodes, int changed) {
    const int n = static_cast<int>(nodes.size());
    std::vector<int> stack = {changed};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int c = 1; c < n; ++c) {
            if (parent[c] != v || c == v) continue;
            cost[c] = cost[v] + (nodes[c] - nodes[v]).norm();
            stack.push_back(c);
        }
    }
}

}  // namespace

bool Environment::inside_obstacle(const Vec2& p) const {
    for (const auto& obstacle : obstacles)
        if (geom::point_in_polygon(p, obstacle)) return true;
    return false;
}

bool Environment::in_free_space(const Vec2& p) const {
    return bounds.contains(p) && !inside_obstacle(p);
}

double Environment::collision_step() const { return 0.01 * bounds.diameter(); }

PlanTree rrt_star(const Environment& env, std::uint64_t seed, int max_iter, double eta) {
    if (max_iter < 1) throw std::invalid_argument("rrt_star: max_iter must be >= 1");
    if (eta <= 0.0) throw std::invalid_argument("rrt_star: eta must be positive");

    const double step = env.collision_step();
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    for (const Vec2& v : env.bounds.vertices()) {
        xmin = std::min(xmin, v.x());
        xmax = std::max(xmax, v.x());
        ymin = std::min(ymin, v.y());
        ymax = std::max(ymax, v.y());
    }

    PlanTree tree;
    tree.nodes = {env.root};
    tree.parent = {0};
    std::vector<double> cost = {0.0};
    SampleRng rng(seed);

    for (int it = 0; it < max_iter; ++it) {
        const Vec2 sample{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
        if (env.inside_obstacle(sample)) {
            tree.collision_samples.push_back(sample);
            continue;
        }

        const int nearest = nearest_node(tree.nodes, sample);
        const Vec2 candidate = steer(tree.nodes[nearest], sample, eta);
        if ((candidate - tree.nodes[nearest]).norm() <= kGeomTol) continue;
        if (env.inside_obstacle(candidate)) {
            tree.collision_samples.push_back(candidate);
            continue;
        }

        const int n = static_cast<int>(tree.nodes.size());
        const double radius =
            std::min(eta, 2.0 * eta * std::sqrt(std::log(static_cast<double>(n)) / n));
        std::vector<int> neighbors;
        for (int k = 0; k < n; ++k)
            if ((tree.nodes[k] - candidate).norm() <= radius) neighbors.push_back(k);

        // Cheapest collision-free parent among the neighborhood (or nearest).
        int best_parent = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        auto consider = [&](int k) {
            const double c = cost[k] + (tree.nodes[k] - candidate).norm();
            if (c < best_cost && geom::segment_clear(tree.nodes[k], candidate, env, step)) {
                best_cost = c;
                best_parent = k;
            }
        };
        consider(nearest);
        for (int k : neighbors)
            if (k != nearest) consider(k);
        if (best_parent < 0) continue;  // free position, unreachable through free space

        const int added = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(candidate);
        tree.parent.push_back(best_parent);
        cost.push_back(best_cost);

        for (int k : neighbors) {
            if (k == 0 || k == best_parent) continue;
            const double through = best_cost + (tree.nodes[k] - candidate).norm();
            if (through + kGeomTol < cost[k] &&
                geom::segment_clear(candidate, tree.nodes[k], env, step)) {
                tree.parent[k] = added;
                cost[k] = through;
                propagate_cost(cost, tree.parent, tree.nodes, k);
            }
        }
    }
    return tree;
}

PlanTree simplify_tree(const PlanTree& tree, const Environment& env) {
    const int n = static_cast<int>(tree.nodes.size());
    const double step = env.collision_step();
    const double margin = 2.0 * step;

    std::vector<bool> alive(n, true);
    std::vector<int> parent = tree.parent;
    // Positions of removed nodes, attached to the node that must stay
    // straight-line reachable from them.
    std::vector<std::vector<Vec2>> absorbed(n);

    auto children_of = [&](int v) {
        std::vector<int> out;
        for (int c = 1; c < n; ++c)
            if (alive[c] && parent[c] == v) out.push_back(c);
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 1; v < n; ++v) {
            if (!alive[v]) continue;
            const std::vector<int> kids = children_of(v);
            if (kids.empty()) continue;  // leaves stay: they carry the tree frontier
            const int p = parent[v];

            bool ok = geom::segment_clear_margin(tree.nodes[v], tree.nodes[p], env, step, margin);
            for (int c : kids)
                ok = ok && geom::segment_clear_margin(tree.nodes[c], tree.nodes[p], env, step, margin);
            for (const Vec2& q : absorbed[v])
                ok = ok && geom::segment_clear_margin(q, tree.nodes[p], env, step, margin);
            if (!ok) continue;

            alive[v] = false;
            for (int c : kids) parent[c] = p;
            absorbed[p].push_back(tree.nodes[v]);
            absorbed[p].insert(absorbed[p].end(), absorbed[v].begin(), absorbed[v].end());
            absorbed[v].clear();
            changed = true;
        }
    }

    PlanTree out;
    std::vector<int> remap(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        remap[v] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(tree.nodes[v]);
    }
    for (int v = 0; v < n; ++v)
        if (alive[v]) out.parent.push_back(remap[parent[v]]);
    out.collision_samples = tree.collision_samples;
    return out;
}

std::vector<Cell> build_cells(const PlanTree& tree, const Environment& env) {
    const int n = static_cast<int>(tree.nodes.size());
    if (n < 2) throw std::invalid_argument("build_cells: tree needs at least 2 nodes");

    std::vector<Cell> cells;
    cells.reserve(n - 1);
    for (int i = 1; i < n; ++i) {
        const int j = tree.parent[i];
        std::vector<geom::Halfplane> halfplanes = env.bounds.halfplanes();
        for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            halfplanes.push_back(geom::bisector(tree.nodes[i], tree.nodes[k]));
        }
        cells.push_back({i, j, geom::Polytope2::from_halfplanes(std::move(halfplanes))});
    }
    return cells;
}

std::pair<int, int> locate_edge(const Vec2& x, const PlanTree& tree,
                                const std::vector<Cell>& cells) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Cell& cell : cells) {
        if (!cell.region.contains(x)) continue;
        const double d = (tree.nodes[cell.i] - x).norm();
        if (best < 0 || d < best_dist - kGeomTol ||
            (std::abs(d - best_dist) <= kGeomTol && cell.i < best)) {
            best = cell.i;
            best_dist = d;
        }
    }
    if (best < 0) throw NotCovered("locate_edge: point lies in no cell");
    return {best, tree.parent[best]};
}

}  // namespace bearnav::plan
