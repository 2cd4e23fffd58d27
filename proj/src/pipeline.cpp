#include "bearnav/pipeline.hpp"

#include <algorithm>

namespace bearnav::pipeline {

PlanResult run_plan(const plan::Environment& env, std::uint64_t seed, int max_iter, double eta) {
    PlanResult out;
    out.raw = plan::rrt_star(env, seed, max_iter, eta);
    out.simplified = plan::simplify_tree(out.raw, env);
    return out;
}

SynthResult run_synth(const plan::Environment& env, const plan::PlanTree& tree, double c_v,
                      double c_h, double u_max) {
    SynthResult out;
    const auto cells = plan::build_cells(tree, env);
    const auto model = synth::SystemModel::unit_box(u_max);
    for (const plan::Cell& cell : cells) {
        const auto clf = synth::build_clf(tree.nodes[cell.i], tree.nodes[cell.j], c_v);
        const auto cbf = synth::build_cbf(tree.nodes[cell.i], tree.nodes[cell.j], cell,
                                          tree.collision_samples, c_h);
        try {
            auto ctrl = synth::synthesize_gain(cell, clf, cbf, model, env.landmarks);
            if (ctrl.s_min < 1.0)
                out.warnings.push_back("edge (" + std::to_string(cell.i) + "," +
                                       std::to_string(cell.j) + "): fixed landmark " +
                                       std::to_string(ctrl.fixed_landmark) + " has s_min " +
                                       std::to_string(ctrl.s_min) +
                                       " < 1; rescaled input may leave the input set");
            out.controllers.push_back(std::move(ctrl));
        } catch (const SynthesisInfeasible&) {
            out.infeasible_edges.push_back({cell.i, cell.j});
        }
    }
    return out;
}

void attach_rankings(std::vector<synth::EdgeController>& controllers,
                     const std::vector<plan::Cell>& cells, const std::vector<Vec2>& landmarks) {
    for (auto& ctrl : controllers) {
        const auto cell = std::find_if(cells.begin(), cells.end(), [&](const plan::Cell& c) {
            return c.i == ctrl.i && c.j == ctrl.j;
        });
        if (cell != cells.end()) ctrl.landmark_ranking = synth::rank_landmarks(*cell, landmarks);
    }
}

sim::RunResult run_sim(const plan::Environment& env, const plan::PlanTree& tree,
                       const std::vector<plan::Cell>& cells,
                       std::vector<synth::EdgeController>& controllers, const Vec2& start,
                       const sim::SimConfig& cfg) {
    return sim::run(env, tree, cells, controllers, start, cfg);
}

}  // namespace bearnav::pipeline
