#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bearnav/plan.hpp"
#include "bearnav/sim.hpp"
#include "bearnav/synth.hpp"

namespace bearnav::pipeline {

struct PlanResult {
    plan::PlanTree raw;
    plan::PlanTree simplified;
};

struct SynthResult {
    std::vector<synth::EdgeController> controllers;
    std::vector<std::pair<int, int>> infeasible_edges;
    std::vector<std::string> warnings;
};

PlanResult run_plan(const plan::Environment& env, std::uint64_t seed, int max_iter, double eta);

// Synthesizes every edge of the (already simplified) tree; infeasible edges
// are collected rather than thrown.
SynthResult run_synth(const plan::Environment& env, const plan::PlanTree& tree, double c_v,
                      double c_h, double u_max);

// Rebuilds the per-edge landmark fallback rankings after loading gains from disk.
void attach_rankings(std::vector<synth::EdgeController>& controllers,
                     const std::vector<plan::Cell>& cells, const std::vector<Vec2>& landmarks);

sim::RunResult run_sim(const plan::Environment& env, const plan::PlanTree& tree,
                       const std::vector<plan::Cell>& cells,
                       std::vector<synth::EdgeController>& controllers, const Vec2& start,
                       const sim::SimConfig& cfg);

}  // namespace bearnav::pipeline
