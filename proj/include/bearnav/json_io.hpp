#pragma once

#include <string>
#include <vector>

#include "bearnav/plan.hpp"
#include "bearnav/synth.hpp"

namespace bearnav::io {

// Environment JSON:
// {"bounds":[xmin,ymin,xmax,ymax], "obstacles":[[[x,y],...],...],
//  "landmarks":[[x,y],...], "root":[x,y]}
plan::Environment load_environment(const std::string& path);

std::string tree_to_json(const plan::PlanTree& tree);
plan::PlanTree tree_from_json_text(const std::string& text);
plan::PlanTree load_tree(const std::string& path);

std::string gains_to_json(const std::vector<synth::EdgeController>& controllers, double c_v,
                          double c_h, double u_max);
// Rankings are not serialized; call synth::rank_landmarks per cell afterwards.
std::vector<synth::EdgeController> gains_from_json_text(const std::string& text);
std::vector<synth::EdgeController> load_gains(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bearnav::io
