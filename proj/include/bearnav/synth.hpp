#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "bearnav/geom.hpp"
#include "bearnav/lp.hpp"
#include "bearnav/plan.hpp"

namespace bearnav::synth {

// Driftless dynamics xdot = B u with a polytopic input set {u : A_u u <= b_u}.
struct SystemModel {
    Eigen::Matrix2d B = Eigen::Matrix2d::Identity();
    std::vector<geom::Halfplane> input_set;

    // |u_i| <= u_max box (contains 0).
    static SystemModel unit_box(double u_max);
};

// Linear Lyapunov function for one edge: value(x) = exit_dir . (exit_point - x),
// zero on the exit face through the parent node and positive on the approach side.
struct EdgeClf {
    Vec2 exit_dir;   // unit vector from node i toward its parent j
    Vec2 exit_point; // parent position x_j
    double c_v = 1.0;

    double value(const Vec2& x) const { return exit_dir.dot(exit_point - x); }
    Vec2 gradient() const { return -exit_dir; }
};

// Cone barrier h(x) = normals * x + offsets (componentwise >= 0 safe), built
// from the closest retained collision sample on each side of the edge. Rows
// beyond active_rows are zero and impose nothing.
struct EdgeCbf {
    Eigen::Matrix2d normals = Eigen::Matrix2d::Zero();
    Eigen::Vector2d offsets = Eigen::Vector2d::Zero();
    double c_h = 1.0;
    int active_rows = 0;

    Eigen::Vector2d value(const Vec2& x) const { return normals * x + offsets; }
};

struct EdgeController {
    int i = -1;
    int j = -1;
    Eigen::MatrixXd gain;  // 2 x (2 * n_l), maps stacked displacements to u
    EdgeClf clf;
    EdgeCbf cbf;
    int fixed_landmark = -1;
    double s_min = 0.0;
    double s_max = 0.0;
    double margin = 0.0;
    // Fixed-landmark fallback order used at run time; not serialized.
    std::vector<int> landmark_ranking;
};

EdgeClf build_clf(const Vec2& node_i, const Vec2& node_j, double c_v);

// Collision samples inside the cell are split by the side of edge (i, j) they
// fall on (cross product sign; ties go to the upper side). The closest sample
// to the edge segment on each side defines a cone boundary line through the
// parent node, oriented so that h(node_i) > 0. Sides without samples
// contribute no row.
EdgeCbf build_cbf(const Vec2& node_i, const Vec2& node_j, const plan::Cell& cell,
                  const std::vector<Vec2>& collision_samples, double c_h);

// (s_min, s_max): nearest/farthest distance from the landmark to the cell.
// Throws LandmarkInsideCell when the landmark touches the cell.
std::pair<double, double> scale_bounds(const plan::Cell& cell, const Vec2& landmark);

// Rescaled CLF/CBF constants per the bearing controller analysis:
// c_v / s_max and c_h / s_min.
std::pair<double, double> modified_constants(double c_v, double c_h, double s_min, double s_max);

// Fixed-landmark preference for a cell: landmarks with s_min >= 1 first
// (ascending s_max), then the rest descending s_min. Landmarks inside the
// cell are excluded.
std::vector<int> rank_landmarks(const plan::Cell& cell, const std::vector<Vec2>& landmarks);

// Constraint rows of the synthesis problem at one state, in the gain's
// row-major coordinates: one CLF row, one row per active CBF row, and the
// input-set rows. Affine in x, so vertex imposition covers the whole cell.
std::vector<lp::Constraint> edge_constraints_at(const Vec2& x, const EdgeClf& clf,
                                                const EdgeCbf& cbf, const SystemModel& model,
                                                const std::vector<Vec2>& landmarks);

// Solves for the gain over the cell vertices with a max-uniform-slack LP.
// Throws SynthesisInfeasible.
EdgeController synthesize_gain(const plan::Cell& cell, const EdgeClf& clf, const EdgeCbf& cbf,
                               const SystemModel& model, const std::vector<Vec2>& landmarks);

// Stacked displacement output (l_i - x for every landmark).
Eigen::VectorXd stacked_displacements(const Vec2& x, const std::vector<Vec2>& landmarks);

}  // namespace bearnav::synth
