#pragma once

#include <string>
#include <vector>

#include "bearnav/bearing.hpp"
#include "bearnav/plan.hpp"
#include "bearnav/synth.hpp"

namespace bearnav::sim {

enum class RobotModel { integrator, unicycle };
enum class SensingMode { displacement, bearing_full, bearing_fov };

struct RobotState {
    Vec2 position;
    double heading = 0.0;  // wrapped to (-pi, pi]
    RobotModel model = RobotModel::integrator;
};

struct SimConfig {
    double dt = 0.01;
    double v_nom = 0.5;
    double eps_switch = 1e-3;
    double eps_goal = 0.05;
    int max_steps = 50000;
    SensingMode sensing = SensingMode::displacement;
    RobotModel robot = RobotModel::integrator;
    double alpha = 0.1;
    double beta_gain = 0.5;
    double fov_half_angle = M_PI / 4.0;
    double max_range = std::numeric_limits<double>::infinity();
    // Consecutive sensing dropouts bridged by holding the last input.
    int max_hold_steps = 10;
};

struct LogRow {
    double t = 0.0;
    double x = 0.0, y = 0.0;
    double heading = 0.0;
    int edge_i = -1, edge_j = -1;
    double ux = 0.0, uy = 0.0;
    double clf_value = 0.0;
    double min_cbf_value = 0.0;  // +inf when the edge has no active CBF row
    int visible = 0;
};

struct TrajectoryLog {
    std::vector<LogRow> rows;
};

enum class RunStatus { success, timeout, sensing_starved };

struct RunResult {
    RunStatus status = RunStatus::timeout;
    TrajectoryLog log;
    int steps = 0;
};

struct SensedInput {
    Vec2 u;
    int visible = 0;
};

// Raw (un-normalized) control for the active edge under the given sensing
// mode. Bearing modes run measure -> rescale/reconstruct -> gain; the fixed
// landmark falls back along the controller's ranking on degenerate geometry.
SensedInput raw_input(const Vec2& x, const synth::EdgeController& ctrl, SensingMode mode,
                      double heading, const bearing::CameraModel& camera,
                      const std::vector<Vec2>& landmarks);

// Constant-speed normalization: v_nom * u / |u|, zero input stays zero.
Vec2 normalize(const Vec2& u, double v_nom);

Vec2 step_integrator(const Vec2& x, const Vec2& u, double dt);

// Standard unicycle low-level mapping: forward speed alpha * cos(error),
// yaw rate beta * sin(error), explicit Euler on pose.
RobotState step_unicycle(const RobotState& state, const Vec2& u, double dt, double alpha,
                         double beta_gain);

// Executes the controller sequence from `start` until the root is reached,
// switching edges at exit faces. Throws NotCovered if no cell contains start.
RunResult run(const plan::Environment& env, const plan::PlanTree& tree,
              const std::vector<plan::Cell>& cells,
              const std::vector<synth::EdgeController>& controllers, const Vec2& start,
              const SimConfig& cfg);

std::string to_csv(const TrajectoryLog& log);

}  // namespace bearnav::sim
