#include "bearnav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bearnav/format.hpp"

namespace bearnav::sim {

namespace {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

// Candidate (f, f') pairs for partial-view reconstruction, best-conditioned
// first (largest angle between the two visible bearings).
std::vector<std::pair<int, int>> reconstruction_pairs(
    const std::vector<bearing::BearingObservation>& obs, const std::vector<int>& ranking) {
    auto rank_of = [&](int id) {
        const auto it = std::find(ranking.begin(), ranking.end(), id);
        return it == ranking.end() ? static_cast<int>(ranking.size())
                                   : static_cast<int>(it - ranking.begin());
    };
    struct Pair {
        int f, f2;
        double sine;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < obs.size(); ++a) {
        for (std::size_t b = a + 1; b < obs.size(); ++b) {
            int f = obs[a].landmark_id, f2 = obs[b].landmark_id;
            if (rank_of(f2) < rank_of(f)) std::swap(f, f2);
            pairs.push_back({f, f2, std::abs(geom::cross2(obs[a].beta, obs[b].beta))});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
        if (l.sine != r.sine) return l.sine > r.sine;
        if (l.f != r.f) return l.f < r.f;
        return l.f2 < r.f2;
    });
    std::vector<std::pair<int, int>> out;
    for (const Pair& p : pairs) out.push_back({p.f, p.f2});
    return out;
}

std::vector<int> fallback_order(const synth::EdgeController& ctrl, int n_l) {
    std::vector<int> order = ctrl.landmark_ranking;
    if (order.empty()) order.push_back(ctrl.fixed_landmark);
    for (int id = 0; id < n_l; ++id)
        if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
    return order;
}

}  // namespace

SensedInput raw_input(const Vec2& x, const synth::EdgeController& ctrl, SensingMode mode,
                      double heading, const bearing::CameraModel& camera,
                      const std::vector<Vec2>& landmarks) {
    const int n_l = static_cast<int>(landmarks.size());
    if (mode == SensingMode::displacement) {
        const Eigen::VectorXd y = synth::stacked_displacements(x, landmarks);
        return {ctrl.gain * y, n_l};
    }

    bearing::CameraModel cam = camera;
    cam.mode = (mode == SensingMode::bearing_full) ? bearing::CameraMode::full
                                                   : bearing::CameraMode::limited;
    const auto obs = bearing::measure(x, heading, landmarks, cam);
    const int visible = static_cast<int>(obs.size());

    if (visible == n_l) {
        for (int f : fallback_order(ctrl, n_l)) {
            try {
                const auto scaled = bearing::rescale(x, obs, f, landmarks);
                return {bearing::bearing_control(ctrl, scaled, x), visible};
            } catch (const DegenerateGeometry&) {
            }
        }
        throw DegenerateGeometry("raw_input: every fixed-landmark choice is degenerate");
    }

    for (const auto& [f, f2] : reconstruction_pairs(obs, ctrl.landmark_ranking)) {
        try {
            const auto scaled = bearing::reconstruct_missing(x, obs, f, f2, landmarks);
            return {bearing::bearing_control(ctrl, scaled, x), visible};
        } catch (const DegenerateGeometry&) {
        }
    }
    throw DegenerateGeometry("raw_input: every reconstruction pair is degenerate");
}

Vec2 normalize(const Vec2& u, double v_nom) {
    const double len = u.norm();
    if (len <= 1e-9) return Vec2::Zero();
    return (v_nom / len) * u;
}

Vec2 step_integrator(const Vec2& x, const Vec2& u, double dt) { return x + dt * u; }

RobotState step_unicycle(const RobotState& state, const Vec2& u, double dt, double alpha,
                         double beta_gain) {
    const double len = u.norm();
    RobotState next = state;
    if (len <= 1e-9) return next;
    const Vec2 facing{std::cos(state.heading), std::sin(state.heading)};
    const double forward = (alpha / len) * facing.dot(u);
    const double yaw_rate = (beta_gain / len) * geom::cross2(facing, u);
    next.position = state.position + dt * forward * facing;
    next.heading = wrap_angle(state.heading + dt * yaw_rate);
    return next;
}

RunResult run(const plan::Environment& env, const plan::PlanTree& tree,
              const std::vector<plan::Cell>& cells,
              const std::vector<synth::EdgeController>& controllers, const Vec2& start,
              const SimConfig& cfg) {
    std::unordered_map<int, const synth::EdgeController*> by_child;
    for (const auto& c : controllers) by_child[c.i] = &c;

    bearing::CameraModel camera;
    camera.fov_half_angle = cfg.fov_half_angle;
    camera.max_range = cfg.max_range;

    RobotState state;
    state.position = start;
    state.model = cfg.robot;
    const Vec2 to_root = tree.nodes[0] - start;
    state.heading = to_root.norm() > kGeomTol ? std::atan2(to_root.y(), to_root.x()) : 0.0;

    RunResult result;
    const synth::EdgeController* ctrl = nullptr;
    if ((start - tree.nodes[0]).norm() > cfg.eps_goal) {
        const auto edge = plan::locate_edge(start, tree, cells);
        const auto it = by_child.find(edge.first);
        if (it == by_child.end())
            throw NotCovered("run: no controller for edge (" + std::to_string(edge.first) + "," +
                             std::to_string(edge.second) + ")");
        ctrl = it->second;
    }

    auto log_row = [&](double t, const Vec2& u, int visible) {
        LogRow row;
        row.t = t;
        row.x = state.position.x();
        row.y = state.position.y();
        row.heading = state.heading;
        row.edge_i = ctrl ? ctrl->i : -1;
        row.edge_j = ctrl ? ctrl->j : -1;
        row.ux = u.x();
        row.uy = u.y();
        row.clf_value = ctrl ? ctrl->clf.value(state.position) : 0.0;
        double min_h = std::numeric_limits<double>::infinity();
        if (ctrl)
            for (int r = 0; r < ctrl->cbf.active_rows; ++r)
                min_h = std::min(min_h, ctrl->cbf.value(state.position)(r));
        row.min_cbf_value = min_h;
        row.visible = visible;
        result.log.rows.push_back(row);
    };

    Vec2 held_input = Vec2::Zero();
    bool have_held = false;
    int hold_streak = 0;

    for (int step = 0;; ++step) {
        const double t = step * cfg.dt;
        if ((state.position - tree.nodes[0]).norm() <= cfg.eps_goal) {
            log_row(t, Vec2::Zero(), 0);
            result.status = RunStatus::success;
            result.steps = step;
            return result;
        }
        if (step >= cfg.max_steps) {
            result.status = RunStatus::timeout;
            result.steps = step;
            return result;
        }

        Vec2 u;
        int visible = 0;
        try {
            const SensedInput sensed =
                raw_input(state.position, *ctrl, cfg.sensing, state.heading, camera, env.landmarks);
            u = sensed.u;
            visible = sensed.visible;
            held_input = u;
            have_held = true;
            hold_streak = 0;
        } catch (const TooFewVisible&) {
            if (!have_held || ++hold_streak > cfg.max_hold_steps) {
                result.status = RunStatus::sensing_starved;
                result.steps = step;
                return result;
            }
            u = held_input;
        } catch (const DegenerateGeometry&) {
            if (!have_held || ++hold_streak > cfg.max_hold_steps) {
                result.status = RunStatus::sensing_starved;
                result.steps = step;
                return result;
            }
            u = held_input;
        }

        const Vec2 applied = normalize(u, cfg.v_nom);
        log_row(t, applied, visible);

        if (cfg.robot == RobotModel::integrator) {
            state.position = step_integrator(state.position, applied, cfg.dt);
            // Synthetic heading for FOV filtering: direction of the last nonzero input.
            if (applied.norm() > 1e-9) state.heading = std::atan2(applied.y(), applied.x());
        } else {
            state = step_unicycle(state, applied, cfg.dt, cfg.alpha, cfg.beta_gain);
        }

        if (ctrl->clf.value(state.position) <= cfg.eps_switch && ctrl->j != 0) {
            const auto it = by_child.find(ctrl->j);
            if (it == by_child.end())
                throw NotCovered("run: no controller for follow-up edge at node " +
                                 std::to_string(ctrl->j));
            ctrl = it->second;
        }
    }
}

std::string to_csv(const TrajectoryLog& log) {
    std::string out = "t,x,y,heading,edge,ux,uy,V,min_h,visible\n";
    for (const LogRow& r : log.rows) {
        out += fmt_double(r.t);
        out += ',';
        out += fmt_double(r.x);
        out += ',';
        out += fmt_double(r.y);
        out += ',';
        out += fmt_double(r.heading);
        out += ',';
        out += std::to_string(r.edge_i) + "-" + std::to_string(r.edge_j);
        out += ',';
        out += fmt_double(r.ux);
        out += ',';
        out += fmt_double(r.uy);
        out += ',';
        out += fmt_double(r.clf_value);
        out += ',';
        out += fmt_double(r.min_cbf_value);
        out += ',';
        out += std::to_string(r.visible);
        out += '\n';
    }
    return out;
}

}  // namespace bearnav::sim
