// Command-line front end: plan -> synth -> sim over JSON/CSV/SVG artifacts.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "bearnav/json_io.hpp"
#include "bearnav/pipeline.hpp"
#include "bearnav/svg.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSimFailed = 4;

bearnav::Vec2 parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw bearnav::ValidationError("expected start as \"x,y\", got: " + text);
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw bearnav::ValidationError("expected start as \"x,y\", got: " + text);
    }
}

int cmd_plan(const std::string& env_path, std::uint64_t seed, int iters, double eta,
             const std::string& out_dir) {
    const auto env = bearnav::io::load_environment(env_path);
    if (iters < 1) throw bearnav::ValidationError("--iters must be >= 1");
    if (eta <= 0.0) throw bearnav::ValidationError("--eta must be positive");

    const auto result = bearnav::pipeline::run_plan(env, seed, iters, eta);
    std::filesystem::create_directories(out_dir);
    bearnav::io::write_text_file(out_dir + "/tree_raw.json",
                                 bearnav::io::tree_to_json(result.raw));
    bearnav::io::write_text_file(out_dir + "/tree.json",
                                 bearnav::io::tree_to_json(result.simplified));
    std::printf("plan: %zu raw nodes, %zu simplified nodes, %zu collision samples\n",
                result.raw.nodes.size(), result.simplified.nodes.size(),
                result.raw.collision_samples.size());
    return 0;
}

int cmd_synth(const std::string& env_path, const std::string& tree_path, double c_v, double c_h,
              double u_max, const std::string& out_dir) {
    const auto env = bearnav::io::load_environment(env_path);
    const auto tree = bearnav::io::load_tree(tree_path);
    if (c_v <= 0.0 || c_h <= 0.0) throw bearnav::ValidationError("--cv and --ch must be positive");

    const auto result = bearnav::pipeline::run_synth(env, tree, c_v, c_h, u_max);
    for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (!result.infeasible_edges.empty()) {
        std::fprintf(stderr, "synthesis infeasible on %zu edge(s):",
                     result.infeasible_edges.size());
        for (const auto& [i, j] : result.infeasible_edges) std::fprintf(stderr, " (%d,%d)", i, j);
        std::fprintf(stderr, "\n");
        return kExitInfeasible;
    }
    std::filesystem::create_directories(out_dir);
    bearnav::io::write_text_file(out_dir + "/gains.json",
                                 bearnav::io::gains_to_json(result.controllers, c_v, c_h, u_max));
    for (const auto& ctrl : result.controllers)
        std::printf("edge (%d,%d): margin %.6f, fixed landmark %d\n", ctrl.i, ctrl.j, ctrl.margin,
                    ctrl.fixed_landmark);
    return 0;
}

int cmd_sim(const std::string& env_path, const std::string& tree_path,
            const std::string& gains_path, const std::string& start_text,
            const std::string& mode, const std::string& robot, double fov_deg, double alpha,
            double beta, double dt, double v_nom, double eps_switch, double eps_goal,
            int max_steps, const std::string& out_dir) {
    const auto env = bearnav::io::load_environment(env_path);
    const auto tree = bearnav::io::load_tree(tree_path);
    auto controllers = bearnav::io::load_gains(gains_path);
    const auto start = parse_point(start_text);

    bearnav::sim::SimConfig cfg;
    cfg.dt = dt;
    cfg.v_nom = v_nom;
    cfg.eps_switch = eps_switch;
    cfg.eps_goal = eps_goal;
    cfg.max_steps = max_steps;
    cfg.alpha = alpha;
    cfg.beta_gain = beta;
    cfg.fov_half_angle = fov_deg * M_PI / 180.0;
    if (mode == "displacement")
        cfg.sensing = bearnav::sim::SensingMode::displacement;
    else if (mode == "bearing-full")
        cfg.sensing = bearnav::sim::SensingMode::bearing_full;
    else if (mode == "bearing-fov")
        cfg.sensing = bearnav::sim::SensingMode::bearing_fov;
    else
        throw bearnav::ValidationError("unknown --mode: " + mode);
    if (robot == "integrator")
        cfg.robot = bearnav::sim::RobotModel::integrator;
    else if (robot == "unicycle")
        cfg.robot = bearnav::sim::RobotModel::unicycle;
    else
        throw bearnav::ValidationError("unknown --robot: " + robot);
    if (cfg.dt <= 0.0 || cfg.v_nom <= 0.0 || cfg.eps_switch <= 0.0 || cfg.eps_goal <= 0.0)
        throw bearnav::ValidationError("dt, vnom, eps-switch and eps-goal must be positive");

    const auto cells = bearnav::plan::build_cells(tree, env);
    bearnav::pipeline::attach_rankings(controllers, cells, env.landmarks);

    const auto result = bearnav::pipeline::run_sim(env, tree, cells, controllers, start, cfg);

    std::filesystem::create_directories(out_dir);
    bearnav::io::write_text_file(out_dir + "/trajectory.csv", bearnav::sim::to_csv(result.log));
    bearnav::io::write_text_file(out_dir + "/trajectory.svg",
                                 bearnav::svg::render_scene(env, tree, {result.log}));

    switch (result.status) {
        case bearnav::sim::RunStatus::success:
            std::printf("sim: success in %d steps\n", result.steps);
            return 0;
        case bearnav::sim::RunStatus::timeout:
            std::fprintf(stderr, "sim: timeout after %d steps\n", result.steps);
            return kExitSimFailed;
        case bearnav::sim::RunStatus::sensing_starved:
            std::fprintf(stderr, "sim: sensing starved at step %d\n", result.steps);
            return kExitSimFailed;
    }
    return kExitSimFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bearing-only feedback motion planning: RRT* cells, LP-synthesized "
                 "CLF/CBF gains, and a simulator"};
    app.require_subcommand(1);

    std::string env_path, tree_path, gains_path, out_dir = ".";
    std::string start_text, mode = "displacement", robot = "integrator";
    std::uint64_t seed = 1;
    int iters = 1500, max_steps = 50000;
    double eta = 50.0, c_v = 1.0, c_h = 1.0, u_max = 20.0;
    double fov_deg = 45.0, alpha = 0.1, beta = 0.5;
    double dt = 0.01, v_nom = 0.5, eps_switch = 1e-3, eps_goal = 0.05;

    auto* plan_cmd = app.add_subcommand("plan", "Grow and simplify the RRT* tree");
    plan_cmd->add_option("--env", env_path, "environment JSON")->required();
    plan_cmd->add_option("--seed", seed, "RNG seed");
    plan_cmd->add_option("--iters", iters, "RRT* iterations");
    plan_cmd->add_option("--eta", eta, "steering radius");
    plan_cmd->add_option("--out", out_dir, "output directory");

    auto* synth_cmd = app.add_subcommand("synth", "Synthesize per-edge gains");
    synth_cmd->add_option("--env", env_path, "environment JSON")->required();
    synth_cmd->add_option("--tree", tree_path, "simplified tree JSON")->required();
    synth_cmd->add_option("--cv", c_v, "CLF rate constant");
    synth_cmd->add_option("--ch", c_h, "CBF rate constant");
    synth_cmd->add_option("--umax", u_max, "input box bound");
    synth_cmd->add_option("--out", out_dir, "output directory");

    auto* sim_cmd = app.add_subcommand("sim", "Simulate the controller sequence");
    sim_cmd->add_option("--env", env_path, "environment JSON")->required();
    sim_cmd->add_option("--tree", tree_path, "simplified tree JSON")->required();
    sim_cmd->add_option("--gains", gains_path, "gains JSON")->required();
    sim_cmd->add_option("--start", start_text, "start position \"x,y\"")->required();
    sim_cmd->add_option("--mode", mode, "displacement|bearing-full|bearing-fov");
    sim_cmd->add_option("--robot", robot, "integrator|unicycle");
    sim_cmd->add_option("--fov-deg", fov_deg, "camera half-angle in degrees");
    sim_cmd->add_option("--alpha", alpha, "unicycle forward gain");
    sim_cmd->add_option("--beta", beta, "unicycle yaw gain");
    sim_cmd->add_option("--dt", dt, "integration step");
    sim_cmd->add_option("--vnom", v_nom, "normalized speed");
    sim_cmd->add_option("--eps-switch", eps_switch, "exit-face switching threshold");
    sim_cmd->add_option("--eps-goal", eps_goal, "goal radius");
    sim_cmd->add_option("--max-steps", max_steps, "step budget");
    sim_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan_cmd->parsed()) return cmd_plan(env_path, seed, iters, eta, out_dir);
        if (synth_cmd->parsed())
            return cmd_synth(env_path, tree_path, c_v, c_h, u_max, out_dir);
        return cmd_sim(env_path, tree_path, gains_path, start_text, mode, robot, fov_deg, alpha,
                       beta, dt, v_nom, eps_switch, eps_goal, max_steps, out_dir);
    } catch (const bearnav::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const bearnav::NotCovered& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}
