#include "bearnav/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace bearnav::io {

using nlohmann::json;

namespace {

Vec2 to_vec2(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("expected [x, y] pair");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

json from_vec2(const Vec2& v) { return json::array({v.x(), v.y()}); }

json point_list(const std::vector<Vec2>& pts) {
    json out = json::array();
    for (const Vec2& p : pts) out.push_back(from_vec2(p));
    return out;
}

std::vector<Vec2> to_point_list(const json& j) {
    std::vector<Vec2> out;
    for (const auto& e : j) out.push_back(to_vec2(e));
    return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

plan::Environment load_environment(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }

    plan::Environment env;
    const json& b = j.at("bounds");
    if (!b.is_array() || b.size() != 4) throw ValidationError("bounds must be [xmin,ymin,xmax,ymax]");
    const double xmin = b[0], ymin = b[1], xmax = b[2], ymax = b[3];
    if (!(xmin < xmax && ymin < ymax)) throw ValidationError("bounds rectangle is empty");
    env.bounds = geom::Polytope2::axis_aligned_box(xmin, ymin, xmax, ymax);

    for (const auto& poly : j.value("obstacles", json::array())) {
        auto pts = to_point_list(poly);
        if (pts.size() < 3) throw ValidationError("obstacle polygon needs >= 3 vertices");
        env.obstacles.push_back(std::move(pts));
    }
    env.landmarks = to_point_list(j.at("landmarks"));
    env.root = to_vec2(j.at("root"));

    if (env.landmarks.size() < 2) throw ValidationError("environment needs at least 2 landmarks");
    if (!env.bounds.contains(env.root) || env.inside_obstacle(env.root))
        throw ValidationError("root must be inside bounds and outside obstacles");
    for (const Vec2& l : env.landmarks)
        if (env.inside_obstacle(l)) throw ValidationError("landmarks must lie outside obstacles");
    return env;
}

std::string tree_to_json(const plan::PlanTree& tree) {
    json j;
    j["nodes"] = point_list(tree.nodes);
    j["parents"] = tree.parent;
    j["collision_samples"] = point_list(tree.collision_samples);
    return j.dump(2) + "\n";
}

plan::PlanTree tree_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("invalid tree JSON: ") + e.what());
    }
    plan::PlanTree tree;
    tree.nodes = to_point_list(j.at("nodes"));
    tree.parent = j.at("parents").get<std::vector<int>>();
    tree.collision_samples = to_point_list(j.at("collision_samples"));
    if (tree.nodes.empty() || tree.nodes.size() != tree.parent.size() || tree.parent[0] != 0)
        throw ValidationError("tree JSON is inconsistent");
    return tree;
}

plan::PlanTree load_tree(const std::string& path) { return tree_from_json_text(read_text_file(path)); }

std::string gains_to_json(const std::vector<synth::EdgeController>& controllers, double c_v,
                          double c_h, double u_max) {
    json j;
    j["c_v"] = c_v;
    j["c_h"] = c_h;
    j["u_max"] = u_max;
    json edges = json::array();
    for (const auto& ctrl : controllers) {
        json e;
        e["i"] = ctrl.i;
        e["j"] = ctrl.j;
        json k_rows = json::array();
        for (int a = 0; a < ctrl.gain.rows(); ++a)
            for (int b = 0; b < ctrl.gain.cols(); ++b) k_rows.push_back(ctrl.gain(a, b));
        e["K"] = k_rows;
        e["z"] = from_vec2(ctrl.clf.exit_dir);
        e["x_j"] = from_vec2(ctrl.clf.exit_point);
        e["c_v"] = ctrl.clf.c_v;
        json a_h = json::array(), b_h = json::array();
        for (int r = 0; r < ctrl.cbf.active_rows; ++r) {
            a_h.push_back(json::array({ctrl.cbf.normals(r, 0), ctrl.cbf.normals(r, 1)}));
            b_h.push_back(ctrl.cbf.offsets(r));
        }
        e["A_h"] = a_h;
        e["b_h"] = b_h;
        e["c_h"] = ctrl.cbf.c_h;
        e["fixed_landmark"] = ctrl.fixed_landmark;
        e["s_min"] = ctrl.s_min;
        e["s_max"] = ctrl.s_max;
        e["margin"] = ctrl.margin;
        edges.push_back(std::move(e));
    }
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

std::vector<synth::EdgeController> gains_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("invalid gains JSON: ") + e.what());
    }
    std::vector<synth::EdgeController> out;
    for (const auto& e : j.at("edges")) {
        synth::EdgeController ctrl;
        ctrl.i = e.at("i").get<int>();
        ctrl.j = e.at("j").get<int>();
        const auto k_rows = e.at("K").get<std::vector<double>>();
        if (k_rows.size() % 4 != 0) throw ValidationError("gain size must be 2 x 2*n_l");
        const int cols = static_cast<int>(k_rows.size()) / 2;
        ctrl.gain = Eigen::MatrixXd(2, cols);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < cols; ++b) ctrl.gain(a, b) = k_rows[a * cols + b];
        ctrl.clf.exit_dir = to_vec2(e.at("z"));
        ctrl.clf.exit_point = to_vec2(e.at("x_j"));
        ctrl.clf.c_v = e.at("c_v").get<double>();
        const json& a_h = e.at("A_h");
        const json& b_h = e.at("b_h");
        ctrl.cbf.active_rows = static_cast<int>(a_h.size());
        for (int r = 0; r < ctrl.cbf.active_rows; ++r) {
            ctrl.cbf.normals(r, 0) = a_h[r][0].get<double>();
            ctrl.cbf.normals(r, 1) = a_h[r][1].get<double>();
            ctrl.cbf.offsets(r) = b_h[r].get<double>();
        }
        ctrl.cbf.c_h = e.at("c_h").get<double>();
        ctrl.fixed_landmark = e.at("fixed_landmark").get<int>();
        ctrl.s_min = e.at("s_min").get<double>();
        ctrl.s_max = e.at("s_max").get<double>();
        ctrl.margin = e.at("margin").get<double>();
        out.push_back(std::move(ctrl));
    }
    return out;
}

std::vector<synth::EdgeController> load_gains(const std::string& path) {
    return gains_from_json_text(read_text_file(path));
}

}  // namespace bearnav::io
