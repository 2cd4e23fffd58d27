#include "bearnav/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bearnav::synth {

SystemModel SystemModel::unit_box(double u_max) {
    SystemModel model;
    model.input_set = {{{1.0, 0.0}, u_max},
                       {{-1.0, 0.0}, u_max},
                       {{0.0, 1.0}, u_max},
                       {{0.0, -1.0}, u_max}};
    return model;
}

EdgeClf build_clf(const Vec2& node_i, const Vec2& node_j, double c_v) {
    const Vec2 d = node_j - node_i;
    const double len = d.norm();
    if (len <= kGeomTol) throw DegenerateInput("build_clf: edge endpoints coincide");
    return EdgeClf{d / len, node_j, c_v};
}

EdgeCbf build_cbf(const Vec2& node_i, const Vec2& node_j, const plan::Cell& cell,
                  const std::vector<Vec2>& collision_samples, double c_h) {
    const Vec2 edge = node_j - node_i;

    // Closest in-cell sample on each side of the edge.
    int upper = -1, lower = -1;
    double upper_d = std::numeric_limits<double>::infinity(), lower_d = upper_d;
    for (int k = 0; k < static_cast<int>(collision_samples.size()); ++k) {
        const Vec2& o = collision_samples[k];
        if (!cell.region.contains(o)) continue;
        const double side = geom::cross2(edge, o - node_i);
        const double d = geom::point_segment_distance(o, node_i, node_j);
        if (side >= 0.0) {
            if (d < upper_d) {
                upper_d = d;
                upper = k;
            }
        } else if (d < lower_d) {
            lower_d = d;
            lower = k;
        }
    }

    EdgeCbf cbf;
    cbf.c_h = c_h;
    for (int pick : {upper, lower}) {
        if (pick < 0) continue;
        const Vec2& o = collision_samples[pick];
        const Vec2 along = o - node_j;
        const double len = along.norm();
        if (len <= kGeomTol) continue;  // sample on the parent node, no usable line
        Vec2 normal{-along.y() / len, along.x() / len};
        double offset = -normal.dot(node_j);  // line passes through the parent
        const double at_i = normal.dot(node_i) + offset;
        if (std::abs(at_i) <= kGeomTol) continue;  // sample collinear with the edge
        if (at_i < 0.0) {
            normal = -normal;
            offset = -offset;
        }
        cbf.normals.row(cbf.active_rows) = normal.transpose();
        cbf.offsets(cbf.active_rows) = offset;
        ++cbf.active_rows;
    }
    return cbf;
}

std::pair<double, double> scale_bounds(const plan::Cell& cell, const Vec2& landmark) {
    if (cell.region.contains(landmark))
        throw LandmarkInsideCell("scale_bounds: landmark inside the cell");

    const std::vector<Vec2>& verts = cell.region.vertices();
    double s_max = 0.0;
    for (const Vec2& v : verts) s_max = std::max(s_max, (landmark - v).norm());

    double s_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < verts.size(); ++k)
        s_min = std::min(s_min,
                         geom::point_segment_distance(landmark, verts[k], verts[(k + 1) % verts.size()]));
    if (s_min <= 0.0) throw LandmarkInsideCell("scale_bounds: landmark on the cell boundary");
    return {s_min, s_max};
}

std::pair<double, double> modified_constants(double c_v, double c_h, double s_min, double s_max) {
    return {c_v / s_max, c_h / s_min};
}

std::vector<int> rank_landmarks(const plan::Cell& cell, const std::vector<Vec2>& landmarks) {
    struct Entry {
        int id;
        double s_min;
        double s_max;
    };
    std::vector<Entry> eligible, fallback;
    for (int id = 0; id < static_cast<int>(landmarks.size()); ++id) {
        double s_min, s_max;
        try {
            std::tie(s_min, s_max) = scale_bounds(cell, landmarks[id]);
        } catch (const LandmarkInsideCell&) {
            continue;
        }
        // s >= 1 keeps the rescaled input inside the input set (u/s with 0 in U).
        if (s_min >= 1.0)
            eligible.push_back({id, s_min, s_max});
        else
            fallback.push_back({id, s_min, s_max});
    }
    std::sort(eligible.begin(), eligible.end(), [](const Entry& a, const Entry& b) {
        if (a.s_max != b.s_max) return a.s_max < b.s_max;
        return a.id < b.id;
    });
    std::sort(fallback.begin(), fallback.end(), [](const Entry& a, const Entry& b) {
        if (a.s_min != b.s_min) return a.s_min > b.s_min;
        return a.id < b.id;
    });

    std::vector<int> order;
    for (const Entry& e : eligible) order.push_back(e.id);
    for (const Entry& e : fallback) order.push_back(e.id);
    return order;
}

Eigen::VectorXd stacked_displacements(const Vec2& x, const std::vector<Vec2>& landmarks) {
    Eigen::VectorXd y(2 * landmarks.size());
    for (std::size_t k = 0; k < landmarks.size(); ++k) y.segment<2>(2 * k) = landmarks[k] - x;
    return y;
}

namespace {

// Row for `row_vec . u(x) <= bound` with u = K y(x): the coefficient of gain
// entry K(a, b) is row_vec(a) * y(b).
lp::Constraint gain_row(const Eigen::RowVector2d& row_vec, const Eigen::VectorXd& y, double bound) {
    const int ny = static_cast<int>(y.size());
    lp::Constraint c;
    c.coeffs = Eigen::VectorXd(2 * ny);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < ny; ++b) c.coeffs(a * ny + b) = row_vec(a) * y(b);
    c.bound = bound;
    return c;
}

}  // namespace

std::vector<lp::Constraint> edge_constraints_at(const Vec2& x, const EdgeClf& clf,
                                                const EdgeCbf& cbf, const SystemModel& model,
                                                const std::vector<Vec2>& landmarks) {
    const Eigen::VectorXd y = stacked_displacements(x, landmarks);
    std::vector<lp::Constraint> rows;
    rows.reserve(1 + cbf.active_rows + model.input_set.size());

    // CLF: gradV . B u + c_v V <= 0
    const Eigen::RowVector2d clf_vec = clf.gradient().transpose() * model.B;
    rows.push_back(gain_row(clf_vec, y, -clf.c_v * clf.value(x)));

    // CBF rows: -(A_h B u + c_h h(x)) <= 0
    const Eigen::Vector2d h = cbf.value(x);
    for (int r = 0; r < cbf.active_rows; ++r) {
        const Eigen::RowVector2d cbf_vec = -(cbf.normals.row(r) * model.B);
        rows.push_back(gain_row(cbf_vec, y, cbf.c_h * h(r)));
    }

    // Input set: A_u u <= b_u
    for (const geom::Halfplane& hp : model.input_set)
        rows.push_back(gain_row(hp.normal.transpose(), y, hp.offset));
    return rows;
}

EdgeController synthesize_gain(const plan::Cell& cell, const EdgeClf& clf, const EdgeCbf& cbf,
                               const SystemModel& model, const std::vector<Vec2>& landmarks) {
    const int n_l = static_cast<int>(landmarks.size());
    if (n_l < 2) throw std::invalid_argument("synthesize_gain: need at least 2 landmarks");
    if (cell.region.vertices().size() < 3)
        throw std::invalid_argument("synthesize_gain: degenerate cell");

    std::vector<lp::Constraint> rows;
    for (const Vec2& v : cell.region.vertices()) {
        auto at_v = edge_constraints_at(v, clf, cbf, model, landmarks);
        rows.insert(rows.end(), at_v.begin(), at_v.end());
    }

    const int num_vars = 2 * 2 * n_l;
    const lp::FeasibilityResult sol = lp::solve_feasibility_lp(num_vars, rows);
    if (!sol.feasible)
        throw SynthesisInfeasible(cell.i, cell.j,
                                  "synthesize_gain: no gain satisfies the CLF/CBF/input rows on edge (" +
                                      std::to_string(cell.i) + "," + std::to_string(cell.j) + ")");

    EdgeController ctrl;
    ctrl.i = cell.i;
    ctrl.j = cell.j;
    ctrl.gain = Eigen::MatrixXd(2, 2 * n_l);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2 * n_l; ++b) ctrl.gain(a, b) = sol.solution(a * 2 * n_l + b);
    ctrl.clf = clf;
    ctrl.cbf = cbf;
    ctrl.margin = sol.margin;

    ctrl.landmark_ranking = rank_landmarks(cell, landmarks);
    if (ctrl.landmark_ranking.empty())
        throw LandmarkInsideCell("synthesize_gain: every landmark touches cell (" +
                                 std::to_string(cell.i) + "," + std::to_string(cell.j) + ")");
    ctrl.fixed_landmark = ctrl.landmark_ranking.front();
    std::tie(ctrl.s_min, ctrl.s_max) = scale_bounds(cell, landmarks[ctrl.fixed_landmark]);
    return ctrl;
}

}  // namespace bearnav::synth
