#include "bearnav/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bearnav/format.hpp"

namespace bearnav::svg {

namespace {

struct Frame {
    double xmin, ymin, xmax, ymax;
    // SVG y grows downward; flip about the bounds midline.
    double fy(double y) const { return ymax + ymin - y; }
};

std::string num(double v) { return fmt_double(std::round(v * 1000.0) / 1000.0); }

}  // namespace

std::string render_scene(const plan::Environment& env, const plan::PlanTree& tree,
                         const std::vector<sim::TrajectoryLog>& trajectories) {
    Frame f{};
    f.xmin = f.ymin = std::numeric_limits<double>::infinity();
    f.xmax = f.ymax = -f.xmin;
    for (const Vec2& v : env.bounds.vertices()) {
        f.xmin = std::min(f.xmin, v.x());
        f.xmax = std::max(f.xmax, v.x());
        f.ymin = std::min(f.ymin, v.y());
        f.ymax = std::max(f.ymax, v.y());
    }
    const double w = f.xmax - f.xmin, h = f.ymax - f.ymin;
    const double pad = 0.03 * std::max(w, h);
    const double marker = 0.008 * std::max(w, h);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(f.xmin - pad) + " " +
           num(f.ymin - pad) + " " + num(w + 2 * pad) + " " + num(h + 2 * pad) +
           "\" width=\"800\" height=\"800\">\n";
    out += "<rect x=\"" + num(f.xmin) + "\" y=\"" + num(f.ymin) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"white\" stroke=\"black\" stroke-width=\"" +
           num(marker / 2) + "\"/>\n";

    for (const auto& obstacle : env.obstacles) {
        out += "<polygon points=\"";
        for (std::size_t k = 0; k < obstacle.size(); ++k) {
            if (k) out += ' ';
            out += num(obstacle[k].x()) + "," + num(f.fy(obstacle[k].y()));
        }
        out += "\" fill=\"gray\" stroke=\"none\"/>\n";
    }

    for (std::size_t k = 1; k < tree.nodes.size(); ++k) {
        const Vec2& a = tree.nodes[k];
        const Vec2& b = tree.nodes[tree.parent[k]];
        out += "<line x1=\"" + num(a.x()) + "\" y1=\"" + num(f.fy(a.y())) + "\" x2=\"" +
               num(b.x()) + "\" y2=\"" + num(f.fy(b.y())) +
               "\" stroke=\"green\" stroke-width=\"" + num(marker / 2) + "\"/>\n";
    }
    for (const Vec2& n : tree.nodes)
        out += "<circle cx=\"" + num(n.x()) + "\" cy=\"" + num(f.fy(n.y())) + "\" r=\"" +
               num(marker) + "\" fill=\"green\"/>\n";

    for (const Vec2& s : tree.collision_samples)
        out += "<circle cx=\"" + num(s.x()) + "\" cy=\"" + num(f.fy(s.y())) + "\" r=\"" +
               num(marker * 0.8) + "\" fill=\"red\"/>\n";

    for (const Vec2& l : env.landmarks)
        out += "<circle cx=\"" + num(l.x()) + "\" cy=\"" + num(f.fy(l.y())) + "\" r=\"" +
               num(marker * 1.5) + "\" fill=\"royalblue\"/>\n";

    out += "<circle cx=\"" + num(env.root.x()) + "\" cy=\"" + num(f.fy(env.root.y())) + "\" r=\"" +
           num(marker * 1.5) + "\" fill=\"black\"/>\n";

    for (const auto& log : trajectories) {
        out += "<polyline points=\"";
        for (std::size_t k = 0; k < log.rows.size(); ++k) {
            if (k) out += ' ';
            out += num(log.rows[k].x) + "," + num(f.fy(log.rows[k].y));
        }
        out += "\" fill=\"none\" stroke=\"blue\" stroke-width=\"" + num(marker / 2) + "\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace bearnav::svg
