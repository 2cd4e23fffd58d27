#include "bearnav/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bearnav/plan.hpp"

namespace bearnav::geom {

namespace {

// Clipping starts from this box; anything still near it after all cuts means
// the halfplane set failed to bound the region.
constexpr double kClipBox = 1e6;
constexpr double kUnboundedCoord = 1e5;

std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Halfplane& h) {
    std::vector<Vec2> out;
    out.reserve(poly.size() + 1);
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = poly[k];
        const Vec2& q = poly[(k + 1) % n];
        const double dp = h.eval(p);
        const double dq = h.eval(q);
        const bool keep_p = dp <= kGeomTol;
        const bool keep_q = dq <= kGeomTol;
        if (keep_p) out.push_back(p);
        if (keep_p != keep_q) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

void dedup_ring(std::vector<Vec2>& poly) {
    std::vector<Vec2> out;
    for (const Vec2& p : poly) {
        if (out.empty() || (p - out.back()).norm() > kGeomTol) out.push_back(p);
    }
    while (out.size() > 1 && (out.front() - out.back()).norm() <= kGeomTol) out.pop_back();
    poly = std::move(out);
}

void canonicalize(std::vector<Vec2>& poly) {
    // Enforce CCW and rotate so the lexicographically smallest vertex leads;
    // output then does not depend on halfplane input order.
    double area2 = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k)
        area2 += cross2(poly[k], poly[(k + 1) % poly.size()]);
    if (area2 < 0.0) std::reverse(poly.begin(), poly.end());

    auto lex_less = [](const Vec2& a, const Vec2& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        return a.y() < b.y();
    };
    const auto first = std::min_element(poly.begin(), poly.end(), lex_less);
    std::rotate(poly.begin(), first, poly.end());
}

}  // namespace

Halfplane bisector(const Vec2& a, const Vec2& b) {
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len <= kGeomTol) throw DegenerateInput("bisector: points coincide");
    const Vec2 n = d / len;
    return Halfplane{n, n.dot(0.5 * (a + b))};
}

Vec2 intersect_lines(const Ray2& r1, const Ray2& r2) {
    const double denom = cross2(r1.direction, r2.direction);
    if (std::abs(denom) <= kParallelTol)
        throw DegenerateGeometry("intersect_lines: directions near-parallel");
    const double t = cross2(r2.origin - r1.origin, r2.direction) / denom;
    return r1.origin + t * r1.direction;
}

std::vector<Vec2> enumerate_vertices(const std::vector<Halfplane>& halfplanes) {
    std::vector<Vec2> poly = {{-kClipBox, -kClipBox},
                              {kClipBox, -kClipBox},
                              {kClipBox, kClipBox},
                              {-kClipBox, kClipBox}};
    for (const Halfplane& h : halfplanes) {
        poly = clip(poly, h);
        if (poly.empty()) throw EmptyPolytope("enumerate_vertices: empty intersection");
    }
    dedup_ring(poly);
    for (const Vec2& p : poly) {
        if (std::abs(p.x()) >= kUnboundedCoord || std::abs(p.y()) >= kUnboundedCoord)
            throw Unbounded("enumerate_vertices: intersection not bounded");
    }
    if (poly.size() < 3)
        throw EmptyPolytope("enumerate_vertices: intersection degenerate");
    canonicalize(poly);
    return poly;
}

Polytope2 Polytope2::from_halfplanes(std::vector<Halfplane> halfplanes) {
    Polytope2 p;
    p.vertices_ = enumerate_vertices(halfplanes);
    p.halfplanes_ = std::move(halfplanes);
    return p;
}

Polytope2 Polytope2::axis_aligned_box(double xmin, double ymin, double xmax, double ymax) {
    return from_halfplanes({{{1.0, 0.0}, xmax},
                            {{-1.0, 0.0}, -xmin},
                            {{0.0, 1.0}, ymax},
                            {{0.0, -1.0}, -ymin}});
}

bool Polytope2::contains(const Vec2& p, double tol) const {
    for (const Halfplane& h : halfplanes_)
        if (h.eval(p) > tol) return false;
    return true;
}

double Polytope2::max_violation(const Vec2& p) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Halfplane& h : halfplanes_) worst = std::max(worst, h.eval(p));
    return worst;
}

double Polytope2::diameter() const {
    double d = 0.0;
    for (std::size_t a = 0; a < vertices_.size(); ++a)
        for (std::size_t b = a + 1; b < vertices_.size(); ++b)
            d = std::max(d, (vertices_[a] - vertices_[b]).norm());
    return d;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon) {
    int winding = 0;
    const std::size_t n = polygon.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = polygon[k];
        const Vec2& b = polygon[(k + 1) % n];
        if (point_segment_distance(p, a, b) <= kGeomTol) return true;  // boundary counts
        if (a.y() <= p.y()) {
            if (b.y() > p.y() && cross2(b - a, p - a) > 0.0) ++winding;
        } else {
            if (b.y() <= p.y() && cross2(b - a, p - a) < 0.0) --winding;
        }
    }
    return winding != 0;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

double polygon_boundary_distance(const Vec2& p, const std::vector<Vec2>& polygon) {
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = polygon.size();
    for (std::size_t k = 0; k < n; ++k)
        d = std::min(d, point_segment_distance(p, polygon[k], polygon[(k + 1) % n]));
    return d;
}

namespace {

template <typename PointOk>
bool walk_segment(const Vec2& a, const Vec2& b, double step, PointOk&& ok) {
    const double len = (b - a).norm();
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 0; k <= n; ++k) {
        const Vec2 p = a + (static_cast<double>(k) / n) * (b - a);
        if (!ok(p)) return false;
    }
    return true;
}

}  // namespace

bool segment_clear(const Vec2& a, const Vec2& b, const plan::Environment& env, double step) {
    return walk_segment(a, b, step, [&](const Vec2& p) { return env.in_free_space(p); });
}

bool segment_clear_margin(const Vec2& a, const Vec2& b, const plan::Environment& env, double step,
                          double margin) {
    return walk_segment(a, b, step, [&](const Vec2& p) {
        for (const Halfplane& h : env.bounds.halfplanes())
            if (h.eval(p) > -margin) return false;
        for (const auto& obstacle : env.obstacles) {
            if (point_in_polygon(p, obstacle)) return false;
            if (polygon_boundary_distance(p, obstacle) < margin) return false;
        }
        return true;
    });
}

}  // namespace bearnav::geom
