#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bearnav/errors.hpp"

namespace bearnav {

using Vec2 = Eigen::Vector2d;

// Geometric tolerance in meters; environments are meter-scale doubles.
inline constexpr double kGeomTol = 1e-9;
// Two directions are treated as parallel below this |sin(angle)|.
inline constexpr double kParallelTol = 1e-6;

namespace plan {
struct Environment;
}

namespace geom {

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Closed halfplane {p : normal . p <= offset}, normal unit length.
struct Halfplane {
    Vec2 normal;
    double offset = 0.0;

    // Signed violation: <= 0 inside, > 0 outside.
    double eval(const Vec2& p) const { return normal.dot(p) - offset; }
};

// Infinite oriented line through `origin` with unit `direction`.
struct Ray2 {
    Vec2 origin;
    Vec2 direction;
};

// Halfplane containing `a` whose boundary is the perpendicular bisector of (a, b).
Halfplane bisector(const Vec2& a, const Vec2& b);

// Intersection of the two infinite lines. Throws DegenerateGeometry if
// |sin(angle between directions)| <= kParallelTol.
Vec2 intersect_lines(const Ray2& r1, const Ray2& r2);

// Counterclockwise vertices of the (bounded, nonempty) intersection of the
// halfplanes, starting at the lexicographically smallest vertex. Redundant
// halfplanes are ignored. Throws EmptyPolytope / Unbounded.
std::vector<Vec2> enumerate_vertices(const std::vector<Halfplane>& halfplanes);

// Bounded convex polygon stored as halfplanes plus derived CCW vertices.
class Polytope2 {
  public:
    Polytope2() = default;

    static Polytope2 from_halfplanes(std::vector<Halfplane> halfplanes);
    static Polytope2 axis_aligned_box(double xmin, double ymin, double xmax, double ymax);

    const std::vector<Halfplane>& halfplanes() const { return halfplanes_; }
    const std::vector<Vec2>& vertices() const { return vertices_; }

    bool contains(const Vec2& p, double tol = kGeomTol) const;
    // Largest halfplane violation at p; <= 0 means inside.
    double max_violation(const Vec2& p) const;
    double diameter() const;

  private:
    std::vector<Halfplane> halfplanes_;
    std::vector<Vec2> vertices_;
};

// Point-in-polygon by winding number; boundary points count as inside.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& polygon);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Distance from p to the polygon boundary (0 if p lies on it).
double polygon_boundary_distance(const Vec2& p, const std::vector<Vec2>& polygon);

// True iff every sample at spacing <= step along [a, b] is inside the state
// bounds and outside all obstacle polygons.
bool segment_clear(const Vec2& a, const Vec2& b, const plan::Environment& env, double step);

// Stricter variant used by tree simplification: samples must keep `margin`
// clearance from obstacle boundaries and from the state bounds.
bool segment_clear_margin(const Vec2& a, const Vec2& b, const plan::Environment& env, double step,
                          double margin);

}  // namespace geom
}  // namespace bearnav
