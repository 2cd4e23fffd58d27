#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "bearnav/geom.hpp"
#include "bearnav/synth.hpp"

namespace bearnav::bearing {

// Unit direction from the robot to a landmark, compass-aligned (world frame).
struct BearingObservation {
    int landmark_id = -1;
    Vec2 beta;
};

enum class CameraMode { full, limited };

struct CameraModel {
    double fov_half_angle = M_PI;
    double max_range = std::numeric_limits<double>::infinity();
    CameraMode mode = CameraMode::full;
};

// Landmark constellation shrunk about the robot so the fixed landmark sits on
// the unit circle; true displacements are s(x) times the scaled ones.
struct ScaledLandmarkSet {
    std::map<int, Vec2> tilde_l;
    int fixed_landmark = -1;
};

// Bearings to all landmarks passing the camera's angular/range filter.
// Throws TooFewVisible when fewer than two remain.
std::vector<BearingObservation> measure(const Vec2& x, double heading,
                                        const std::vector<Vec2>& landmarks,
                                        const CameraModel& camera);

// Scaled landmark positions for every observed landmark: the fixed one is
// placed at x + beta_f, the others at the intersection of their own bearing
// line with the inter-landmark bearing line from the fixed landmark.
// Throws DegenerateGeometry when x, l_f, l_i are collinear.
ScaledLandmarkSet rescale(const Vec2& x, const std::vector<BearingObservation>& observations,
                          int fixed_id, const std::vector<Vec2>& landmarks);

// Scaled positions for ALL landmarks from a partial view: observed ones via
// rescale, hidden ones from the intersection of the two inter-landmark
// bearing lines anchored at the scaled f and f'.
ScaledLandmarkSet reconstruct_missing(const Vec2& x,
                                      const std::vector<BearingObservation>& observations,
                                      int fixed_id, int second_id,
                                      const std::vector<Vec2>& landmarks);

// u = K * stacked (tilde_l_i - x). Throws MissingLandmark if the set does not
// cover every gain column block.
Vec2 bearing_control(const synth::EdgeController& ctrl, const ScaledLandmarkSet& scaled,
                     const Vec2& x);

}  // namespace bearnav::bearing
