#include "bearnav/bearing.hpp"

#include <cmath>
#include <string>

namespace bearnav::bearing {

namespace {

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

Vec2 unit_between(const Vec2& from, const Vec2& to, const char* what) {
    const Vec2 d = to - from;
    const double len = d.norm();
    if (len <= kGeomTol) throw DegenerateInput(std::string(what) + ": points coincide");
    return d / len;
}

const BearingObservation* find_observation(const std::vector<BearingObservation>& obs, int id) {
    for (const BearingObservation& o : obs)
        if (o.landmark_id == id) return &o;
    return nullptr;
}

}  // namespace

std::vector<BearingObservation> measure(const Vec2& x, double heading,
                                        const std::vector<Vec2>& landmarks,
                                        const CameraModel& camera) {
    std::vector<BearingObservation> out;
    for (int id = 0; id < static_cast<int>(landmarks.size()); ++id) {
        const Vec2 d = landmarks[id] - x;
        const double dist = d.norm();
        if (dist <= kGeomTol) throw DegenerateInput("measure: robot sits on a landmark");
        const Vec2 beta = d / dist;
        if (camera.mode == CameraMode::limited) {
            const double off = std::abs(wrap_angle(std::atan2(beta.y(), beta.x()) - heading));
            if (off > camera.fov_half_angle || dist > camera.max_range) continue;
        }
        out.push_back({id, beta});
    }
    if (out.size() < 2) throw TooFewVisible("measure: fewer than two landmarks visible");
    return out;
}

ScaledLandmarkSet rescale(const Vec2& x, const std::vector<BearingObservation>& observations,
                          int fixed_id, const std::vector<Vec2>& landmarks) {
    const BearingObservation* fixed = find_observation(observations, fixed_id);
    if (fixed == nullptr) throw MissingLandmark("rescale: fixed landmark not observed");

    ScaledLandmarkSet out;
    out.fixed_landmark = fixed_id;
    const Vec2 tilde_f = x + fixed->beta;
    out.tilde_l[fixed_id] = tilde_f;

    const Vec2& l_f = landmarks[fixed_id];
    for (const BearingObservation& o : observations) {
        if (o.landmark_id == fixed_id) continue;
        const Vec2 inter = unit_between(l_f, landmarks[o.landmark_id], "rescale");
        out.tilde_l[o.landmark_id] =
            geom::intersect_lines({tilde_f, inter}, {x, o.beta});
    }
    return out;
}

ScaledLandmarkSet reconstruct_missing(const Vec2& x,
                                      const std::vector<BearingObservation>& observations,
                                      int fixed_id, int second_id,
                                      const std::vector<Vec2>& landmarks) {
    if (fixed_id == second_id)
        throw std::invalid_argument("reconstruct_missing: f and f' must differ");
    if (find_observation(observations, second_id) == nullptr)
        throw MissingLandmark("reconstruct_missing: second landmark not observed");

    ScaledLandmarkSet out = rescale(x, observations, fixed_id, landmarks);
    const Vec2 tilde_f = out.tilde_l.at(fixed_id);
    const Vec2 tilde_f2 = out.tilde_l.at(second_id);
    const Vec2& l_f = landmarks[fixed_id];
    const Vec2& l_f2 = landmarks[second_id];

    for (int id = 0; id < static_cast<int>(landmarks.size()); ++id) {
        if (out.tilde_l.count(id)) continue;
        const Vec2 from_f = unit_between(l_f, landmarks[id], "reconstruct_missing");
        const Vec2 from_f2 = unit_between(l_f2, landmarks[id], "reconstruct_missing");
        out.tilde_l[id] = geom::intersect_lines({tilde_f, from_f}, {tilde_f2, from_f2});
    }
    return out;
}

Vec2 bearing_control(const synth::EdgeController& ctrl, const ScaledLandmarkSet& scaled,
                     const Vec2& x) {
    const int n_l = static_cast<int>(ctrl.gain.cols()) / 2;
    Eigen::VectorXd y(2 * n_l);
    for (int id = 0; id < n_l; ++id) {
        const auto it = scaled.tilde_l.find(id);
        if (it == scaled.tilde_l.end())
            throw MissingLandmark("bearing_control: landmark " + std::to_string(id) +
                                  " missing from the scaled set");
        y.segment<2>(2 * id) = it->second - x;
    }
    return ctrl.gain * y;
}

}  // namespace bearnav::bearing
