#pragma once

#include <vector>

#include "rcbf/dynamics.hpp"
#include "rcbf/geometry.hpp"
#include "rcbf/vec2.hpp"

namespace rcbf {

struct Segment {
    Vec2 a;
    Vec2 b;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

// Planar obstacle map for the virtual rangefinder.
struct Environment {
    std::vector<Segment> segments;
    std::vector<Circle> circles;
    double max_range = 8.0;  // [m]

    void validate() const;
};

// World-frame pose of the sensor center S.
struct SensorPose {
    Vec2 position;
    double heading = 0.0;  // [rad]
};

// S sits a distance d behind the axle center along the heading, matching
// the sign convention of sensor_to_axle.
SensorPose sensor_pose_from(const Pose& pose, const VehicleParams& p);

struct RawScan {
    std::vector<RawScanPoint> points;
    std::vector<int> beam_ids;
};

// Casts n_beams rays at body-frame bearings -pi + 2*pi*j/n_beams. Each beam
// returns the nearest segment/circle hit if within max_range; no-return
// beams are omitted. Equidistant hits resolve to the lowest primitive index
// (segments before circles). Throws SensorEmbedded if the sensor is inside
// a circle.
RawScan raycast(const Environment& env, const SensorPose& sp, int n_beams);

}  // namespace rcbf
