#include "rcbf/lidar.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "rcbf/errors.hpp"

namespace rcbf {

namespace {

constexpr double kParallelTol = 1e-12;

std::optional<double> ray_segment(Vec2 o, Vec2 dir, const Segment& seg) {
    const Vec2 e = seg.b - seg.a;
    const double denom = cross(dir, e);
    if (std::abs(denom) < kParallelTol) return std::nullopt;
    const Vec2 w = seg.a - o;
    const double t = cross(w, e) / denom;
    const double u = cross(w, dir) / denom;
    if (t <= 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return t;
}

std::optional<double> ray_circle(Vec2 o, Vec2 dir, const Circle& c) {
    const Vec2 oc = c.center - o;
    const double proj = dot(dir, oc);
    const double disc = proj * proj - (norm_sq(oc) - c.radius * c.radius);
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    double t = proj - root;
    if (t <= 0.0) t = proj + root;
    if (t <= 0.0) return std::nullopt;
    return t;
}

}  // namespace

void Environment::validate() const {
    if (!(max_range > 0.0)) throw InvalidParams("env: max_range must be > 0");
    for (const Circle& c : circles)
        if (!(c.radius > 0.0)) throw InvalidParams("env: circle radii must be > 0");
}

SensorPose sensor_pose_from(const Pose& pose, const VehicleParams& p) {
    // The axle-frame transform subtracts d along the sensor's forward axis,
    // which puts the axle center d ahead of the sensor; the mount offset
    // here must agree with it or the composition shifts every return by 2d.
    return {{pose.p1 - p.d * std::cos(pose.p3), pose.p2 - p.d * std::sin(pose.p3)}, pose.p3};
}

RawScan raycast(const Environment& env, const SensorPose& sp, int n_beams) {
    if (n_beams < 1) throw InvalidParams("raycast: n_beams must be >= 1");
    for (const Circle& c : env.circles)
        if (norm(sp.position - c.center) < c.radius)
            throw SensorEmbedded("sensor inside a circular obstacle");

    RawScan out;
    for (int j = 0; j < n_beams; ++j) {
        const double bearing = -kPi + kTwoPi * j / n_beams;
        const double world = sp.heading + bearing;
        const Vec2 dir{std::cos(world), std::sin(world)};
        double best = std::numeric_limits<double>::infinity();
        // Strict less keeps the lowest primitive index on ties.
        for (const Segment& seg : env.segments)
            if (auto t = ray_segment(sp.position, dir, seg); t && *t < best) best = *t;
        for (const Circle& c : env.circles)
            if (auto t = ray_circle(sp.position, dir, c); t && *t < best) best = *t;
        if (best <= env.max_range) {
            out.points.push_back({best, bearing});
            out.beam_ids.push_back(j);
        }
    }
    return out;
}

}  // namespace rcbf
