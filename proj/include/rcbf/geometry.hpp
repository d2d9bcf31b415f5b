#pragma once

#include "rcbf/errors.hpp"
#include "rcbf/vec2.hpp"

namespace rcbf {

// Geometric constants of the vehicle and its rangefinder.
//
// Three reference points on the vehicle: the axle center B (origin of the
// relative state), the vehicle center O, and the sensor center S mounted a
// distance d ahead of B along the heading.
struct VehicleParams {
    double d = 0.07;     // sensor center to axle center [m]
    double e = 0.025;    // vehicle center to axle center [m]
    double alpha = 0.3;  // required clearance from the vehicle center [m]
    int n_beams = 279;

    void validate() const;  // throws InvalidParams
};

// One beam return in the sensor frame.
struct RawScanPoint {
    double range = 0.0;    // [m], >= 0
    double bearing = 0.0;  // [rad], in [-pi, pi)
};

// One beam return expressed relative to the axle center.
struct ScanPoint {
    double x1 = 0.0;  // distance [m], > 0
    double x2 = 0.0;  // bearing [rad], in [-pi, pi)
};

// Points closer to the axle center than this are rejected as degenerate. [m]
inline constexpr double kDegenerateRange = 1e-6;

// Re-expresses a sensor-frame return relative to the axle center.
// Throws DegeneratePoint if the transformed point lands on the axle.
ScanPoint sensor_to_axle(const RawScanPoint& raw, const VehicleParams& p);

// Bearing-dependent distance threshold between the axle center and an
// obstacle that keeps the vehicle center at clearance alpha:
//   alpha_ci(x2) = -e cos(x2) + sqrt(alpha^2 - e^2 sin^2(x2)).
// Always within [alpha - e, alpha + e]. Requires alpha > e > 0.
double allowable_distance(double x2, const VehicleParams& p);

// First and second derivatives of allowable_distance in the bearing.
double allowable_distance_d1(double x2, const VehicleParams& p);
double allowable_distance_d2(double x2, const VehicleParams& p);

}  // namespace rcbf
