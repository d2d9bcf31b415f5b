#include "rcbf/geometry.hpp"

#include <cmath>

namespace rcbf {

void VehicleParams::validate() const {
    if (!(d >= 0.0)) throw InvalidParams("vehicle: d must be >= 0");
    if (!(alpha > e && e > 0.0)) throw InvalidParams("vehicle: need alpha > e > 0");
    if (n_beams < 1) throw InvalidParams("vehicle: n_beams must be >= 1");
}

namespace {

void check_clearance(const VehicleParams& p) {
    if (!(p.alpha > p.e && p.e > 0.0)) throw InvalidParams("need alpha > e > 0");
}

}  // namespace

ScanPoint sensor_to_axle(const RawScanPoint& raw, const VehicleParams& p) {
    // Planar subtraction of the sensor offset, then back to polar. atan2
    // keeps the sign of the lateral component, so bearings cover the full
    // [-pi, pi) range instead of collapsing onto [0, pi].
    const double ux = raw.range * std::cos(raw.bearing) - p.d;
    const double uy = raw.range * std::sin(raw.bearing);
    const double x1 = std::hypot(ux, uy);
    if (x1 < kDegenerateRange)
        throw DegeneratePoint("measured point coincides with the axle center");
    return {x1, wrap_angle(std::atan2(uy, ux))};
}

double allowable_distance(double x2, const VehicleParams& p) {
    check_clearance(p);
    const double s = std::sin(x2);
    return -p.e * std::cos(x2) + std::sqrt(p.alpha * p.alpha - p.e * p.e * s * s);
}

// alpha_ci'(x2) = e sin(x2) - e^2 sin(x2) cos(x2) / S,  S = sqrt(alpha^2 - e^2 sin^2 x2)
double allowable_distance_d1(double x2, const VehicleParams& p) {
    check_clearance(p);
    const double s = std::sin(x2);
    const double c = std::cos(x2);
    const double root = std::sqrt(p.alpha * p.alpha - p.e * p.e * s * s);
    return p.e * s - p.e * p.e * s * c / root;
}

// alpha_ci''(x2) = e cos(x2) - e^2 cos(2 x2) / S - e^4 sin^2(2 x2) / (4 S^3)
double allowable_distance_d2(double x2, const VehicleParams& p) {
    check_clearance(p);
    const double s = std::sin(x2);
    const double e2 = p.e * p.e;
    const double root = std::sqrt(p.alpha * p.alpha - e2 * s * s);
    const double c2x = std::cos(2.0 * x2);
    const double s2x = std::sin(2.0 * x2);
    return p.e * std::cos(x2) - e2 * c2x / root -
           e2 * e2 * s2x * s2x / (4.0 * root * root * root);
}

}  // namespace rcbf
