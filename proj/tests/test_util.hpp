#pragma once

// Shared generators and finite-difference oracles for the test suites. The
// oracles are deliberately written from the defining quantities (planar
// vectors, difference quotients of the scalar value) rather than reusing the
// analytic derivative code they check.

#include <array>
#include <cmath>
#include <random>

#include "rcbf/barrier.hpp"
#include "rcbf/geometry.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline rcbf::ScanPoint random_in_set_point(Rng& rng, const rcbf::VehicleParams& p,
                                           double min_margin = 1e-3, double max_margin = 1.0) {
    std::uniform_real_distribution<double> angle(-rcbf::kPi, rcbf::kPi);
    std::uniform_real_distribution<double> logm(std::log(min_margin), std::log(max_margin));
    const double x2 = angle(rng);
    const double margin = std::exp(logm(rng));
    return {rcbf::allowable_distance(x2, p) + margin, x2};
}

inline rcbf::Scan random_in_set_scan(Rng& rng, const rcbf::VehicleParams& p,
                                     std::size_t max_points, double min_margin = 1e-3,
                                     double max_margin = 1.0) {
    std::uniform_int_distribution<std::size_t> count(1, max_points);
    std::vector<rcbf::ScanPoint> pts(count(rng));
    for (auto& pt : pts) pt = random_in_set_point(rng, p, min_margin, max_margin);
    return rcbf::Scan::from_points(std::move(pts));
}

// Independent route for the sensor-to-axle transform: subtract the mount
// offset as a planar vector, convert back to polar.
inline rcbf::ScanPoint sensor_to_axle_oracle(const rcbf::RawScanPoint& raw,
                                             const rcbf::VehicleParams& p) {
    const double px = raw.range * std::cos(raw.bearing) - p.d;
    const double py = raw.range * std::sin(raw.bearing);
    return {std::sqrt(px * px + py * py), rcbf::wrap_angle(std::atan2(py, px))};
}

inline double fd_allowable_d1(double x2, const rcbf::VehicleParams& p, double h = 1e-6) {
    return (rcbf::allowable_distance(x2 + h, p) - rcbf::allowable_distance(x2 - h, p)) / (2.0 * h);
}

inline double fd_allowable_d2(double x2, const rcbf::VehicleParams& p, double h = 1e-4) {
    return (rcbf::allowable_distance(x2 + h, p) - 2.0 * rcbf::allowable_distance(x2, p) +
            rcbf::allowable_distance(x2 - h, p)) /
           (h * h);
}

// Directional difference quotient of the barrier value along the two input
// columns of the point dynamics: column v moves each point by
// (-cos x2, sin x2 / x1) eps, column w by (0, -eps).
inline rcbf::Vec2 fd_barrier_gradient(const rcbf::Scan& scan, const rcbf::VehicleParams& p,
                                      double eps = 1e-7) {
    const auto shifted = [&](double step, int column) {
        rcbf::Scan s = scan;
        for (rcbf::ScanPoint& pt : s.points) {
            if (column == 0)
                pt = {pt.x1 - std::cos(pt.x2) * step, pt.x2 + std::sin(pt.x2) / pt.x1 * step};
            else
                pt = {pt.x1, pt.x2 - step};
        }
        return rcbf::barrier_value(s, p);
    };
    return {(shifted(eps, 0) - shifted(-eps, 0)) / (2.0 * eps),
            (shifted(eps, 1) - shifted(-eps, 1)) / (2.0 * eps)};
}

// Second differences of the single-point barrier term 1/(x1 - alpha_ci),
// Richardson-extrapolated to fourth order: the quadratic form can cancel
// across entries, so the per-entry quotients need headroom. Returns
// (h11, h12, h22); steps scale with the point's margin.
inline std::array<double, 3> fd_point_hessian(const rcbf::ScanPoint& pt,
                                              const rcbf::VehicleParams& p) {
    const auto b = [&](double x1, double x2) {
        return 1.0 / (x1 - rcbf::allowable_distance(x2, p));
    };
    const double margin = pt.x1 - rcbf::allowable_distance(pt.x2, p);
    const double h = 1e-2 * margin;

    const auto diag = [&](bool first, double step) {
        const double fp = first ? b(pt.x1 + step, pt.x2) : b(pt.x1, pt.x2 + step);
        const double fm = first ? b(pt.x1 - step, pt.x2) : b(pt.x1, pt.x2 - step);
        return (fp - 2.0 * b(pt.x1, pt.x2) + fm) / (step * step);
    };
    const auto cross = [&](double step) {
        return (b(pt.x1 + step, pt.x2 + step) - b(pt.x1 + step, pt.x2 - step) -
                b(pt.x1 - step, pt.x2 + step) + b(pt.x1 - step, pt.x2 - step)) /
               (4.0 * step * step);
    };
    const auto richardson = [](double coarse, double fine) {
        return (4.0 * fine - coarse) / 3.0;
    };
    return {richardson(diag(true, h), diag(true, h / 2.0)),
            richardson(cross(h), cross(h / 2.0)),
            richardson(diag(false, h), diag(false, h / 2.0))};
}

inline double half_quad_form(const std::array<double, 3>& hess, double c1, double c2) {
    return 0.5 * (c1 * c1 * hess[0] + 2.0 * c1 * c2 * hess[1] + c2 * c2 * hess[2]);
}

inline double rel_err(double got, double want, double floor = 1.0) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace testutil
