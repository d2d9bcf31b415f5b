#include "rcbf/barrier.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "rcbf/errors.hpp"

namespace rcbf {

void NoiseParams::validate() const {
    if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw InvalidParams("noise: c1 and c2 must be >= 0");
}

Scan Scan::from_points(std::vector<ScanPoint> pts) {
    Scan s;
    s.beam_ids.resize(pts.size());
    std::iota(s.beam_ids.begin(), s.beam_ids.end(), 0);
    s.points = std::move(pts);
    return s;
}

std::pair<double, std::size_t> scan_margin(const Scan& scan, const VehicleParams& p) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = kNoPoint;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const double m = scan.points[i].x1 - allowable_distance(scan.points[i].x2, p);
        if (m < best) {
            best = m;
            at = i;
        }
    }
    return {best, at};
}

double barrier_value(const Scan& scan, const VehicleParams& p) {
    double b = 0.0;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const double m = scan.points[i].x1 - allowable_distance(scan.points[i].x2, p);
        if (!(m > 0.0)) throw OutsideSafeSet(i, m);
        b += 1.0 / m;
    }
    return b;
}

Vec2 barrier_gradient(const Scan& scan, const VehicleParams& p) {
    Vec2 g;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const ScanPoint& pt = scan.points[i];
        const double m = pt.x1 - allowable_distance(pt.x2, p);
        if (!(m > 0.0)) throw OutsideSafeSet(i, m);
        const double a1 = allowable_distance_d1(pt.x2, p);
        const double inv_m2 = 1.0 / (m * m);
        g.x += inv_m2 * (std::cos(pt.x2) + std::sin(pt.x2) / pt.x1 * a1);
        g.y += inv_m2 * (-a1);
    }
    return g;
}

double ito_correction(const Scan& scan, const VehicleParams& p, const NoiseParams& n,
                      BetaForm form) {
    double sum = 0.0;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const ScanPoint& pt = scan.points[i];
        const double m = pt.x1 - allowable_distance(pt.x2, p);
        if (!(m > 0.0)) throw OutsideSafeSet(i, m);
        const double a1 = allowable_distance_d1(pt.x2, p);
        const double half_curv = 0.5 * m * allowable_distance_d2(pt.x2, p);
        const double beta =
            form == BetaForm::hessian ? a1 * a1 + half_curv : a1 * (a1 + half_curv);
        sum += (n.c1 * n.c1 - 2.0 * n.c1 * n.c2 * a1 + n.c2 * n.c2 * beta) / (m * m * m);
    }
    return sum;
}

BarrierEval evaluate(const Scan& scan, const VehicleParams& p, const NoiseParams& n,
                     BetaForm form) {
    BarrierEval ev;
    ev.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        const ScanPoint& pt = scan.points[i];
        const double m = pt.x1 - allowable_distance(pt.x2, p);
        if (!(m > 0.0)) throw OutsideSafeSet(i, m);
        if (m < ev.min_margin) {
            ev.min_margin = m;
            ev.i_star = i;
        }
        const double a1 = allowable_distance_d1(pt.x2, p);
        const double inv_m2 = 1.0 / (m * m);
        ev.b += 1.0 / m;
        ev.lgb.x += inv_m2 * (std::cos(pt.x2) + std::sin(pt.x2) / pt.x1 * a1);
        ev.lgb.y += inv_m2 * (-a1);
        const double half_curv = 0.5 * m * allowable_distance_d2(pt.x2, p);
        const double beta =
            form == BetaForm::hessian ? a1 * a1 + half_curv : a1 * (a1 + half_curv);
        ev.ito += (n.c1 * n.c1 - 2.0 * n.c1 * n.c2 * a1 + n.c2 * n.c2 * beta) / (m * m * m);
    }
    return ev;
}

}  // namespace rcbf
