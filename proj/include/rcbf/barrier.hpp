#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rcbf/geometry.hpp"
#include "rcbf/vec2.hpp"

namespace rcbf {

// Diffusion coefficients of the common-mode vibration, per measurement channel.
struct NoiseParams {
    double c1 = 0.0;  // distance channel [m/sqrt(s)]
    double c2 = 0.0;  // bearing channel [rad/sqrt(s)]

    void validate() const;
};

// An ordered set of axle-relative returns. Beams with no return are absent;
// beam_ids keeps the original beam id per point.
struct Scan {
    std::vector<ScanPoint> points;
    std::vector<int> beam_ids;

    std::size_t size() const { return points.size(); }

    // Convenience for synthetic scans: beam ids assigned 0..n-1.
    static Scan from_points(std::vector<ScanPoint> pts);
};

// Coefficient used in the (2,2) entry of the per-point second-derivative
// quadratic form. `hessian` is the exact curvature alpha'^2 + (m/2) alpha'';
// `slope_weighted` multiplies the curvature term by an extra alpha' factor
// and is kept only for comparison.
enum class BetaForm { hessian, slope_weighted };

inline constexpr std::size_t kNoPoint = static_cast<std::size_t>(-1);

// Everything the safety compensator needs from one scan.
struct BarrierEval {
    double b = 0.0;    // sum of reciprocal margins [1/m]
    Vec2 lgb;          // input-direction gradient, (v, w) channels
    double ito = 0.0;  // second-order diffusion correction [1/s]
    double min_margin = 0.0;  // min over points of x1 - alpha_ci [m]
    std::size_t i_star = kNoPoint;  // point attaining min_margin
};

// Smallest margin over the scan and the point attaining it.
// Returns (+inf, kNoPoint) for an empty scan. Never throws on margin sign.
std::pair<double, std::size_t> scan_margin(const Scan& scan, const VehicleParams& p);

// B(x) = sum_i 1/(x1_i - alpha_ci). Throws OutsideSafeSet if any margin <= 0.
double barrier_value(const Scan& scan, const VehicleParams& p);

// L_gB(x) = sum_i (x1_i - alpha_ci)^-2 [cos x2_i + (sin x2_i / x1_i) alpha'_ci, -alpha'_ci]
Vec2 barrier_gradient(const Scan& scan, const VehicleParams& p);

// (1/2) sum_i sigma_i^T H_i sigma_i with H_i the per-point second-derivative
// matrix of 1/(x1_i - alpha_ci); equals
//   sum_i (x1_i - alpha_ci)^-3 (c1^2 - 2 c1 c2 alpha'_ci + c2^2 beta_i).
double ito_correction(const Scan& scan, const VehicleParams& p, const NoiseParams& n,
                      BetaForm form = BetaForm::hessian);

// Single-pass evaluation of all of the above. Sums accumulate in beam order.
BarrierEval evaluate(const Scan& scan, const VehicleParams& p, const NoiseParams& n,
                     BetaForm form = BetaForm::hessian);

}  // namespace rcbf
