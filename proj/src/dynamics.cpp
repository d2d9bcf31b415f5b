#include "rcbf/dynamics.hpp"

#include <cmath>
#include <random>

#include "rcbf/errors.hpp"

namespace rcbf {

void SdeConfig::validate() const {
    if (!(dt > 0.0)) throw InvalidParams("sde: dt must be > 0");
    if (substeps < 1) throw InvalidParams("sde: substeps must be >= 1");
}

Pose pose_step(const Pose& pose, const ControlInput& applied, double dt) {
    Pose out;
    out.p1 = pose.p1 + applied.v * std::cos(pose.p3) * dt;
    out.p2 = pose.p2 + applied.v * std::sin(pose.p3) * dt;
    out.p3 = wrap_angle(pose.p3 + applied.w * dt);
    return out;
}

ScanPoint point_step(const ScanPoint& pt, const ControlInput& applied, const NoiseParams& n,
                     double dt, double dw) {
    ScanPoint out;
    out.x1 = pt.x1 - std::cos(pt.x2) * applied.v * dt + n.c1 * dw;
    out.x2 = wrap_angle(pt.x2 + (std::sin(pt.x2) / pt.x1) * applied.v * dt - applied.w * dt +
                        n.c2 * dw);
    return out;
}

std::vector<double> wiener_increments(std::uint64_t seed, std::size_t count, double dt) {
    std::vector<double> out(count);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(dt));
    for (double& w : out) w = gauss(rng);
    return out;
}

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial_index) {
    std::uint64_t z = master ^ trial_index;
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rcbf
