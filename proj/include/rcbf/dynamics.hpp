#pragma once

#include <cstdint>
#include <vector>

#include "rcbf/barrier.hpp"
#include "rcbf/controller.hpp"
#include "rcbf/geometry.hpp"

namespace rcbf {

// Vehicle pose in the world frame: axle center position and heading.
struct Pose {
    double p1 = 0.0;  // [m]
    double p2 = 0.0;  // [m]
    double p3 = 0.0;  // [rad], in [-pi, pi)
};

struct SdeConfig {
    double dt = 0.1;     // control/measurement interval [s]
    int substeps = 10;   // inner integration steps per interval
    std::uint64_t seed = 42;

    void validate() const;
};

// Explicit Euler update of the unicycle pose.
Pose pose_step(const Pose& pose, const ControlInput& applied, double dt);

// One Euler-Maruyama step of a single relative point:
//   x1 += -cos(x2) v dt + c1 dw
//   x2 += (sin(x2)/x1) v dt - w dt + c2 dw
// dw is the Wiener increment for this step; the same scalar drives every
// point of a scan. The result is returned unclamped: a nonpositive x1
// signals to the caller that the point crossed the axle center.
ScanPoint point_step(const ScanPoint& pt, const ControlInput& applied, const NoiseParams& n,
                     double dt, double dw);

// `count` i.i.d. N(0, dt) samples, reproducible from the seed.
std::vector<double> wiener_increments(std::uint64_t seed, std::size_t count, double dt);

// Per-trial stream seed: master XOR trial index pushed through a splitmix64
// round so neighboring trials land on unrelated streams.
std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial_index);

}  // namespace rcbf
