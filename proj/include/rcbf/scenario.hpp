#pragma once

#include <string>
#include <vector>

#include "rcbf/barrier.hpp"
#include "rcbf/controller.hpp"
#include "rcbf/dynamics.hpp"
#include "rcbf/lidar.hpp"

namespace rcbf {

// point_cloud integrates the relative-point SDE directly; pose integrates
// the vehicle pose and resamples the rangefinder every control interval.
enum class SimMode { point_cloud, pose };

// A preinput sample for tabulated (time-varying) commands; zero-order hold.
struct PreInputSample {
    double t = 0.0;
    PreInput value;
};

struct Scenario {
    VehicleParams vehicle;
    ControllerConfig controller;
    NoiseParams noise;
    PreInput pre{0.2, 0.2};
    std::vector<PreInputSample> pre_table;  // optional; overrides `pre` from each sample on
    Environment env;
    Pose initial_pose;
    std::vector<ScanPoint> initial_points;  // optional; bypasses the initial raycast
    double horizon = 30.0;                  // [s]
    SdeConfig sde;
    SimMode mode = SimMode::point_cloud;
    int trials = 100;

    void validate() const;
};

// Preinput in force at time t (zero-order hold over pre_table).
PreInput pre_at(const Scenario& sc, double t);

// Named experiment setups: exp1d, exp1n, exp2d, exp2n. A straight wall is
// placed so the nearest return at the initial pose reads (0.4 m, pi/4).
Scenario builtin_scenario(const std::string& name);

// Flat sectioned key-value format; see save_scenario for the layout.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

}  // namespace rcbf
