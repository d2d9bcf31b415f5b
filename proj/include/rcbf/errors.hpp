#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcbf {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : SimError {
    using SimError::SimError;
};

// Measured point coincides with the axle center; the relative-state model
// divides by the distance, so such points are rejected at the door.
struct DegeneratePoint : SimError {
    using SimError::SimError;
};

// A scan point at or past its allowable-distance boundary. The barrier is
// undefined there; callers decide how to log or terminate.
struct OutsideSafeSet : SimError {
    std::size_t index;
    double margin;
    OutsideSafeSet(std::size_t i, double m)
        : SimError("scan point " + std::to_string(i) + " outside safe set (margin " +
                   std::to_string(m) + " m)"),
          index(i),
          margin(m) {}
};

// The closed-form compensator divides by ||L_gB||^2; a vanishing gradient
// with the growth condition active has no finite solution.
struct GradientDegenerate : SimError {
    using SimError::SimError;
};

struct SensorEmbedded : SimError {
    using SimError::SimError;
};

struct InsufficientData : SimError {
    using SimError::SimError;
};

struct UnknownScenario : SimError {
    using SimError::SimError;
};

struct InvalidInitialState : SimError {
    using SimError::SimError;
};

struct ConfigError : SimError {
    using SimError::SimError;
};

}  // namespace rcbf
