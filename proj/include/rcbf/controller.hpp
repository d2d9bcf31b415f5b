#pragma once

#include "rcbf/barrier.hpp"

namespace rcbf {

// Nominal command issued by a mission-level controller; the safety
// compensator corrects it additively. May vary tick to tick.
struct PreInput {
    double v_o = 0.0;  // translational [m/s]
    double w_o = 0.0;  // rotational [rad/s]
};

struct ControlInput {
    double v = 0.0;  // [m/s]
    double w = 0.0;  // [rad/s]
};

enum class ControlMode { deterministic, stochastic };

// Shape of the active-branch correction in stochastic mode. `projection`
// removes only the unsafe component of the preinput and reduces exactly to
// the deterministic compensator at zero diffusion; `full_cancel` replaces
// the whole preinput with the gradient direction, which also cancels the
// rotation command and parks the vehicle against the boundary. Both make
// the realized barrier growth equal gamma*B on the active branch.
enum class PsiForm { full_cancel, projection };

struct ControllerConfig {
    double gamma = 0.5;  // stochastic growth rate bound [1/s]
    double k = 0.5;      // deterministic growth rate bound [1/s]
    double c = 0.0;      // deterministic growth offset [1/(m s)]
    ControlMode mode = ControlMode::stochastic;
    PsiForm psi_form = PsiForm::projection;
    double eps_g = 1e-9;  // gradient-norm floor

    void validate() const;
};

// Deterministic compensator: with I_d = L_gB u_o and J_d = K B + C, returns
// the least-norm correction enforcing L_gB (u_o + u) <= J_d, or zero when
// the condition already holds. Throws GradientDegenerate when the gradient
// vanishes while I_d > J_d.
ControlInput phi_d(const BarrierEval& ev, const PreInput& pre, const ControllerConfig& cfg);

// Stochastic compensator: with I = L_gB u_o + L_sigma and J = gamma B,
// returns psi (per cfg.psi_form) when I > J, else zero. Same degenerate-
// gradient contract as phi_d.
ControlInput phi_n(const BarrierEval& ev, const PreInput& pre, const ControllerConfig& cfg);

// Dispatches on cfg.mode.
ControlInput synthesize(const BarrierEval& ev, const PreInput& pre, const ControllerConfig& cfg);

// The input actually driven: (v_o + v, w_o + w).
ControlInput applied_input(const PreInput& pre, const ControlInput& u);

}  // namespace rcbf
