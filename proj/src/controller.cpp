#include "rcbf/controller.hpp"

#include "rcbf/errors.hpp"

namespace rcbf {

void ControllerConfig::validate() const {
    if (!(gamma >= 0.0)) throw InvalidParams("controller: gamma must be >= 0");
    if (!(k >= 0.0)) throw InvalidParams("controller: k must be >= 0");
    if (!(c >= 0.0)) throw InvalidParams("controller: c must be >= 0");
    if (!(eps_g > 0.0)) throw InvalidParams("controller: eps_g must be > 0");
}

namespace {

// Least-norm input reducing the barrier growth by `excess`:
//   -(excess / ||lgb||^2) lgb^T.
// Shared by phi_d and the projection branch of phi_n so that the two agree
// bit for bit when their (I, J) pairs coincide.
ControlInput scaled_descent(const Vec2& lgb, double excess, double eps_g) {
    const double g2 = dot(lgb, lgb);
    if (g2 < eps_g * eps_g)
        throw GradientDegenerate("gradient vanished while the growth condition is active");
    const double s = -excess / g2;
    return {s * lgb.x, s * lgb.y};
}

}  // namespace

ControlInput phi_d(const BarrierEval& ev, const PreInput& pre, const ControllerConfig& cfg) {
    const double i_d = dot(ev.lgb, {pre.v_o, pre.w_o});
    const double j_d = cfg.k * ev.b + cfg.c;
    if (i_d > j_d) return scaled_descent(ev.lgb, i_d - j_d, cfg.eps_g);
    return {0.0, 0.0};
}

ControlInput phi_n(const BarrierEval& ev, const PreInput& pre, const ControllerConfig& cfg) {
    const double i_s = dot(ev.lgb, {pre.v_o, pre.w_o}) + ev.ito;
    const double j_s = cfg.gamma * ev.b;
    if (i_s > j_s) {
        if (cfg.psi_form == PsiForm::projection)
            return scaled_descent(ev.lgb, i_s - j_s, cfg.eps_g);
        // Full cancel: drop the preinput entirely and steer along the
        // gradient so the realized growth lands exactly on gamma*B.
        const double g2 = dot(ev.lgb, ev.lgb);
        if (g2 < cfg.eps_g * cfg.eps_g)
            throw GradientDegenerate("gradient vanished while the growth condition is active");
        const double s = (j_s - ev.ito) / g2;
        return {-pre.v_o + s * ev.lgb.x, -pre.w_o + s * ev.lgb.y};
    }
    return {0.0, 0.0};
}

ControlInput synthesize(const BarrierEval& ev, const PreInput& pre, const ControllerConfig& cfg) {
    return cfg.mode == ControlMode::deterministic ? phi_d(ev, pre, cfg) : phi_n(ev, pre, cfg);
}

ControlInput applied_input(const PreInput& pre, const ControlInput& u) {
    return {pre.v_o + u.v, pre.w_o + u.w};
}

}  // namespace rcbf
