#include "tvc/actuator.hpp"

#include <algorithm>

namespace tvc {

double motor_torque(double v_em, double omega_em, double omega_dot_em, const Motor& m) {
    const auto& d = m.derived;
    return d.k2 * (v_em - d.k1 * omega_em) - m.spec.J_em * omega_dot_em - d.c_f * omega_em;
}

double motor_current(double v_em, double omega_em, const MotorDerived& m) {
    if (!m.R_em || !(*m.R_em > 0.0))
        throw FeatureUnavailable("motor current needs a stall current (armature resistance)");
    return (v_em - m.k1 * omega_em) / *m.R_em;
}

GearboxOutput gearbox_reflect(double tau_em, double beta_dot, double N_g) {
    return {N_g * tau_em, N_g * beta_dot};
}

ClampedVoltage clamp_voltage(double v_cmd, double v_max) {
    const double v = std::clamp(v_cmd, -v_max, v_max);
    return {v, v != v_cmd};
}

}  // namespace tvc
