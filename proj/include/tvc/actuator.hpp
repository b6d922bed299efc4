#pragma once

#include "tvc/params.hpp"

namespace tvc {

/// Motor and gimbal-axis channels at one instant.
struct ActuatorSample {
    double tau_em = 0.0;    ///< motor output torque (N·m)
    double omega_em = 0.0;  ///< rotor speed (rad/s)
    double i_em = 0.0;      ///< armature current (A); 0 when unavailable
    double v_em = 0.0;      ///< applied voltage (V)
    double m_ox = 0.0;      ///< torque on the gimbal axis (N·m)
};

/// Output torque of a DC motor with viscous friction:
/// k2·(v - k1·omega) - J_em·omega_dot - c_f·omega.
double motor_torque(double v_em, double omega_em, double omega_dot_em, const Motor& m);

/// Armature current (v - k1·omega)/R_em. Throws FeatureUnavailable without R_em.
double motor_current(double v_em, double omega_em, const MotorDerived& m);

struct GearboxOutput {
    double m_ox = 0.0;
    double omega_em = 0.0;
};

/// Lossless reduction: gimbal torque N_g·tau_em, rotor speed N_g·beta_dot.
GearboxOutput gearbox_reflect(double tau_em, double beta_dot, double N_g);

struct ClampedVoltage {
    double v = 0.0;
    bool clamped = false;
};

/// Limits a commanded voltage to the supply range ±v_max.
ClampedVoltage clamp_voltage(double v_cmd, double v_max);

}  // namespace tvc
