#pragma once

#include "tvc/params.hpp"
#include "tvc/types.hpp"

namespace tvc {

/// Gimbal motor voltage from full-state feedback, v = -K·X, before saturation.
double state_feedback_voltage(const Vec6& x, const Vec6& K);

struct RwCommand {
    double tau_rx = 0.0;
    double tau_ry = 0.0;
    double e_rx = 0.0;
    double e_ry = 0.0;
};

/// Momentum targets whose gyroscopic torque cancels the constant disturbance.
struct WheelTargets {
    double h_rx = 0.0;
    double h_ry = 0.0;
};

WheelTargets wheel_targets(const DisturbancePair& dist, double spin_rate);

/// Reaction-wheel feed-forward. Wheel momentum obeys h_dot = tau_r, so the
/// torque is -tau_Rm·tanh(gamma·e) to drive the tracking error to zero.
/// With h_max set, torque that would push |h| past the limit is zeroed.
/// Throws ConfigurationError when spin_rate is zero.
RwCommand rw_feedforward(double h_rx, double h_ry, const DisturbancePair& dist, double spin_rate,
                         const RwParams& rw);

}  // namespace tvc
