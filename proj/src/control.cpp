#include "tvc/control.hpp"

#include <cmath>

namespace tvc {

double state_feedback_voltage(const Vec6& x, const Vec6& K) { return -K.dot(x); }

WheelTargets wheel_targets(const DisturbancePair& dist, double spin_rate) {
    if (spin_rate == 0.0)
        throw ConfigurationError("reaction-wheel feed-forward is undefined at zero spin rate");
    return {dist.tau_dy / spin_rate, -dist.tau_dx / spin_rate};
}

namespace {

double limit_momentum(double tau, double h, const RwParams& rw) {
    if (rw.h_max && std::abs(h) >= *rw.h_max && tau * h > 0.0) return 0.0;
    return tau;
}

}  // namespace

RwCommand rw_feedforward(double h_rx, double h_ry, const DisturbancePair& dist, double spin_rate,
                         const RwParams& rw) {
    const WheelTargets target = wheel_targets(dist, spin_rate);
    RwCommand c;
    c.e_rx = h_rx - target.h_rx;
    c.e_ry = h_ry - target.h_ry;
    c.tau_rx = limit_momentum(-rw.tau_rm * std::tanh(rw.gamma * c.e_rx), h_rx, rw);
    c.tau_ry = limit_momentum(-rw.tau_rm * std::tanh(rw.gamma * c.e_ry), h_ry, rw);
    return c;
}

}  // namespace tvc
