#pragma once

#include "tvc/params.hpp"
#include "tvc/types.hpp"

namespace tvc {

/// Full simulation state: attitude, body rates, gimbal, wheel momenta and the
/// accumulated velocity change.
struct StateVector {
    double phi = 0.0;
    double theta = 0.0;
    double psi = 0.0;
    Vec3 omega_s = Vec3::Zero();
    double beta = 0.0;
    double beta_dot = 0.0;
    double h_rx = 0.0;
    double h_ry = 0.0;
    double dv_z = 0.0;

    /// Controlled deviation state [phi, theta, omega_sx, omega_sy, beta, beta_dot].
    Vec6 deviation() const;
    bool all_finite() const;

    bool operator==(const StateVector&) const = default;
};

/// Continuous part of the state, in the order
/// [phi, theta, psi, omega_sx, omega_sy, omega_sz, beta, beta_dot, h_rx, h_ry].
/// dv_z is accumulated outside the integrator.
using PhaseVector = Eigen::Matrix<double, 10, 1>;

PhaseVector pack(const StateVector& s);
StateVector unpack(const PhaseVector& x, double dv_z);

struct InputVector {
    double v_em = 0.0;
    double tau_rx = 0.0;
    double tau_ry = 0.0;
    double w_x = 0.0;
    double w_y = 0.0;
};

/// Half-width of the forbidden band around |theta| = pi/2.
inline constexpr double kPitchGuard = 0.17;

/// True when theta lies inside the usable band |theta| < pi/2 - guard.
bool pitch_within_guard(double theta);

/// Euler-angle rates (roll, pitch, yaw) from body rates. psi does not enter.
/// Throws SingularityError outside the pitch guard band.
Vec3 euler_rates(double phi, double theta, double psi, const Vec3& omega_s);

/// Angle between the thrust axis and the inertial burn direction, in [0, pi].
double thrust_deviation(double phi, double theta, double beta);

/// One left-rectangle step of the velocity-change integral.
double accumulate_delta_v(double dv_z, double delta_ft, double a_max, double dt);

struct CoupledAccels {
    Vec3 omega_dot = Vec3::Zero();
    double beta_ddot = 0.0;
};

/// Simultaneous body and gimbal accelerations of the two-body system.
///
/// The body and nozzle are joined by a 1-DoF pivot about body x. The constant
/// thrust acts at the nozzle C.M along the nozzle axis. Translational motion is
/// eliminated through the pivot constraint, which leaves the reduced mass in
/// the coupling terms. The joint torque about x is N_g·tau_em with the motor
/// law closing the gimbal channel; other joint torque components are
/// eliminated by summing the body and nozzle moment equations.
///
/// External torques on the body are the disturbance pair plus the wheel and
/// exogenous torques in `u`. The C.M offsets x_s, y_s act only through `dist`,
/// so the pivot sits on the body axis here.
///
/// Throws NumericalError when the effective inertia is singular.
CoupledAccels coupled_accels(const StateVector& state, const InputVector& u,
                             const SpacecraftParams& p, const Motor& motor,
                             const DisturbancePair& dist);

}  // namespace tvc
