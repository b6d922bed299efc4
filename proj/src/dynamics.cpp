#include "tvc/dynamics.hpp"

#include "tvc/actuator.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvc {

Vec6 StateVector::deviation() const {
    Vec6 x;
    x << phi, theta, omega_s(0), omega_s(1), beta, beta_dot;
    return x;
}

bool StateVector::all_finite() const {
    return std::isfinite(phi) && std::isfinite(theta) && std::isfinite(psi) &&
           omega_s.allFinite() && std::isfinite(beta) && std::isfinite(beta_dot) &&
           std::isfinite(h_rx) && std::isfinite(h_ry) && std::isfinite(dv_z);
}

PhaseVector pack(const StateVector& s) {
    PhaseVector x;
    x << s.phi, s.theta, s.psi, s.omega_s(0), s.omega_s(1), s.omega_s(2), s.beta, s.beta_dot,
        s.h_rx, s.h_ry;
    return x;
}

StateVector unpack(const PhaseVector& x, double dv_z) {
    StateVector s;
    s.phi = x(0);
    s.theta = x(1);
    s.psi = x(2);
    s.omega_s = x.segment<3>(3);
    s.beta = x(6);
    s.beta_dot = x(7);
    s.h_rx = x(8);
    s.h_ry = x(9);
    s.dv_z = dv_z;
    return s;
}

bool pitch_within_guard(double theta) { return std::abs(theta) < kPi / 2.0 - kPitchGuard; }

Vec3 euler_rates(double phi, double theta, double /*psi*/, const Vec3& omega_s) {
    if (!pitch_within_guard(theta)) {
        std::ostringstream os;
        os << "pitch angle " << rad2deg(theta) << " deg is inside the Euler singularity guard band";
        throw SingularityError(os.str());
    }
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double tt = std::tan(theta), ct = std::cos(theta);
    Mat3 J;
    J << 1.0, sp * tt, cp * tt,
         0.0, cp, -sp,
         0.0, sp / ct, cp / ct;
    return J * omega_s;
}

double thrust_deviation(double phi, double theta, double beta) {
    const double c = std::clamp(std::cos(theta) * std::cos(phi + beta), -1.0, 1.0);
    return std::acos(c);
}

double accumulate_delta_v(double dv_z, double delta_ft, double a_max, double dt) {
    return dv_z + a_max * std::cos(delta_ft) * dt;
}

namespace {

Mat3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 R;
    R << 1.0, 0.0, 0.0,
         0.0, c, -s,
         0.0, s, c;
    return R;
}

}  // namespace

CoupledAccels coupled_accels(const StateVector& state, const InputVector& u,
                             const SpacecraftParams& p, const Motor& motor,
                             const DisturbancePair& dist) {
    const double m_tot = p.m_s + p.m_n;
    const double M = p.m_s * p.m_n / m_tot;
    const double Ng = motor.spec.N_g;

    const Mat3 R = rot_x(state.beta);  // nozzle -> body
    const Mat3 I_s = Vec3(p.I_s2, p.I_s2, p.I_s1).asDiagonal();
    const Mat3 I_n = R * Vec3(p.I_n2, p.I_n2, p.I_n1).asDiagonal() * R.transpose();
    const Vec3 r_no = R * Vec3(0.0, 0.0, p.z_n);  // nozzle C.M -> pivot
    const Vec3 r_so(0.0, 0.0, -p.z_s);             // body C.M -> pivot
    const Vec3 thrust = R * Vec3(0.0, 0.0, p.thrust());
    const Vec3 q = r_so - r_no;                   // nozzle C.M -> body C.M

    const Vec3& w_s = state.omega_s;
    const Vec3 e_x = Vec3::UnitX();
    const Vec3 w_r = state.beta_dot * e_x;
    const Vec3 w_n = w_s + w_r;
    const Vec3 H(state.h_rx, state.h_ry, 0.0);
    const Vec3 tau_ext(dist.tau_dx + u.tau_rx + u.w_x, dist.tau_dy + u.tau_ry + u.w_y, 0.0);

    const Vec3 body_gyro = w_s.cross(I_s * w_s + H);
    const Vec3 centripetal = w_s.cross(w_s.cross(r_so)) - w_n.cross(w_n.cross(r_no));
    const Vec3 transport = w_s.cross(w_r);

    // Residual of [summed moment equation; nozzle moment about the gimbal axis]
    // for trial accelerations. It is affine in (omega_dot, beta_ddot).
    auto residual = [&](const Vec3& alpha_s, double beta_ddot) {
        const Vec3 alpha_n = alpha_s + beta_ddot * e_x + transport;
        const Vec3 q_ddot = alpha_s.cross(r_so) - alpha_n.cross(r_no) + centripetal;
        // Pivot force on the body.
        const Vec3 F_o = (p.m_s / m_tot) * thrust - M * q_ddot;
        const Vec3 nozzle_rate = I_n * alpha_n + w_n.cross(I_n * w_n);

        const double tau_em =
            motor_torque(u.v_em, Ng * state.beta_dot, Ng * beta_ddot, motor);
        const double m_ox = gearbox_reflect(tau_em, state.beta_dot, Ng).m_ox;

        Vec4 r;
        r.head<3>() = I_s * alpha_s + body_gyro + nozzle_rate - tau_ext - q.cross(F_o);
        r(3) = e_x.dot(nozzle_rate) + e_x.dot(r_no.cross(F_o)) - m_ox;
        return r;
    };

    const Vec4 r0 = residual(Vec3::Zero(), 0.0);
    Mat4 E;
    for (int i = 0; i < 3; ++i) E.col(i) = residual(Vec3::Unit(i), 0.0) - r0;
    E.col(3) = residual(Vec3::Zero(), 1.0) - r0;

    Eigen::FullPivLU<Mat4> lu(E);
    if (!lu.isInvertible()) {
        std::ostringstream os;
        os << "effective inertia is singular at phi=" << state.phi << " theta=" << state.theta
           << " beta=" << state.beta << " beta_dot=" << state.beta_dot;
        throw NumericalError(os.str());
    }
    const Vec4 z = lu.solve(-r0);
    if (!z.allFinite()) throw NumericalError("coupled accelerations are not finite");
    return {z.head<3>(), z(3)};
}

}  // namespace tvc
