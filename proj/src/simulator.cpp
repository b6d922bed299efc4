#include "tvc/simulator.hpp"

#include "tvc/config_io.hpp"
#include "tvc/control.hpp"
#include "tvc/rk4.hpp"

#include <algorithm>
#include <cmath>

namespace tvc {

ClosedLoopSystem::ClosedLoopSystem(ValidatedScenario scenario)
    : scenario_(std::move(scenario)),
      model_(build_state_space(scenario_.config.spacecraft, scenario_.motor)),
      dist_(disturbance_torques(scenario_.config.spacecraft)) {}

StateVector ClosedLoopSystem::initial_state() const {
    const auto& x0 = scenario_.config.initial;
    StateVector s;
    s.phi = x0.phi;
    s.theta = x0.theta;
    s.psi = x0.psi;
    s.omega_s = Vec3(x0.omega_sx, x0.omega_sy, scenario_.config.spacecraft.spin_rate);
    s.beta = x0.beta;
    s.beta_dot = x0.beta_dot;
    s.h_rx = x0.h_rx;
    s.h_ry = x0.h_ry;
    return s;
}

Evaluation ClosedLoopSystem::evaluate(double t, const PhaseVector& x) const {
    const auto& cfg = scenario_.config;
    const auto& p = cfg.spacecraft;
    const auto& motor = scenario_.motor;
    const StateVector s = unpack(x, 0.0);

    // Checked for both plants so a diverging linear run stops where the
    // nonlinear one would.
    if (!pitch_within_guard(s.theta)) (void)euler_rates(s.phi, s.theta, s.psi, s.omega_s);

    Evaluation ev;
    const double v_cmd = state_feedback_voltage(s.deviation(), scenario_.K);
    const ClampedVoltage v = clamp_voltage(v_cmd, motor.spec.v_max);
    ev.v_clamped = v.clamped;

    const RwCommand rw = rw_feedforward(s.h_rx, s.h_ry, dist_, p.spin_rate, cfg.rw);
    ev.input = InputVector{v.v, rw.tau_rx, rw.tau_ry, cfg.w_x.at(t), cfg.w_y.at(t)};

    auto& d = ev.derivative;
    if (cfg.model == PlantModel::Linear) {
        DisturbanceInputs din;
        din.tau_dx = dist_.tau_dx;
        din.tau_dy = dist_.tau_dy;
        din.tau_rx = rw.tau_rx;
        din.tau_ry = rw.tau_ry;
        din.h_rx = s.h_rx;
        din.h_ry = s.h_ry;
        din.w_x = ev.input.w_x;
        din.w_y = ev.input.w_y;
        const Vec6 xd = model_.derivative(s.deviation(), v.v, din);
        d(0) = xd(0);
        d(1) = xd(1);
        d(2) = s.omega_s(2);  // yaw advances at the spin rate
        d(3) = xd(2);
        d(4) = xd(3);
        d(5) = 0.0;
        d(6) = xd(4);
        d(7) = xd(5);
        ev.beta_ddot = xd(5);
    } else {
        const Vec3 rates = euler_rates(s.phi, s.theta, s.psi, s.omega_s);
        const CoupledAccels acc = coupled_accels(s, ev.input, p, motor, dist_);
        d.head<3>() = rates;
        d.segment<3>(3) = acc.omega_dot;
        d(6) = s.beta_dot;
        d(7) = acc.beta_ddot;
        ev.beta_ddot = acc.beta_ddot;
    }
    d(8) = rw.tau_rx;
    d(9) = rw.tau_ry;

    const double Ng = motor.spec.N_g;
    auto& a = ev.actuator;
    a.v_em = v.v;
    a.tau_em = motor_torque(v.v, Ng * s.beta_dot, Ng * ev.beta_ddot, motor);
    const GearboxOutput g = gearbox_reflect(a.tau_em, s.beta_dot, Ng);
    a.m_ox = g.m_ox;
    a.omega_em = g.omega_em;
    a.i_em = motor.derived.R_em ? motor_current(v.v, a.omega_em, motor.derived) : 0.0;
    return ev;
}

StateVector ClosedLoopSystem::step(const StateVector& s, double t) const {
    const double dt = scenario_.config.dt;
    auto field = [this](double tt, const PhaseVector& x) { return evaluate(tt, x).derivative; };
    const PhaseVector next = rk4_step(field, t, pack(s), dt);

    const double burn_left = scenario_.config.spacecraft.T_b - t;
    double dv = s.dv_z;
    if (burn_left > 0.0) {
        dv = accumulate_delta_v(dv, thrust_deviation(s.phi, s.theta, s.beta), scenario_.a_max,
                                std::min(dt, burn_left));
    }
    StateVector out = unpack(next, dv);
    if (!out.all_finite()) throw NumericalError("integration produced a non-finite state");
    return out;
}

StateVector integrate_step(const StateVector& state, const ValidatedScenario& scenario, double t) {
    return ClosedLoopSystem(scenario).step(state, t);
}

long step_count(double duration, double dt) {
    const double q = duration / dt;
    const double r = std::round(q);
    if (std::abs(q - r) <= 1e-9 * std::max(1.0, r)) return static_cast<long>(r);
    return static_cast<long>(std::floor(q));
}

Trajectory run_scenario(const ValidatedScenario& scenario) {
    const ClosedLoopSystem sys(scenario);
    const auto& cfg = scenario.config;

    Trajectory traj;
    traj.model = cfg.model;
    traj.dt = cfg.dt;
    traj.config_digest = config_digest(cfg);
    traj.has_current = scenario.motor.derived.R_em.has_value();

    const long n = step_count(cfg.duration, cfg.dt);
    traj.samples.reserve(static_cast<std::size_t>(n) + 1);

    StateVector s = sys.initial_state();
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        try {
            const Evaluation ev = sys.evaluate(t, pack(s));
            Sample smp;
            smp.t = t;
            smp.state = s;
            smp.input = ev.input;
            smp.actuator = ev.actuator;
            smp.delta_ft = thrust_deviation(s.phi, s.theta, s.beta);
            smp.v_clamped = ev.v_clamped;
            traj.samples.push_back(smp);
            if (k == n) break;
            s = sys.step(s, t);
        } catch (const std::exception& e) {
            traj.aborted = true;
            traj.abort_reason = "t=" + std::to_string(t) + " s: " + e.what();
            break;
        }
    }
    return traj;
}

MetricsReport compute_metrics(const Trajectory& traj, const LinearModel& model, const Vec6& K) {
    MetricsReport r;
    r.model = to_string(traj.model);
    r.aborted = traj.aborted;
    r.stability = stability_report(model, K);
    if (traj.samples.empty()) return r;

    double phi = 0, theta = 0, beta = 0, beta_dot = 0, dft = 0, dft_sum = 0;
    double v = 0, w_em = 0, tau = 0, cur = 0;
    for (const auto& smp : traj.samples) {
        const auto& s = smp.state;
        phi = std::max(phi, std::abs(s.phi));
        theta = std::max(theta, std::abs(s.theta));
        beta = std::max(beta, std::abs(s.beta));
        beta_dot = std::max(beta_dot, std::abs(s.beta_dot));
        dft = std::max(dft, smp.delta_ft);
        dft_sum += smp.delta_ft;
        v = std::max(v, std::abs(smp.actuator.v_em));
        w_em = std::max(w_em, std::abs(smp.actuator.omega_em));
        tau = std::max(tau, std::abs(smp.actuator.tau_em));
        cur = std::max(cur, std::abs(smp.actuator.i_em));
        if (smp.v_clamped) ++r.clamp_count;
    }
    r.phi_max_deg = rad2deg(phi);
    r.theta_max_deg = rad2deg(theta);
    r.beta_max_deg = rad2deg(beta);
    r.beta_dot_max_deg_s = rad2deg(beta_dot);
    r.delta_ft_max_deg = rad2deg(dft);
    r.delta_ft_mean_deg = rad2deg(dft_sum / static_cast<double>(traj.samples.size()));
    r.v_z_m_s = traj.samples.back().state.dv_z;
    r.v_em_max_v = v;
    r.omega_em_max_rad_s = w_em;
    r.tau_em_max_nm = tau;
    if (traj.has_current) r.i_em_max_a = cur;
    return r;
}

}  // namespace tvc
