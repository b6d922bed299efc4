#include "tvc/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvc {

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i > 0) os << "; ";
        os << issues[i].path << ": " << issues[i].message;
    }
    return os.str();
}

std::string fmt_bound(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_positive(std::vector<Issue>& out, const std::string& path, const std::string& name,
                      double v) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back({path, name + " must be positive"});
}

void require_nonnegative(std::vector<Issue>& out, const std::string& path, const std::string& name,
                         double v) {
    if (!(std::isfinite(v) && v >= 0.0)) out.push_back({path, name + " must be non-negative"});
}

void require_finite(std::vector<Issue>& out, const std::string& path, const std::string& name,
                    double v) {
    if (!std::isfinite(v)) out.push_back({path, name + " must be finite"});
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(std::string path, std::string message)
    : ValidationError(std::vector<Issue>{{std::move(path), std::move(message)}}) {}

ModelDegeneracyError::ModelDegeneracyError(std::string constant, double value)
    : std::runtime_error("model degenerate: " + constant + " = " + fmt_bound(value) +
                         " must be positive"),
      constant_(std::move(constant)),
      value_(value) {}

std::string to_string(PlantModel model) {
    return model == PlantModel::Linear ? "linear" : "nonlinear";
}

PlantModel plant_model_from_string(const std::string& text) {
    if (text == "linear") return PlantModel::Linear;
    if (text == "nonlinear") return PlantModel::Nonlinear;
    throw ValidationError("sim.model", "model must be 'linear' or 'nonlinear', got '" + text + "'");
}

double TabulatedSignal::at(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return value.front();
    if (time >= t.back()) return value.back();
    const auto hi = std::upper_bound(t.begin(), t.end(), time);
    const auto i = static_cast<std::size_t>(hi - t.begin());
    const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
    return value[i - 1] + w * (value[i] - value[i - 1]);
}

MotorDerived motor_constants(const MotorSpec& spec) {
    std::vector<Issue> issues;
    require_positive(issues, "motor.omega_max", "omega_max", spec.omega_max);
    require_positive(issues, "motor.v_max", "v_max", spec.v_max);
    if (!issues.empty()) throw ValidationError(std::move(issues));

    MotorDerived d;
    d.k1 = spec.v_max / spec.omega_max;
    d.k2 = spec.tau_stall / spec.v_max;
    if (spec.i_stall && *spec.i_stall > 0.0) d.R_em = spec.v_max / *spec.i_stall;
    // Rated friction is reached at no-load speed.
    d.c_f = spec.tau_f / spec.omega_max;
    return d;
}

std::vector<Issue> check_spacecraft(const SpacecraftParams& p) {
    std::vector<Issue> out;
    const std::string s = "spacecraft.";
    require_positive(out, s + "m_s", "m_s", p.m_s);
    require_positive(out, s + "m_n", "m_n", p.m_n);
    require_positive(out, s + "I_s1", "I_s1", p.I_s1);
    require_positive(out, s + "I_s2", "I_s2", p.I_s2);
    require_positive(out, s + "I_n1", "I_n1", p.I_n1);
    require_positive(out, s + "I_n2", "I_n2", p.I_n2);
    require_positive(out, s + "z_s", "z_s", p.z_s);
    require_positive(out, s + "z_n", "z_n", p.z_n);
    require_finite(out, s + "x_s", "x_s", p.x_s);
    require_finite(out, s + "y_s", "y_s", p.y_s);
    require_finite(out, s + "spin_rate", "spin_rate", p.spin_rate);
    require_positive(out, s + "delta_v_d", "delta_v_d", p.delta_v_d);
    require_positive(out, s + "T_b", "T_b", p.T_b);
    if (p.disturbance_override) {
        require_finite(out, s + "disturbance_override", "disturbance_override",
                       p.disturbance_override->tau_dx);
        require_finite(out, s + "disturbance_override", "disturbance_override",
                       p.disturbance_override->tau_dy);
    }
    if (out.empty()) {
        const double a = p.a_max();
        const double f = p.thrust();
        if (!(std::isfinite(a) && a > 0.0))
            out.push_back({s + "a_max", "derived a_max must be finite and positive"});
        if (!(std::isfinite(f) && f > 0.0))
            out.push_back({s + "F_T", "derived thrust must be finite and positive"});
    }
    return out;
}

std::vector<Issue> check_motor(const MotorSpec& m) {
    std::vector<Issue> out;
    const std::string s = "motor.";
    require_nonnegative(out, s + "mass", "mass", m.mass);
    require_positive(out, s + "tau_stall", "tau_stall", m.tau_stall);
    require_positive(out, s + "omega_max", "omega_max", m.omega_max);
    require_positive(out, s + "v_max", "v_max", m.v_max);
    if (m.i_stall) require_positive(out, s + "i_stall", "i_stall", *m.i_stall);
    require_nonnegative(out, s + "J_em", "J_em", m.J_em);
    require_nonnegative(out, s + "tau_f", "tau_f", m.tau_f);
    require_positive(out, s + "N_g", "N_g", m.N_g);
    return out;
}

std::vector<Issue> check_rw(const RwParams& rw) {
    std::vector<Issue> out;
    require_positive(out, "rw.tau_rm", "tau_rm", rw.tau_rm);
    require_positive(out, "rw.gamma", "gamma", rw.gamma);
    if (rw.h_max) require_positive(out, "rw.h_max", "h_max", *rw.h_max);
    return out;
}

namespace {

void check_signal(std::vector<Issue>& out, const std::string& path, const TabulatedSignal& sig) {
    if (sig.t.size() != sig.value.size()) {
        out.push_back({path, "time and value columns differ in length"});
        return;
    }
    for (std::size_t i = 0; i < sig.t.size(); ++i) {
        if (!std::isfinite(sig.t[i]) || !std::isfinite(sig.value[i])) {
            out.push_back({path, "entries must be finite"});
            return;
        }
        if (i > 0 && !(sig.t[i] > sig.t[i - 1])) {
            out.push_back({path, "sample times must be strictly increasing"});
            return;
        }
    }
}

}  // namespace

ValidatedScenario validate_scenario(const ScenarioConfig& cfg) {
    std::vector<Issue> issues = check_spacecraft(cfg.spacecraft);
    for (auto& i : check_motor(cfg.motor)) issues.push_back(std::move(i));
    for (auto& i : check_rw(cfg.rw)) issues.push_back(std::move(i));

    if (cfg.K.size() != 6) {
        issues.push_back({"control.K", "gain K requires 6 entries, got " +
                                           std::to_string(cfg.K.size())});
    } else {
        for (double k : cfg.K)
            if (!std::isfinite(k)) {
                issues.push_back({"control.K", "gain entries must be finite"});
                break;
            }
    }

    if (!std::isfinite(cfg.dt) || cfg.dt <= 0.0)
        issues.push_back({"sim.dt", "dt must be positive"});
    else if (cfg.dt > kMaxStep)
        issues.push_back({"sim.dt", "dt must not exceed " + fmt_bound(kMaxStep) + " s"});
    if (!std::isfinite(cfg.duration) || cfg.duration <= 0.0)
        issues.push_back({"sim.duration", "duration must be positive"});

    const auto& x0 = cfg.initial;
    for (double v : {x0.phi, x0.theta, x0.psi, x0.omega_sx, x0.omega_sy, x0.beta, x0.beta_dot,
                     x0.h_rx, x0.h_ry}) {
        if (!std::isfinite(v)) {
            issues.push_back({"sim.initial", "initial state entries must be finite"});
            break;
        }
    }
    check_signal(issues, "sim.w_x", cfg.w_x);
    check_signal(issues, "sim.w_y", cfg.w_y);

    if (!issues.empty()) throw ValidationError(std::move(issues));

    ValidatedScenario v;
    v.config = cfg;
    v.a_max = cfg.spacecraft.a_max();
    v.thrust = cfg.spacecraft.thrust();
    v.motor = Motor{cfg.motor, motor_constants(cfg.motor)};
    for (int i = 0; i < 6; ++i) v.K(i) = cfg.K[static_cast<std::size_t>(i)];
    return v;
}

ValidatedScenario validate_scenario(const ValidatedScenario& scenario) {
    return validate_scenario(scenario.config);
}

}  // namespace tvc
