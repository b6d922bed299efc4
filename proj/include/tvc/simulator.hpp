#pragma once

#include "tvc/actuator.hpp"
#include "tvc/dynamics.hpp"
#include "tvc/linear_model.hpp"
#include "tvc/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tvc {

struct Sample {
    double t = 0.0;
    StateVector state;
    InputVector input;        ///< applied (post-clamp) voltage and wheel torques
    ActuatorSample actuator;
    double delta_ft = 0.0;
    bool v_clamped = false;
};

struct Trajectory {
    std::vector<Sample> samples;
    PlantModel model = PlantModel::Linear;
    double dt = 0.0;
    std::string config_digest;
    bool has_current = false;  ///< i_em is meaningful
    bool aborted = false;
    std::string abort_reason;
};

/// Vector field and output channels of one closed-loop evaluation.
struct Evaluation {
    PhaseVector derivative = PhaseVector::Zero();
    InputVector input;
    ActuatorSample actuator;
    double beta_ddot = 0.0;
    bool v_clamped = false;
};

/// Closed loop of the selected plant with gimbal state feedback and wheel
/// feed-forward. Controllers are evaluated at every call, so every RK4 stage
/// sees continuous control.
class ClosedLoopSystem {
public:
    explicit ClosedLoopSystem(ValidatedScenario scenario);

    const ValidatedScenario& scenario() const { return scenario_; }
    const LinearModel& linear_model() const { return model_; }
    const DisturbancePair& disturbance() const { return dist_; }

    StateVector initial_state() const;

    /// Throws SingularityError outside the pitch guard band.
    Evaluation evaluate(double t, const PhaseVector& x) const;

    /// One RK4 step plus the left-rectangle velocity-change update. Throws on
    /// guard violation or a non-finite result.
    StateVector step(const StateVector& s, double t) const;

private:
    ValidatedScenario scenario_;
    LinearModel model_;
    DisturbancePair dist_;
};

/// Convenience single step; builds the closed loop on every call.
StateVector integrate_step(const StateVector& state, const ValidatedScenario& scenario, double t);

/// Number of integration steps: floor(duration/dt), tolerant of rounding in
/// the quotient.
long step_count(double duration, double dt);

/// Integrates from the spin equilibrium plus configured initial deviations.
/// Aborts are reported in the trajectory, which then holds every sample up to
/// the last good one.
Trajectory run_scenario(const ValidatedScenario& scenario);

struct MetricsReport {
    std::string model;
    double phi_max_deg = 0.0;
    double theta_max_deg = 0.0;
    double beta_max_deg = 0.0;
    double beta_dot_max_deg_s = 0.0;
    double delta_ft_max_deg = 0.0;
    double delta_ft_mean_deg = 0.0;
    double v_z_m_s = 0.0;
    double v_em_max_v = 0.0;
    double omega_em_max_rad_s = 0.0;
    double tau_em_max_nm = 0.0;
    std::optional<double> i_em_max_a;
    long clamp_count = 0;
    bool aborted = false;
    StabilityReport stability;
};

/// Peak absolute values and means over a non-empty trajectory. Angles are
/// reported in degrees.
MetricsReport compute_metrics(const Trajectory& traj, const LinearModel& model, const Vec6& K);

}  // namespace tvc
