#include "oracles.hpp"

#include "tvc/catalog.hpp"
#include "tvc/simulator.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tvc;

namespace {

ScenarioConfig quiet_config(double duration) {
    ScenarioConfig c = paper_baseline();
    c.spacecraft.disturbance_override = DisturbancePair{0.0, 0.0};
    c.duration = duration;
    return c;
}

Vec6 deviation_of(const Sample& s) { return s.state.deviation(); }

double max_abs_deviation(const Trajectory& t) {
    double m = 0.0;
    for (const auto& s : t.samples) m = std::max(m, deviation_of(s).cwiseAbs().maxCoeff());
    return m;
}

// Gap between the RK4 closed loop and the matrix exponential after `duration`.
double oracle_gap(double dt, double duration) {
    ScenarioConfig c = quiet_config(duration);
    c.dt = dt;
    c.initial.phi = 0.01;
    c.initial.theta = -0.005;
    c.initial.omega_sy = 0.002;
    c.initial.beta = 0.001;
    const ValidatedScenario vs = validate_scenario(c);
    const Trajectory t = run_scenario(vs);
    REQUIRE_FALSE(t.aborted);
    REQUIRE(t.samples.size() == static_cast<std::size_t>(step_count(duration, dt)) + 1);
    for (const auto& s : t.samples) REQUIRE_FALSE(s.v_clamped);

    const LinearModel m = build_state_space(c.spacecraft, vs.motor);
    const Mat6 Acl = closed_loop_matrix(m, vs.K);
    const Vec6 x0 = t.samples.front().state.deviation();
    const Vec6 exact = oracle::expm(Acl * duration) * x0;
    return (t.samples.back().state.deviation() - exact).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("spin equilibrium is a fixed point of one step") {
    for (PlantModel model : {PlantModel::Linear, PlantModel::Nonlinear}) {
        ScenarioConfig c = quiet_config(1.0);
        c.model = model;
        const ValidatedScenario vs = validate_scenario(c);
        const ClosedLoopSystem sys(vs);
        const StateVector s0 = sys.initial_state();
        const StateVector s1 = sys.step(s0, 0.0);
        CHECK(s1.deviation().norm() == 0.0);
        CHECK(s1.omega_s(2) == c.spacecraft.spin_rate);
        CHECK(s1.h_rx == 0.0);
        CHECK(s1.h_ry == 0.0);
        CHECK(integrate_step(s0, vs, 0.0) == s1);
    }
}

TEST_CASE("RK4 closed loop agrees with the matrix exponential") {
    const double g1 = oracle_gap(5e-4, 1.0);
    INFO("gap " << g1);
    CHECK(g1 < 1e-8);
}

TEST_CASE("RK4 error shrinks at fourth order") {
    const double coarse = oracle_gap(4e-3, 1.0);
    const double fine = oracle_gap(2e-3, 1.0);
    INFO("coarse " << coarse << " fine " << fine);
    CHECK(coarse / fine >= 8.0);
}

TEST_CASE("non-positive or oversized step is rejected") {
    for (double dt : {0.0, -1e-3, 1e-2}) {
        ScenarioConfig c = quiet_config(1.0);
        c.dt = dt;
        try {
            (void)validate_scenario(c);
            FAIL("expected a validation error for dt=" << dt);
        } catch (const ValidationError& e) {
            REQUIRE(!e.issues().empty());
            CHECK(e.issues().front().path == "sim.dt");
        }
    }
}

TEST_CASE("undisturbed runs stay at the spin equilibrium") {
    for (PlantModel model : {PlantModel::Linear, PlantModel::Nonlinear}) {
        ScenarioConfig c = quiet_config(5.0);
        c.model = model;
        const Trajectory t = run_scenario(validate_scenario(c));
        CHECK_FALSE(t.aborted);
        CHECK(max_abs_deviation(t) <= 1e-9);
    }
}

TEST_CASE("sample count, zero metrics and velocity change at equilibrium") {
    ScenarioConfig c = quiet_config(0.0105);
    c.dt = 1e-3;
    const ValidatedScenario vs = validate_scenario(c);
    const Trajectory t = run_scenario(vs);
    CHECK(t.samples.size() == 11);
    CHECK(t.samples.back().t == doctest::Approx(0.010));

    c = quiet_config(2.0);
    const ValidatedScenario vs2 = validate_scenario(c);
    const Trajectory t2 = run_scenario(vs2);
    CHECK(t2.samples.size() == 4001);
    const MetricsReport m = compute_metrics(t2, ClosedLoopSystem(vs2).linear_model(), vs2.K);
    CHECK(m.phi_max_deg == 0.0);
    CHECK(m.theta_max_deg == 0.0);
    CHECK(m.beta_max_deg == 0.0);
    CHECK(m.delta_ft_max_deg == 0.0);
    CHECK(m.delta_ft_mean_deg == 0.0);
    CHECK(m.v_em_max_v == 0.0);
    CHECK(m.clamp_count == 0);
    CHECK(m.v_z_m_s == doctest::Approx(vs2.a_max * 2.0).epsilon(1e-12));
}

TEST_CASE("velocity change stops at burnout") {
    ScenarioConfig c = quiet_config(3.0);
    c.spacecraft.T_b = 1.25;
    const ValidatedScenario vs = validate_scenario(c);
    const Trajectory t = run_scenario(vs);
    CHECK(t.samples.back().state.dv_z == doctest::Approx(vs.a_max * 1.25).epsilon(1e-12));
}

TEST_CASE("rotor speed follows the gimbal rate through the gearbox") {
    ScenarioConfig c = paper_baseline();
    c.duration = 5.0;
    const ValidatedScenario vs = validate_scenario(c);
    const Trajectory t = run_scenario(vs);
    REQUIRE_FALSE(t.aborted);
    double bd = 0.0, w = 0.0;
    for (const auto& s : t.samples) {
        bd = std::max(bd, std::abs(s.state.beta_dot));
        w = std::max(w, std::abs(s.actuator.omega_em));
        CHECK(s.actuator.m_ox == doctest::Approx(vs.motor.spec.N_g * s.actuator.tau_em));
    }
    CHECK(w == doctest::Approx(vs.motor.spec.N_g * bd).epsilon(1e-14));
    CHECK(bd > 0.0);
}

TEST_CASE("open-loop divergence aborts cleanly at the pitch guard") {
    for (PlantModel model : {PlantModel::Linear, PlantModel::Nonlinear}) {
        ScenarioConfig c = paper_baseline();
        c.model = model;
        c.K.assign(6, 0.0);
        c.spacecraft.disturbance_override = DisturbancePair{0.0, 400.0};
        c.rw.tau_rm = 1e-9;
        c.duration = 50.0;
        const Trajectory t = run_scenario(validate_scenario(c));
        CHECK(t.aborted);
        CHECK_FALSE(t.abort_reason.empty());
        CHECK(t.samples.back().t < c.duration);
        for (const auto& s : t.samples) {
            REQUIRE(s.state.all_finite());
            CHECK(pitch_within_guard(s.state.theta));
        }
    }
}

TEST_CASE("runs are deterministic") {
    ScenarioConfig c = paper_baseline();
    c.duration = 3.0;
    c.model = PlantModel::Nonlinear;
    const ValidatedScenario vs = validate_scenario(c);
    const Trajectory a = run_scenario(vs);
    const Trajectory b = run_scenario(vs);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) REQUIRE(a.samples[i].state == b.samples[i].state);
    CHECK(a.config_digest == b.config_digest);
}

TEST_CASE("metrics converge in the step size") {
    for (PlantModel model : {PlantModel::Linear, PlantModel::Nonlinear}) {
        ScenarioConfig c = paper_baseline();
        c.model = model;
        const ValidatedScenario coarse = validate_scenario(c);
        c.dt = 2.5e-4;
        const ValidatedScenario fine = validate_scenario(c);
        const LinearModel lm = ClosedLoopSystem(coarse).linear_model();
        const MetricsReport a = compute_metrics(run_scenario(coarse), lm, coarse.K);
        const MetricsReport b = compute_metrics(run_scenario(fine), lm, fine.K);
        CHECK(oracle::close_rel(a.phi_max_deg, b.phi_max_deg, 1e-3, 0.0));
        CHECK(oracle::close_rel(a.theta_max_deg, b.theta_max_deg, 1e-3, 0.0));
        CHECK(oracle::close_rel(a.beta_max_deg, b.beta_max_deg, 1e-3, 0.0));
        CHECK(oracle::close_rel(a.beta_dot_max_deg_s, b.beta_dot_max_deg_s, 1e-3, 0.0));
        CHECK(oracle::close_rel(a.delta_ft_max_deg, b.delta_ft_max_deg, 1e-3, 0.0));
        CHECK(oracle::close_rel(a.v_z_m_s, b.v_z_m_s, 1e-3, 0.0));
    }
}

TEST_CASE("linear and nonlinear plants agree on the reference burn") {
    ScenarioConfig c = paper_baseline();
    const ValidatedScenario lin = validate_scenario(c);
    c.model = PlantModel::Nonlinear;
    const ValidatedScenario non = validate_scenario(c);
    const LinearModel lm = ClosedLoopSystem(lin).linear_model();
    const MetricsReport a = compute_metrics(run_scenario(lin), lm, lin.K);
    const MetricsReport b = compute_metrics(run_scenario(non), lm, non.K);
    CHECK_FALSE(a.aborted);
    CHECK_FALSE(b.aborted);
    CHECK(oracle::close_rel(a.phi_max_deg, b.phi_max_deg, 0.10, 0.0));
    CHECK(oracle::close_rel(a.theta_max_deg, b.theta_max_deg, 0.10, 0.0));
    CHECK(oracle::close_rel(a.beta_max_deg, b.beta_max_deg, 0.10, 0.0));
    CHECK(oracle::close_rel(a.beta_dot_max_deg_s, b.beta_dot_max_deg_s, 0.10, 0.0));
    CHECK(oracle::close_rel(a.v_z_m_s, b.v_z_m_s, 0.10, 0.0));
}
