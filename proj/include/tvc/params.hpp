#pragma once

#include "tvc/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tvc {

/// Constant disturbance torques about the body x/y axes (N·m).
struct DisturbancePair {
    double tau_dx = 0.0;
    double tau_dy = 0.0;

    bool operator==(const DisturbancePair&) const = default;
};

struct SpacecraftParams {
    double m_s = 0.0;   ///< body mass (kg)
    double m_n = 0.0;   ///< nozzle mass (kg)
    double I_s1 = 0.0;  ///< body axial inertia (kg·m²)
    double I_s2 = 0.0;  ///< body transverse inertia (kg·m²)
    double I_n1 = 0.0;  ///< nozzle axial inertia (kg·m²)
    double I_n2 = 0.0;  ///< nozzle transverse inertia (kg·m²)
    double z_s = 0.0;   ///< pivot distance from body C.M (m)
    double z_n = 0.0;   ///< pivot distance from nozzle C.M (m)
    double x_s = 0.0;   ///< body C.M lateral offset (m)
    double y_s = 0.0;   ///< body C.M lateral offset (m)
    double spin_rate = 0.0;  ///< nominal spin about z (rad/s)
    double delta_v_d = 0.0;  ///< desired velocity change (m/s)
    double T_b = 0.0;        ///< burn time (s)
    /// Replaces the offset-based disturbance evaluation when present.
    std::optional<DisturbancePair> disturbance_override;

    double total_mass() const { return m_s + m_n; }
    double a_max() const { return delta_v_d / T_b; }
    double thrust() const { return total_mass() * a_max(); }

    bool operator==(const SpacecraftParams&) const = default;
};

/// Data-sheet values of a geared DC motor.
struct MotorSpec {
    std::string name;
    double mass = 0.0;       ///< kg
    double tau_stall = 0.0;  ///< stall torque (N·m)
    double omega_max = 0.0;  ///< no-load speed (rad/s)
    double v_max = 0.0;      ///< rated voltage (V)
    std::optional<double> i_stall;  ///< stall current (A)
    double J_em = 0.0;   ///< rotor inertia (kg·m²)
    double tau_f = 0.0;  ///< rated friction torque (N·m)
    double N_g = 1.0;    ///< gearbox ratio

    bool operator==(const MotorSpec&) const = default;
};

/// Electromechanical constants computed from a MotorSpec.
struct MotorDerived {
    double k1 = 0.0;  ///< back-EMF constant (V·s/rad)
    double k2 = 0.0;  ///< torque per volt (N·m/V)
    std::optional<double> R_em;  ///< armature resistance (Ω)
    double c_f = 0.0;  ///< viscous friction (N·m·s/rad)

    bool operator==(const MotorDerived&) const = default;
};

/// Data sheet plus derived constants; what the actuator and plant consume.
struct Motor {
    MotorSpec spec;
    MotorDerived derived;

    bool operator==(const Motor&) const = default;
};

struct RwParams {
    double tau_rm = 0.0;  ///< max wheel torque (N·m)
    double gamma = 0.0;   ///< tanh sharpness (1/(N·m·s))
    std::optional<double> h_max;  ///< wheel momentum limit (N·m·s)

    bool operator==(const RwParams&) const = default;
};

enum class PlantModel { Linear, Nonlinear };

std::string to_string(PlantModel model);
PlantModel plant_model_from_string(const std::string& text);

/// Initial deviations from the spin equilibrium. Body spin rate about z
/// always starts at the nominal spin rate.
struct InitialState {
    double phi = 0.0;
    double theta = 0.0;
    double psi = 0.0;
    double omega_sx = 0.0;
    double omega_sy = 0.0;
    double beta = 0.0;
    double beta_dot = 0.0;
    double h_rx = 0.0;
    double h_ry = 0.0;

    bool operator==(const InitialState&) const = default;
};

/// Piecewise-linear tabulated signal, held constant outside the table.
/// An empty table is identically zero.
struct TabulatedSignal {
    std::vector<double> t;
    std::vector<double> value;

    double at(double time) const;
    bool empty() const { return t.empty(); }

    bool operator==(const TabulatedSignal&) const = default;
};

struct ScenarioConfig {
    SpacecraftParams spacecraft;
    MotorSpec motor;
    RwParams rw;
    std::vector<double> K;
    PlantModel model = PlantModel::Linear;
    double dt = 5e-4;
    double duration = 0.0;
    InitialState initial;
    TabulatedSignal w_x;
    TabulatedSignal w_y;

    bool operator==(const ScenarioConfig&) const = default;
};

/// A config that passed validation, with derived quantities attached.
struct ValidatedScenario {
    ScenarioConfig config;
    double a_max = 0.0;
    double thrust = 0.0;
    Motor motor;
    Vec6 K = Vec6::Zero();

    bool operator==(const ValidatedScenario&) const = default;
};

inline constexpr double kMaxStep = 0.005;

/// Motor constants from the data sheet. Throws ValidationError naming the
/// offending field when omega_max or v_max is not positive.
MotorDerived motor_constants(const MotorSpec& spec);

/// Every violated invariant of the spacecraft, motor and wheel blocks.
std::vector<Issue> check_spacecraft(const SpacecraftParams& p);
std::vector<Issue> check_motor(const MotorSpec& m);
std::vector<Issue> check_rw(const RwParams& rw);

/// Checks every invariant and attaches derived values. Throws ValidationError
/// listing all violations.
ValidatedScenario validate_scenario(const ScenarioConfig& cfg);
ValidatedScenario validate_scenario(const ValidatedScenario& scenario);

}  // namespace tvc
