#pragma once

#include "tvc/params.hpp"
#include "tvc/types.hpp"

#include <complex>
#include <vector>

namespace tvc {

/// Inertia ratios and coupling constants of the linearized body/nozzle/motor
/// model. Ratios (I_r, I_nz, I_beta, I_nm) are normalized by I_2.
struct DerivedInertias {
    double M_red = 0.0;  ///< reduced mass m_s·m_n/(m_s + m_n)
    double I_1 = 0.0;
    double I_2 = 0.0;
    double lambda = 0.0;  ///< nutation-like rate (I_1 - I_2)·spin/I_2
    double I_r = 0.0;
    double I_nz = 0.0;
    double I_beta = 0.0;
    double I_nm = 0.0;
    double a_m2 = 0.0;
    double a_m3 = 0.0;
    double B_M = 0.0;
    double d_m1 = 0.0;
};

/// Time-varying inputs that enter the disturbance column of the linear model.
struct DisturbanceInputs {
    double tau_dx = 0.0;
    double tau_dy = 0.0;
    double tau_rx = 0.0;
    double tau_ry = 0.0;
    double h_rx = 0.0;
    double h_ry = 0.0;
    double w_x = 0.0;
    double w_y = 0.0;
};

/// Structure of the disturbance column. The x-axis torque bracket
/// (tau_dx + tau_rx + spin·h_ry + w_x) drives rows 3 and 6, the y-axis bracket
/// (tau_dy + tau_ry - spin·h_rx + w_y) drives row 4.
struct DisturbanceTemplate {
    double roll_gain = 0.0;    ///< row 3: 1/I_2 + I_r·d_m1/B_M
    double pitch_gain = 0.0;   ///< row 4: 1/I_2
    double gimbal_gain = 0.0;  ///< row 6: -d_m1/B_M
    double spin_rate = 0.0;

    double x_bracket(const DisturbanceInputs& in) const {
        return in.tau_dx + in.tau_rx + spin_rate * in.h_ry + in.w_x;
    }
    double y_bracket(const DisturbanceInputs& in) const {
        return in.tau_dy + in.tau_ry - spin_rate * in.h_rx + in.w_y;
    }
    Vec6 compose(const DisturbanceInputs& in) const;
};

/// State ordering: X = [phi, theta, omega_sx, omega_sy, beta, beta_dot].
struct LinearModel {
    Mat6 A = Mat6::Zero();
    Vec6 B = Vec6::Zero();
    DisturbanceTemplate d_template;
    DerivedInertias inertias;

    Vec6 derivative(const Vec6& x, double v_em, const DisturbanceInputs& d) const {
        return A * x + B * v_em + d_template.compose(d);
    }
};

struct StabilityReport {
    std::vector<std::complex<double>> open_loop_eigenvalues;
    std::vector<std::complex<double>> closed_loop_eigenvalues;
    double open_loop_max_real = 0.0;
    double closed_loop_max_real = 0.0;
    int controllability_rank = 0;
    bool closed_loop_stable = false;
};

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-9;

/// `rotor_inertia` is the motor rotor inertia reflected through the gearbox
/// (J_em·N_g²); it only enters B_M. Throws ModelDegeneracyError when B_M <= 0.
DerivedInertias derived_inertias(const SpacecraftParams& p, double rotor_inertia = 0.0);

/// Disturbance torques from the C.M offsets, or the override when present.
DisturbancePair disturbance_torques(const SpacecraftParams& p);

LinearModel build_state_space(const SpacecraftParams& p, const Motor& motor);

Mat6 closed_loop_matrix(const LinearModel& model, const Vec6& K);

/// Controllability matrix [B, AB, ..., A^5 B].
Mat6 controllability_matrix(const Mat6& A, const Vec6& B);

int numerical_rank(const Mat6& m, double rel_tol = kRankTolerance);

/// Dimension of the reachable subspace, from an orthonormalised Krylov
/// sequence. A new direction counts when its residual exceeds
/// rel_tol·max(sigma_max(A), 1).
int controllability_rank(const Mat6& A, const Vec6& B, double rel_tol = kRankTolerance);

/// Eigenvalues sorted by (real, imag). Throws NumericalError on solver failure.
std::vector<std::complex<double>> eigenvalues(const Mat6& m);

StabilityReport stability_report(const LinearModel& model, const Vec6& K);

}  // namespace tvc
