#include "tvc/linear_model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tvc {

Vec6 DisturbanceTemplate::compose(const DisturbanceInputs& in) const {
    const double bx = x_bracket(in);
    const double by = y_bracket(in);
    Vec6 d = Vec6::Zero();
    d(2) = bx * roll_gain;
    d(3) = by * pitch_gain;
    d(5) = bx * gimbal_gain;
    return d;
}

DerivedInertias derived_inertias(const SpacecraftParams& p, double rotor_inertia) {
    DerivedInertias d;
    const double w = p.spin_rate;
    const double zz = p.z_n + p.z_s;
    const double F = p.thrust();

    d.M_red = p.m_s * p.m_n / (p.m_s + p.m_n);
    const double M = d.M_red;
    d.I_1 = p.I_n1 + p.I_s1;
    d.I_2 = p.I_n2 + p.I_s2 + M * zz * zz;
    d.lambda = (d.I_1 - d.I_2) * w / d.I_2;
    d.I_r = (p.I_n2 + M * zz * p.z_n) / d.I_2;
    d.I_nz = (p.I_n1 - p.I_n2 - M * zz * p.z_n) / d.I_2;
    d.I_beta = (F * M * p.z_s / p.m_n + d.I_nz * d.I_2 * w * w) / d.I_2;
    d.I_nm = d.I_nz - d.I_r;
    d.a_m2 = p.I_s2 * d.lambda + (p.I_s2 - p.I_s1) * w + M * p.z_s * (d.lambda + w) * zz;
    d.a_m3 = d.I_beta * p.I_s2 + M * p.z_s * (p.z_n * w * w + d.I_beta * zz) -
             F * M * p.z_s / p.m_n;
    d.B_M = d.I_r * p.I_s2 - M * p.z_s * (p.z_n - d.I_r * zz) + rotor_inertia;
    d.d_m1 = 1.0 - (M * p.z_s * p.z_s + M * p.z_n * p.z_s + p.I_s2) / d.I_2;
    if (!(d.B_M > 0.0)) throw ModelDegeneracyError("B_M", d.B_M);
    return d;
}

DisturbancePair disturbance_torques(const SpacecraftParams& p) {
    if (p.disturbance_override) return *p.disturbance_override;
    const double M = p.m_s * p.m_n / (p.m_s + p.m_n);
    const double F = p.thrust();
    return {F * M * p.y_s / p.m_n, -F * M * p.x_s / p.m_n};
}

LinearModel build_state_space(const SpacecraftParams& p, const Motor& motor) {
    const auto& ms = motor.spec;
    const auto& md = motor.derived;
    const double Ng = ms.N_g;
    const DerivedInertias d = derived_inertias(p, ms.J_em * Ng * Ng);

    const double w = p.spin_rate;
    const double BM = d.B_M;
    const double damping = Ng * Ng * (md.c_f + md.k1 * md.k2) / BM;

    LinearModel m;
    m.inertias = d;
    auto& A = m.A;
    A(0, 1) = w;
    A(0, 2) = 1.0;
    A(1, 0) = -w;
    A(1, 3) = 1.0;

    A(2, 3) = d.I_r * d.a_m2 / BM - d.lambda;
    A(2, 4) = d.I_r * d.a_m3 / BM - d.I_beta;
    A(2, 5) = d.I_r * damping;

    A(3, 2) = d.lambda;
    A(3, 5) = d.I_nm * w;

    A(4, 5) = 1.0;

    A(5, 3) = -d.a_m2 / BM;
    A(5, 4) = -d.a_m3 / BM;
    A(5, 5) = -damping;

    m.B(2) = -(d.I_r * md.k2 * Ng) / BM;
    m.B(5) = (md.k2 * Ng) / BM;

    m.d_template.roll_gain = 1.0 / d.I_2 + d.I_r * d.d_m1 / BM;
    m.d_template.pitch_gain = 1.0 / d.I_2;
    m.d_template.gimbal_gain = -d.d_m1 / BM;
    m.d_template.spin_rate = w;
    return m;
}

Mat6 closed_loop_matrix(const LinearModel& model, const Vec6& K) {
    return model.A - model.B * K.transpose();
}

Mat6 controllability_matrix(const Mat6& A, const Vec6& B) {
    Mat6 C;
    Vec6 col = B;
    for (int i = 0; i < 6; ++i) {
        C.col(i) = col;
        col = A * col;
    }
    return C;
}

int controllability_rank(const Mat6& A, const Vec6& B, double rel_tol) {
    // Orthonormal Krylov basis. The raw powers A^k·B can span many decades when
    // the motor damping is large, which would hide present directions from a
    // relative singular-value cutoff.
    const double b = B.norm();
    if (b == 0.0) return 0;
    const double a = std::max(Eigen::JacobiSVD<Mat6>(A).singularValues()(0), 1.0);
    Mat6 Q = Mat6::Zero();
    Q.col(0) = B / b;
    int rank = 1;
    while (rank < 6) {
        Vec6 v = A * Q.col(rank - 1);
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < rank; ++j) v -= Q.col(j).dot(v) * Q.col(j);
        const double n = v.norm();
        if (!(n > rel_tol * a)) break;
        Q.col(rank++) = v / n;
    }
    return rank;
}

int numerical_rank(const Mat6& m, double rel_tol) {
    Eigen::JacobiSVD<Mat6> svd(m);
    const auto& s = svd.singularValues();
    if (!s.allFinite()) throw NumericalError("singular value decomposition produced non-finite values");
    const double smax = s(0);
    if (smax == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * smax) ++rank;
    return rank;
}

std::vector<std::complex<double>> eigenvalues(const Mat6& m) {
    Eigen::EigenSolver<Mat6> es(m, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    std::vector<std::complex<double>> ev(6);
    for (int i = 0; i < 6; ++i) {
        ev[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        if (!std::isfinite(ev[static_cast<std::size_t>(i)].real()) ||
            !std::isfinite(ev[static_cast<std::size_t>(i)].imag()))
            throw NumericalError("eigenvalue solver returned non-finite values");
    }
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

namespace {

double max_real(const std::vector<std::complex<double>>& ev) {
    double r = -std::numeric_limits<double>::infinity();
    for (const auto& e : ev) r = std::max(r, e.real());
    return r;
}

}  // namespace

StabilityReport stability_report(const LinearModel& model, const Vec6& K) {
    StabilityReport r;
    r.open_loop_eigenvalues = eigenvalues(model.A);
    r.closed_loop_eigenvalues = eigenvalues(closed_loop_matrix(model, K));
    r.open_loop_max_real = max_real(r.open_loop_eigenvalues);
    r.closed_loop_max_real = max_real(r.closed_loop_eigenvalues);
    r.controllability_rank = controllability_rank(model.A, model.B);
    r.closed_loop_stable = r.closed_loop_max_real < 0.0;
    return r;
}

}  // namespace tvc
