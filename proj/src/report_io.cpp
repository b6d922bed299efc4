#include "tvc/report_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tvc {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& trajectory_columns() {
    static const std::vector<std::string> cols = {
        "t",        "phi_rad", "theta_rad", "psi_rad", "wsx",    "wsy",    "wsz",
        "beta_rad", "beta_dot", "h_rx",     "h_ry",    "v_em",   "tau_em", "omega_em",
        "i_em",     "m_ox",    "tau_rx",    "tau_ry",  "delta_ft_rad", "dv_z"};
    return cols;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const auto& cols = trajectory_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    std::string line;
    for (const auto& smp : traj.samples) {
        const auto& s = smp.state;
        const auto& a = smp.actuator;
        const double row[] = {smp.t,        s.phi,      s.theta,    s.psi,         s.omega_s(0),
                              s.omega_s(1), s.omega_s(2), s.beta,   s.beta_dot,    s.h_rx,
                              s.h_ry,       a.v_em,     a.tau_em,   a.omega_em,    a.i_em,
                              a.m_ox,       smp.input.tau_rx, smp.input.tau_ry, smp.delta_ft,
                              s.dv_z};
        line.clear();
        for (std::size_t i = 0; i < std::size(row); ++i) {
            if (i) line += ',';
            line += num(row[i]);
        }
        line += '\n';
        os << line;
    }
}

std::string metrics_json(const MetricsReport& m) {
    nlohmann::json j;
    j["model"] = m.model;
    j["phi_max_deg"] = m.phi_max_deg;
    j["theta_max_deg"] = m.theta_max_deg;
    j["beta_max_deg"] = m.beta_max_deg;
    j["beta_dot_max_deg_s"] = m.beta_dot_max_deg_s;
    j["delta_ft_max_deg"] = m.delta_ft_max_deg;
    j["delta_ft_mean_deg"] = m.delta_ft_mean_deg;
    j["v_z_m_s"] = m.v_z_m_s;
    j["v_em_max_v"] = m.v_em_max_v;
    j["omega_em_max_rad_s"] = m.omega_em_max_rad_s;
    j["tau_em_max_nm"] = m.tau_em_max_nm;
    j["i_em_max_a"] = m.i_em_max_a ? nlohmann::json(*m.i_em_max_a) : nlohmann::json(nullptr);
    j["clamp_count"] = m.clamp_count;
    j["aborted"] = m.aborted;
    j["closed_loop_stable"] = m.stability.closed_loop_stable;
    j["closed_loop_max_real"] = m.stability.closed_loop_max_real;
    j["open_loop_max_real"] = m.stability.open_loop_max_real;
    j["controllability_rank"] = m.stability.controllability_rank;
    return j.dump(2) + "\n";
}

void print_metrics_table(std::ostream& os, const MetricsReport& m) {
    auto f = [](double v, int prec = 2) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(prec) << v;
        return s.str();
    };
    os << "plant: " << m.model << (m.aborted ? "  (ABORTED)" : "") << "\n\n";
    os << "State overshoots\n";
    os << "  phi_m [deg]   theta_m [deg]   beta_m [deg]   beta_dot_m [deg/s]   delta_FT,m [deg]   "
          "v_z [m/s]\n";
    os << "  " << std::setw(11) << f(m.phi_max_deg) << "   " << std::setw(13) << f(m.theta_max_deg)
       << "   " << std::setw(12) << f(m.beta_max_deg) << "   " << std::setw(18)
       << f(m.beta_dot_max_deg_s) << "   " << std::setw(16) << f(m.delta_ft_max_deg) << "   "
       << std::setw(9) << f(m.v_z_m_s) << "\n";
    os << "  mean delta_FT [deg]: " << f(m.delta_ft_mean_deg) << "\n\n";
    os << "Motor overshoots\n";
    os << "  V_em,m [V]   omega_em,m [rad/s]   tau_em,m [N m]   I_em,m [A]\n";
    os << "  " << std::setw(10) << f(m.v_em_max_v) << "   " << std::setw(18)
       << f(m.omega_em_max_rad_s) << "   " << std::setw(14) << f(m.tau_em_max_nm) << "   "
       << std::setw(10) << (m.i_em_max_a ? f(*m.i_em_max_a) : std::string("n/a")) << "\n";
    os << "  voltage clamp events: " << m.clamp_count << "\n\n";
    os << "Linear model\n";
    os << "  controllability rank: " << m.stability.controllability_rank << "\n";
    os << "  max Re eig(A):      " << f(m.stability.open_loop_max_real, 4) << "\n";
    os << "  max Re eig(A - BK): " << f(m.stability.closed_loop_max_real, 4)
       << (m.stability.closed_loop_stable ? "  (stable)" : "  (UNSTABLE)") << "\n";
}

void write_linear_model_csv(std::ostream& os, const LinearModel& model, const StabilityReport& r) {
    os << "# A\n";
    os << "row,c0,c1,c2,c3,c4,c5\n";
    for (int i = 0; i < 6; ++i) {
        os << i;
        for (int j = 0; j < 6; ++j) os << ',' << num(model.A(i, j));
        os << '\n';
    }
    os << "\n# B\nrow,value\n";
    for (int i = 0; i < 6; ++i) os << i << ',' << num(model.B(i)) << '\n';

    auto eig = [&](const char* label, const std::vector<std::complex<double>>& ev) {
        os << "\n# " << label << "\nindex,real,imag\n";
        for (std::size_t i = 0; i < ev.size(); ++i)
            os << i << ',' << num(ev[i].real()) << ',' << num(ev[i].imag()) << '\n';
    };
    eig("eigenvalues_open_loop", r.open_loop_eigenvalues);
    eig("eigenvalues_closed_loop", r.closed_loop_eigenvalues);

    os << "\n# stability\nname,value\n";
    os << "controllability_rank," << r.controllability_rank << '\n';
    os << "open_loop_max_real," << num(r.open_loop_max_real) << '\n';
    os << "closed_loop_max_real," << num(r.closed_loop_max_real) << '\n';
    os << "closed_loop_stable," << (r.closed_loop_stable ? "true" : "false") << '\n';

    const auto& d = model.inertias;
    os << "\n# derived_inertias\nname,value\n";
    const std::pair<const char*, double> rows[] = {
        {"M_red", d.M_red}, {"I_1", d.I_1},       {"I_2", d.I_2},   {"lambda", d.lambda},
        {"I_r", d.I_r},     {"I_nz", d.I_nz},     {"I_beta", d.I_beta}, {"I_nm", d.I_nm},
        {"a_m2", d.a_m2},   {"a_m3", d.a_m3},     {"B_M", d.B_M},   {"d_m1", d.d_m1}};
    for (const auto& [name, v] : rows) os << name << ',' << num(v) << '\n';
}

namespace {

SweepRow run_one(const ScenarioConfig& base, const CatalogEntry& entry) {
    SweepRow row;
    row.name = entry.name;
    try {
        ScenarioConfig cfg = base;
        cfg.motor = apply_catalog_entry(base.motor, entry);
        const ValidatedScenario v = validate_scenario(cfg);
        const ClosedLoopSystem sys(v);
        const Trajectory traj = run_scenario(v);
        MetricsReport m = compute_metrics(traj, sys.linear_model(), v.K);
        row.v_margin = m.v_em_max_v / cfg.motor.v_max;
        row.omega_margin = m.omega_em_max_rad_s / cfg.motor.omega_max;
        row.tau_margin = m.tau_em_max_nm / cfg.motor.tau_stall;
        row.feasible =
            !m.aborted && row.v_margin < 1.0 && row.omega_margin < 1.0 && row.tau_margin < 1.0;
        if (m.aborted) row.error = traj.abort_reason;
        row.metrics = std::move(m);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::string csv_text(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

std::vector<SweepRow> sweep_motors(const ScenarioConfig& base,
                                   const std::vector<CatalogEntry>& catalog, bool parallel) {
    std::vector<SweepRow> rows;
    rows.reserve(catalog.size());
    if (!parallel) {
        for (const auto& e : catalog) rows.push_back(run_one(base, e));
        return rows;
    }
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(catalog.size());
    for (const auto& e : catalog)
        jobs.push_back(std::async(std::launch::async, [&base, &e] { return run_one(base, e); }));
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "name,model,phi_max_deg,theta_max_deg,beta_max_deg,beta_dot_max_deg_s,"
          "delta_ft_max_deg,delta_ft_mean_deg,v_z_m_s,v_em_max_v,omega_em_max_rad_s,"
          "tau_em_max_nm,i_em_max_a,clamp_count,aborted,closed_loop_stable,"
          "closed_loop_max_real,controllability_rank,v_margin,omega_margin,tau_margin,feasible,"
          "error\n";
    for (const auto& r : rows) {
        os << csv_text(r.name) << ',';
        if (r.metrics) {
            const auto& m = *r.metrics;
            os << m.model << ',' << num(m.phi_max_deg) << ',' << num(m.theta_max_deg) << ','
               << num(m.beta_max_deg) << ',' << num(m.beta_dot_max_deg_s) << ','
               << num(m.delta_ft_max_deg) << ',' << num(m.delta_ft_mean_deg) << ','
               << num(m.v_z_m_s) << ',' << num(m.v_em_max_v) << ','
               << num(m.omega_em_max_rad_s) << ',' << num(m.tau_em_max_nm) << ','
               << (m.i_em_max_a ? num(*m.i_em_max_a) : std::string()) << ',' << m.clamp_count
               << ',' << (m.aborted ? "true" : "false") << ','
               << (m.stability.closed_loop_stable ? "true" : "false") << ','
               << num(m.stability.closed_loop_max_real) << ','
               << m.stability.controllability_rank << ',' << num(r.v_margin) << ','
               << num(r.omega_margin) << ',' << num(r.tau_margin) << ',';
        } else {
            os << std::string(20, ',');
        }
        os << (r.feasible ? "true" : "false") << ',' << csv_text(r.error) << '\n';
    }
}

}  // namespace tvc
