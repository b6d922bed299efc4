#include "tvc/catalog.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace tvc {

const std::vector<CatalogEntry>& motor_catalog() {
    static const std::vector<CatalogEntry> rows = {
        {"FAULHABER 3272_CR_DFF", 0.32, 1.2, 540.0, 12.0},
        {"FAULHABER 3890_CR_DFF", 0.55, 2.65, 540.0, 18.0},
        {"buehler EC-Motor_39x107_1.25.037.4XX", 0.5, 1.05, 450.0, 12.0},
        {"buehler EC-Motor_62x112_1.25.058.2XX", 1.4, 3.8, 400.0, 24.0},
        {"bosch F 006 B20 092", 1.0, 27.0, 4.4, 12.0},
        {"maxon motor", 0.48, 1.72, 692.0, 12.0},
    };
    return rows;
}

const CatalogEntry& find_catalog_entry(const std::string& key) {
    const auto& rows = motor_catalog();
    for (const auto& r : rows)
        if (r.name == key) return r;
    try {
        std::size_t pos = 0;
        const int idx = std::stoi(key, &pos);
        if (pos == key.size() && idx >= 1 && idx <= static_cast<int>(rows.size()))
            return rows[static_cast<std::size_t>(idx - 1)];
    } catch (const std::exception&) {
    }
    throw ValidationError("motor.catalog", "no catalog motor named '" + key + "'");
}

MotorSpec apply_catalog_entry(const MotorSpec& base, const CatalogEntry& entry) {
    MotorSpec m = base;
    if (entry.name != base.name) m.i_stall.reset();
    m.name = entry.name;
    m.mass = entry.mass_kg;
    m.tau_stall = entry.tau_stall_Nm;
    m.omega_max = entry.omega_max_rad_s;
    m.v_max = entry.v_max_V;
    return m;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace

void write_catalog_csv(std::ostream& os, const std::vector<CatalogEntry>& catalog) {
    os << "name,mass_kg,tau_stall_Nm,omega_max_rad_s,v_max_V\n";
    for (const auto& r : catalog)
        os << csv_field(r.name) << ',' << num(r.mass_kg) << ',' << num(r.tau_stall_Nm) << ','
           << num(r.omega_max_rad_s) << ',' << num(r.v_max_V) << '\n';
}

std::vector<CatalogEntry> read_catalog_csv(std::istream& is) {
    std::vector<CatalogEntry> rows;
    std::vector<Issue> issues;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (f.size() != 5 || f[0] != "name") {
                throw ValidationError("catalog", "expected header "
                                                 "name,mass_kg,tau_stall_Nm,omega_max_rad_s,v_max_V");
            }
            continue;
        }
        const std::string where = "catalog:" + std::to_string(lineno);
        if (f.size() != 5) {
            issues.push_back({where, "expected 5 columns"});
            continue;
        }
        try {
            rows.push_back({f[0], std::stod(f[1]), std::stod(f[2]), std::stod(f[3]),
                            std::stod(f[4])});
        } catch (const std::exception&) {
            issues.push_back({where, "non-numeric value"});
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    if (rows.empty()) throw ValidationError("catalog", "catalog has no rows");
    return rows;
}

MotorSpec faulhaber_3890() {
    MotorSpec m;
    m.name = "FAULHABER 3890_CR_DFF";
    m.mass = 0.55;
    m.tau_stall = 2.65;
    m.omega_max = 540.0;
    m.v_max = 18.0;
    m.i_stall = 79.0;
    m.J_em = 164e-7;  // 164 g·cm²
    m.tau_f = 10e-3;
    m.N_g = 10.0;
    return m;
}

ScenarioConfig paper_baseline() {
    ScenarioConfig c;
    auto& s = c.spacecraft;
    s.m_s = 150.0;
    s.m_n = 8.0;
    s.I_s2 = 10.0;
    s.I_s1 = 24.0;  // 2.4 I_s2
    s.I_n2 = 1.0;
    s.I_n1 = 0.5;   // 0.5 I_n2
    s.z_n = 0.2;
    s.z_s = 0.75;
    s.spin_rate = 6.0;
    s.delta_v_d = 100.0;
    s.T_b = 50.0;
    // 316 N acting 4 cm off the C.M.
    s.disturbance_override = DisturbancePair{12.64, 0.0};

    c.motor = faulhaber_3890();
    c.rw = RwParams{0.2, 100.0, std::nullopt};
    c.K = {31.82, -131.44, -65.24, 18.32, 217.39, -0.37};
    c.model = PlantModel::Linear;
    c.dt = 5e-4;
    c.duration = 50.0;
    return c;
}

}  // namespace tvc
