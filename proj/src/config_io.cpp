#include "tvc/config_io.hpp"

#include "tvc/catalog.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tvc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

bool parse_number(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    try {
        std::size_t pos = 0;
        out = std::stod(t, &pos);
        return pos == t.size();
    } catch (const std::exception&) {
        return false;
    }
}

using Section = std::map<std::string, std::pair<std::string, int>>;  // key -> (value, line)

/// Consumes keys from one section, recording problems instead of throwing.
class SectionReader {
public:
    SectionReader(std::string name, Section keys, std::vector<Issue>& issues)
        : name_(std::move(name)), keys_(std::move(keys)), issues_(issues) {}

    bool has(const std::string& key) const { return keys_.count(key) != 0; }

    std::optional<std::string> text(const std::string& key) {
        auto it = keys_.find(key);
        if (it == keys_.end()) return std::nullopt;
        used_.insert(key);
        return it->second.first;
    }

    void required(const std::string& key, double& out) {
        if (!has(key)) {
            issues_.push_back({path(key), "missing required key"});
            return;
        }
        optional(key, out);
    }

    void optional(const std::string& key, double& out) {
        if (auto t = text(key)) {
            double v = 0.0;
            if (parse_number(*t, v))
                out = v;
            else
                issues_.push_back({path(key), "expected a number, got '" + *t + "'"});
        }
    }

    void optional(const std::string& key, std::optional<double>& out) {
        if (has(key)) {
            double v = 0.0;
            optional(key, v);
            out = v;
        }
    }

    std::optional<std::vector<double>> list(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        std::vector<double> out;
        for (const auto& item : split(*t, ',')) {
            double v = 0.0;
            if (!parse_number(item, v)) {
                issues_.push_back({path(key), "expected a comma-separated number list"});
                return std::nullopt;
            }
            out.push_back(v);
        }
        return out;
    }

    /// Value given under key_<unit> for one of the units, scaled to SI.
    void with_unit(const std::string& base, const std::vector<std::pair<std::string, double>>& units,
                   double& out) {
        int found = 0;
        for (const auto& [suffix, scale] : units) {
            const std::string key = base + suffix;
            if (!has(key)) continue;
            ++found;
            double v = 0.0;
            if (auto t = text(key); t && parse_number(*t, v))
                out = v * scale;
            else
                issues_.push_back({path(key), "expected a number"});
        }
        if (found > 1) issues_.push_back({path(base), "given in more than one unit"});
    }

    void reject_unused() {
        for (const auto& [key, value] : keys_)
            if (!used_.count(key))
                issues_.push_back({path(key), "unknown key (line " +
                                                  std::to_string(value.second) + ")"});
    }

    std::string path(const std::string& key) const { return name_ + "." + key; }

private:
    std::string name_;
    Section keys_;
    std::set<std::string> used_;
    std::vector<Issue>& issues_;
};

const std::vector<std::pair<std::string, double>> kAngleUnits = {{"_rad", 1.0},
                                                                  {"_deg", kPi / 180.0}};
const std::vector<std::pair<std::string, double>> kRateUnits = {{"_rad_s", 1.0},
                                                                 {"_deg_s", kPi / 180.0}};

void read_signal(SectionReader& r, const std::string& key, TabulatedSignal& sig,
                 std::vector<Issue>& issues) {
    auto t = r.text(key);
    if (!t) return;
    for (const auto& item : split(*t, ',')) {
        const auto parts = split(item, ':');
        double a = 0.0, b = 0.0;
        if (parts.size() != 2 || !parse_number(parts[0], a) || !parse_number(parts[1], b)) {
            issues.push_back({r.path(key), "expected time:value pairs separated by commas"});
            sig = {};
            return;
        }
        sig.t.push_back(a);
        sig.value.push_back(b);
    }
}

}  // namespace

ScenarioConfig parse_config(std::istream& is) {
    static const std::set<std::string> known = {"spacecraft", "motor", "rw", "control", "sim"};
    std::map<std::string, Section> sections;
    std::vector<Issue> issues;

    std::string line, current;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const std::string where = "line " + std::to_string(lineno);
        if (t.front() == '[') {
            if (t.back() != ']') {
                issues.push_back({where, "malformed section header"});
                continue;
            }
            current = trim(t.substr(1, t.size() - 2));
            if (!known.count(current)) issues.push_back({current, "unknown section"});
            if (sections.count(current))
                issues.push_back({current, "section appears more than once"});
            sections[current];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            issues.push_back({where, "expected 'key = value'"});
            continue;
        }
        if (current.empty()) {
            issues.push_back({where, "key outside of any section"});
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (const auto hash = value.find(" #"); hash != std::string::npos)
            value = trim(value.substr(0, hash));
        auto& sec = sections[current];
        if (sec.count(key))
            issues.push_back({current + "." + key, "duplicate key"});
        else
            sec[key] = {value, lineno};
    }

    for (const auto& name : known)
        if (!sections.count(name)) issues.push_back({name, "missing section"});

    ScenarioConfig cfg;

    SectionReader sc("spacecraft", sections["spacecraft"], issues);
    auto& p = cfg.spacecraft;
    sc.required("m_s", p.m_s);
    sc.required("m_n", p.m_n);
    sc.required("I_s1", p.I_s1);
    sc.required("I_s2", p.I_s2);
    sc.required("I_n1", p.I_n1);
    sc.required("I_n2", p.I_n2);
    sc.required("z_s", p.z_s);
    sc.required("z_n", p.z_n);
    sc.optional("x_s", p.x_s);
    sc.optional("y_s", p.y_s);
    sc.required("spin_rate", p.spin_rate);
    sc.required("delta_v_d", p.delta_v_d);
    sc.required("T_b", p.T_b);
    if (auto d = sc.list("disturbance_override")) {
        if (d->size() == 2)
            p.disturbance_override = DisturbancePair{(*d)[0], (*d)[1]};
        else
            issues.push_back({"spacecraft.disturbance_override", "expected 'tau_dx, tau_dy'"});
    }
    sc.reject_unused();

    SectionReader mr("motor", sections["motor"], issues);
    auto& m = cfg.motor;
    bool from_catalog = false;
    if (auto key = mr.text("catalog")) {
        try {
            m = apply_catalog_entry(m, find_catalog_entry(*key));
            from_catalog = true;
        } catch (const ValidationError& e) {
            for (const auto& i : e.issues()) issues.push_back(i);
        }
    }
    if (auto name = mr.text("name"))
        m.name = *name;
    else if (!from_catalog)
        issues.push_back({"motor.name", "missing required key"});
    if (from_catalog) {
        mr.optional("mass", m.mass);
        mr.optional("tau_stall", m.tau_stall);
        mr.optional("omega_max", m.omega_max);
        mr.optional("v_max", m.v_max);
    } else {
        mr.required("mass", m.mass);
        mr.required("tau_stall", m.tau_stall);
        mr.required("omega_max", m.omega_max);
        mr.required("v_max", m.v_max);
    }
    mr.optional("i_stall", m.i_stall);
    mr.optional("J_em", m.J_em);
    mr.optional("tau_f", m.tau_f);
    mr.required("N_g", m.N_g);
    mr.reject_unused();

    SectionReader rr("rw", sections["rw"], issues);
    rr.required("tau_rm", cfg.rw.tau_rm);
    rr.required("gamma", cfg.rw.gamma);
    rr.optional("h_max", cfg.rw.h_max);
    rr.reject_unused();

    SectionReader cr("control", sections["control"], issues);
    if (!cr.has("K"))
        issues.push_back({"control.K", "missing required key"});
    else if (auto k = cr.list("K"))
        cfg.K = *k;
    cr.reject_unused();

    SectionReader sr("sim", sections["sim"], issues);
    if (auto model = sr.text("model")) {
        try {
            cfg.model = plant_model_from_string(*model);
        } catch (const ValidationError& e) {
            for (const auto& i : e.issues()) issues.push_back(i);
        }
    }
    sr.required("dt", cfg.dt);
    sr.required("duration", cfg.duration);
    auto& x0 = cfg.initial;
    sr.with_unit("phi0", kAngleUnits, x0.phi);
    sr.with_unit("theta0", kAngleUnits, x0.theta);
    sr.with_unit("psi0", kAngleUnits, x0.psi);
    sr.with_unit("beta0", kAngleUnits, x0.beta);
    sr.with_unit("omega_sx0", kRateUnits, x0.omega_sx);
    sr.with_unit("omega_sy0", kRateUnits, x0.omega_sy);
    sr.with_unit("beta_dot0", kRateUnits, x0.beta_dot);
    sr.optional("h_rx0", x0.h_rx);
    sr.optional("h_ry0", x0.h_ry);
    read_signal(sr, "w_x", cfg.w_x, issues);
    read_signal(sr, "w_y", cfg.w_y, issues);
    sr.reject_unused();

    if (!issues.empty()) throw ValidationError(std::move(issues));
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config", "cannot open '" + path.string() + "'");
    return parse_config(in);
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string signal_text(const TabulatedSignal& s) {
    std::string out;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (i > 0) out += ", ";
        out += num(s.t[i]) + ":" + num(s.value[i]);
    }
    return out;
}

}  // namespace

std::string to_config_text(const ScenarioConfig& cfg) {
    std::ostringstream os;
    const auto& p = cfg.spacecraft;
    os << "[spacecraft]\n"
       << "m_s = " << num(p.m_s) << "\n"
       << "m_n = " << num(p.m_n) << "\n"
       << "I_s1 = " << num(p.I_s1) << "\n"
       << "I_s2 = " << num(p.I_s2) << "\n"
       << "I_n1 = " << num(p.I_n1) << "\n"
       << "I_n2 = " << num(p.I_n2) << "\n"
       << "z_s = " << num(p.z_s) << "\n"
       << "z_n = " << num(p.z_n) << "\n"
       << "x_s = " << num(p.x_s) << "\n"
       << "y_s = " << num(p.y_s) << "\n"
       << "spin_rate = " << num(p.spin_rate) << "\n"
       << "delta_v_d = " << num(p.delta_v_d) << "\n"
       << "T_b = " << num(p.T_b) << "\n";
    if (p.disturbance_override)
        os << "disturbance_override = " << num(p.disturbance_override->tau_dx) << ", "
           << num(p.disturbance_override->tau_dy) << "\n";

    const auto& m = cfg.motor;
    os << "\n[motor]\n"
       << "name = " << m.name << "\n"
       << "mass = " << num(m.mass) << "\n"
       << "tau_stall = " << num(m.tau_stall) << "\n"
       << "omega_max = " << num(m.omega_max) << "\n"
       << "v_max = " << num(m.v_max) << "\n";
    if (m.i_stall) os << "i_stall = " << num(*m.i_stall) << "\n";
    os << "J_em = " << num(m.J_em) << "\n"
       << "tau_f = " << num(m.tau_f) << "\n"
       << "N_g = " << num(m.N_g) << "\n";

    os << "\n[rw]\n"
       << "tau_rm = " << num(cfg.rw.tau_rm) << "\n"
       << "gamma = " << num(cfg.rw.gamma) << "\n";
    if (cfg.rw.h_max) os << "h_max = " << num(*cfg.rw.h_max) << "\n";

    os << "\n[control]\nK = ";
    for (std::size_t i = 0; i < cfg.K.size(); ++i) os << (i ? ", " : "") << num(cfg.K[i]);
    os << "\n";

    const auto& x0 = cfg.initial;
    os << "\n[sim]\n"
       << "model = " << to_string(cfg.model) << "\n"
       << "dt = " << num(cfg.dt) << "\n"
       << "duration = " << num(cfg.duration) << "\n"
       << "phi0_rad = " << num(x0.phi) << "\n"
       << "theta0_rad = " << num(x0.theta) << "\n"
       << "psi0_rad = " << num(x0.psi) << "\n"
       << "omega_sx0_rad_s = " << num(x0.omega_sx) << "\n"
       << "omega_sy0_rad_s = " << num(x0.omega_sy) << "\n"
       << "beta0_rad = " << num(x0.beta) << "\n"
       << "beta_dot0_rad_s = " << num(x0.beta_dot) << "\n"
       << "h_rx0 = " << num(x0.h_rx) << "\n"
       << "h_ry0 = " << num(x0.h_ry) << "\n";
    if (!cfg.w_x.empty()) os << "w_x = " << signal_text(cfg.w_x) << "\n";
    if (!cfg.w_y.empty()) os << "w_y = " << signal_text(cfg.w_y) << "\n";
    return os.str();
}

std::string config_digest(const ScenarioConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_config_text(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tvc
