#include "tvc/catalog.hpp"
#include "tvc/config_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace tvc;

namespace {

const char* kMinimal = R"(
[spacecraft]
m_s = 150
m_n = 8
I_s1 = 24
I_s2 = 10
I_n1 = 0.5
I_n2 = 1
z_s = 0.75
z_n = 0.2
spin_rate = 6
delta_v_d = 100
T_b = 50
[motor]
name = test motor
mass = 0.55
tau_stall = 2.65
omega_max = 540
v_max = 18
N_g = 10
[rw]
tau_rm = 0.2
gamma = 100
[control]
K = 1, 2, 3, 4, 5, 6
[sim]
model = nonlinear
dt = 0.001
duration = 2
)";

ScenarioConfig parse(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

std::vector<Issue> issues_of(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const ValidationError& e) {
        return e.issues();
    }
    return {};
}

bool has_path(const std::vector<Issue>& issues, const std::string& path) {
    return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.path == path; });
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("shipped reference configuration") {
    const ScenarioConfig c = load_config(std::string(TVC_SOURCE_DIR) + "/configs/paper_baseline.cfg");
    CHECK(c == paper_baseline());
}

TEST_CASE("minimal document") {
    const ScenarioConfig c = parse(kMinimal);
    CHECK(c.model == PlantModel::Nonlinear);
    CHECK(c.motor.name == "test motor");
    CHECK_FALSE(c.motor.i_stall.has_value());
    CHECK(c.K == std::vector<double>{1, 2, 3, 4, 5, 6});
    CHECK(c.spacecraft.x_s == 0.0);
    CHECK_FALSE(c.spacecraft.disturbance_override.has_value());
}

TEST_CASE("canonical text round trip") {
    ScenarioConfig c = paper_baseline();
    c.model = PlantModel::Nonlinear;
    c.rw.h_max = 1.5;
    c.initial.beta = 0.1 + 0.2;  // not exactly representable in short decimal
    c.initial.omega_sy = -1e-7;
    c.initial.h_ry = -2.1066666666666665;
    c.w_x = TabulatedSignal{{0.0, 10.0, 20.0}, {0.0, 0.5, 0.0}};
    c.spacecraft.x_s = 0.04;
    const std::string text = to_config_text(c);
    const ScenarioConfig back = parse(text);
    CHECK(back == c);
    CHECK(to_config_text(back) == text);
    CHECK(config_digest(back) == config_digest(c));
}

TEST_CASE("digest") {
    ScenarioConfig c = paper_baseline();
    const std::string d = config_digest(c);
    CHECK(d.size() == 16);
    CHECK(d.find_first_not_of("0123456789abcdef") == std::string::npos);
    c.dt = 2.5e-4;
    CHECK(config_digest(c) != d);
}

TEST_CASE("unknown keys and sections are rejected") {
    const auto a = issues_of(replace(kMinimal, "gamma = 100", "gamma = 100\ngama = 5"));
    CHECK(has_path(a, "rw.gama"));
    const auto b = issues_of(std::string(kMinimal) + "[extras]\nfoo = 1\n");
    CHECK_FALSE(b.empty());
}

TEST_CASE("all missing keys are reported together") {
    std::string text = replace(kMinimal, "m_s = 150\n", "");
    text = replace(text, "tau_rm = 0.2\n", "");
    text = replace(text, "dt = 0.001\n", "dt = fast\n");
    const auto issues = issues_of(text);
    CHECK(has_path(issues, "spacecraft.m_s"));
    CHECK(has_path(issues, "rw.tau_rm"));
    CHECK(has_path(issues, "sim.dt"));
}

TEST_CASE("initial deviations carry units") {
    const ScenarioConfig c = parse(std::string(kMinimal) +
                                   "beta0_deg = 1\nomega_sx0_deg_s = 2\ntheta0_rad = 0.01\n");
    CHECK(c.initial.beta == doctest::Approx(deg2rad(1.0)).epsilon(1e-15));
    CHECK(c.initial.omega_sx == doctest::Approx(deg2rad(2.0)).epsilon(1e-15));
    CHECK(c.initial.theta == 0.01);
    const auto bare = issues_of(std::string(kMinimal) + "beta0 = 1\n");
    CHECK(has_path(bare, "sim.beta0"));
}

TEST_CASE("tabulated exogenous torque") {
    const ScenarioConfig c = parse(std::string(kMinimal) + "w_y = 0:0, 10:0.5   # ramp\n");
    CHECK(c.w_y.at(5.0) == doctest::Approx(0.25));
    CHECK(c.w_y.at(30.0) == 0.5);
    CHECK(c.w_x.at(3.0) == 0.0);
}

TEST_CASE("motor from the catalog") {
    std::string text = replace(kMinimal,
                               "name = test motor\nmass = 0.55\ntau_stall = 2.65\n"
                               "omega_max = 540\nv_max = 18\n",
                               "catalog = 4\n");
    const ScenarioConfig c = parse(text);
    CHECK(c.motor.name == motor_catalog()[3].name);
    CHECK(c.motor.tau_stall == 3.8);
    CHECK(c.motor.v_max == 24.0);
    CHECK(c.motor.N_g == 10.0);

    const auto bad = issues_of(replace(text, "catalog = 4", "catalog = no such motor"));
    CHECK_FALSE(bad.empty());
}
