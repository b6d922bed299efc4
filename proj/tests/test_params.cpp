#include "oracles.hpp"

#include "tvc/catalog.hpp"
#include "tvc/params.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace tvc;

namespace {

bool has_issue(const ValidationError& e, const std::string& path, const std::string& text) {
    return std::any_of(e.issues().begin(), e.issues().end(), [&](const Issue& i) {
        return i.path == path && i.message.find(text) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("motor constants from the FAULHABER 3890 sheet") {
    const MotorDerived d = motor_constants(faulhaber_3890());
    CHECK(d.k1 == doctest::Approx(0.0333333333).epsilon(1e-9));
    CHECK(d.k2 == doctest::Approx(0.1472222222).epsilon(1e-9));
    REQUIRE(d.R_em.has_value());
    CHECK(*d.R_em == doctest::Approx(18.0 / 79.0));
    CHECK(*d.R_em == doctest::Approx(0.22785).epsilon(1e-4));
    CHECK(d.c_f == doctest::Approx(0.01 / 540.0));
}

TEST_CASE("motor constants from the FAULHABER 3272 row") {
    MotorSpec m;
    m.v_max = 12.0;
    m.omega_max = 540.0;
    m.tau_stall = 1.2;
    const MotorDerived d = motor_constants(m);
    CHECK(d.k1 == doctest::Approx(0.0222222222).epsilon(1e-9));
    CHECK(d.k2 == doctest::Approx(0.1));
    CHECK_FALSE(d.R_em.has_value());
}

TEST_CASE("motor constants reject a zero speed or voltage") {
    MotorSpec m = faulhaber_3890();
    m.omega_max = 0.0;
    try {
        motor_constants(m);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(has_issue(e, "motor.omega_max", "positive"));
    }
    m.omega_max = 540.0;
    m.v_max = -1.0;
    CHECK_THROWS_AS(motor_constants(m), ValidationError);
}

TEST_CASE("motor constants are scale consistent") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        MotorSpec m;
        m.v_max = oracle::uniform(rng, 1.0, 50.0);
        m.omega_max = oracle::uniform(rng, 1.0, 1000.0);
        m.tau_stall = oracle::uniform(rng, 0.01, 30.0);
        MotorSpec doubled = m;
        doubled.v_max *= 2.0;
        doubled.tau_stall *= 2.0;
        for (const auto& spec : {m, doubled}) {
            const MotorDerived d = motor_constants(spec);
            CHECK(d.k1 * spec.omega_max / spec.v_max == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(d.k2 * spec.v_max / spec.tau_stall == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("every catalog row yields finite positive constants") {
    REQUIRE(motor_catalog().size() == 6);
    for (const auto& row : motor_catalog()) {
        const MotorSpec m = apply_catalog_entry(faulhaber_3890(), row);
        const MotorDerived d = motor_constants(m);
        CHECK(std::isfinite(d.k1));
        CHECK(d.k1 > 0.0);
        CHECK(std::isfinite(d.k2));
        CHECK(d.k2 > 0.0);
    }
}

TEST_CASE("catalog lookup and data-sheet overlay") {
    CHECK(find_catalog_entry("2").name == "FAULHABER 3890_CR_DFF");
    CHECK(find_catalog_entry("FAULHABER 3272_CR_DFF").tau_stall_Nm == 1.2);
    CHECK_THROWS_AS(find_catalog_entry("7"), ValidationError);
    CHECK_THROWS_AS(find_catalog_entry("nope"), ValidationError);

    const MotorSpec base = faulhaber_3890();
    CHECK(apply_catalog_entry(base, find_catalog_entry("2")) == base);
    const MotorSpec bosch = apply_catalog_entry(base, find_catalog_entry("5"));
    CHECK(bosch.tau_stall == 27.0);
    CHECK(bosch.omega_max == 4.4);
    CHECK(bosch.N_g == base.N_g);
    CHECK_FALSE(bosch.i_stall.has_value());
}

TEST_CASE("catalog CSV export reads back") {
    std::stringstream ss;
    write_catalog_csv(ss, motor_catalog());
    std::string header;
    std::getline(std::istringstream(ss.str()), header);
    CHECK(header == "name,mass_kg,tau_stall_Nm,omega_max_rad_s,v_max_V");
    CHECK(read_catalog_csv(ss) == motor_catalog());

    std::istringstream bad("name,mass_kg,tau_stall_Nm,omega_max_rad_s,v_max_V\nx,1,2,three,4\n");
    CHECK_THROWS_AS(read_catalog_csv(bad), ValidationError);
}

TEST_CASE("reference scenario derives 316 N and 2 m/s^2") {
    const ValidatedScenario v = validate_scenario(paper_baseline());
    CHECK(v.thrust == doctest::Approx(316.0).epsilon(1e-14));
    CHECK(v.a_max == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(v.motor.derived == motor_constants(faulhaber_3890()));
    CHECK(v.K(4) == 217.39);
}

TEST_CASE("validation reports dt and gain errors by field") {
    ScenarioConfig c = paper_baseline();
    c.dt = 0.0;
    try {
        validate_scenario(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(has_issue(e, "sim.dt", "dt must be positive"));
    }

    c = paper_baseline();
    c.K.pop_back();
    try {
        validate_scenario(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(has_issue(e, "control.K", "gain K requires 6 entries"));
    }

    c = paper_baseline();
    c.dt = 0.01;
    CHECK_THROWS_AS(validate_scenario(c), ValidationError);
}

TEST_CASE("validation lists every violation, not just the first") {
    ScenarioConfig c = paper_baseline();
    c.dt = -1.0;
    c.duration = 0.0;
    c.spacecraft.m_n = 0.0;
    c.motor.v_max = 0.0;
    c.rw.gamma = -2.0;
    c.K = {1.0};
    try {
        validate_scenario(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues().size() == 6);
        CHECK(has_issue(e, "sim.dt", "positive"));
        CHECK(has_issue(e, "sim.duration", "positive"));
        CHECK(has_issue(e, "spacecraft.m_n", "positive"));
        CHECK(has_issue(e, "motor.v_max", "positive"));
        CHECK(has_issue(e, "rw.gamma", "positive"));
        CHECK(has_issue(e, "control.K", "6 entries"));
    }
}

TEST_CASE("validation is idempotent") {
    const ValidatedScenario once = validate_scenario(paper_baseline());
    const ValidatedScenario twice = validate_scenario(once);
    CHECK(once == twice);
}

TEST_CASE("tabulated signal interpolates and holds its end values") {
    TabulatedSignal s{{0.0, 10.0, 20.0}, {0.0, 1.0, -1.0}};
    CHECK(s.at(-5.0) == 0.0);
    CHECK(s.at(5.0) == doctest::Approx(0.5));
    CHECK(s.at(15.0) == doctest::Approx(0.0));
    CHECK(s.at(30.0) == -1.0);
    CHECK(TabulatedSignal{}.at(3.0) == 0.0);

    ScenarioConfig c = paper_baseline();
    c.w_x = TabulatedSignal{{0.0, 0.0}, {1.0, 2.0}};
    CHECK_THROWS_AS(validate_scenario(c), ValidationError);
}
