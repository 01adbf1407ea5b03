#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "ecoepi/integrate.hpp"
#include "ecoepi/model.hpp"
#include "ecoepi/report.hpp"
#include "ecoepi/scenario.hpp"
#include "ecoepi/verify.hpp"

using namespace ecoepi;

namespace {

const std::string kScenarioDir = ECOEPI_SCENARIO_DIR;

std::string valid_scenario() {
    return R"({
      "model": "harmless",
      "params": {"r": 0.5, "K": 5, "sigma": 0.5, "mu": 0.4,
                 "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3}
    })";
}

}  // namespace

TEST_CASE("bundled scenarios parse and validate") {
    for (const char* name :
         {"e1_stable.json", "e2_endemic.json", "e3_coexistence.json", "e4_coexistence.json",
          "hopf_cycle.json", "hopf_sweep.json", "p1_stable.json", "p2_endemic.json",
          "p3_coexistence.json", "p4_coexistence.json", "p4_cycle.json"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_scenario(kScenarioDir + "/" + name));
    }
}

TEST_CASE("model selection and defaults") {
    const ScenarioFile sc = parse_scenario(valid_scenario());
    CHECK(sc.params.variant == Variant::harmless);
    CHECK(sc.params.K == 5.0);
    CHECK_FALSE(sc.init.has_value());
    const StateReformed y0 = sc.initial_state();
    CHECK(y0.A == 0.5);
    CHECK(y0.T == doctest::Approx(0.5 * std::sqrt(5.0)));
    CHECK(y0.U == 0.1);
}

TEST_CASE("unknown keys are rejected with the key name") {
    const std::string bad = R"({"model": "harmless", "params": {"r": 0.5, "K": 5,
        "sigma": 0.5, "mu": 0.4, "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3},
        "extra": 1})";
    try {
        parse_scenario(bad);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& ex) {
        CHECK(std::string(ex.what()).find("extra") != std::string::npos);
    }
}

TEST_CASE("missing and malformed parameters are diagnosed by key") {
    const std::string missing = R"({"model": "harmless", "params": {"r": 0.5, "K": 5,
        "sigma": 0.5, "mu": 0.4, "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1}})";
    try {
        parse_scenario(missing);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& ex) {
        CHECK(std::string(ex.what()).find("\"f\"") != std::string::npos);
    }

    const std::string negative = R"({"model": "harmless", "params": {"r": 0.5, "K": -5,
        "sigma": 0.5, "mu": 0.4, "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3}})";
    CHECK_THROWS_AS(parse_scenario(negative), ScenarioError);
}

TEST_CASE("init forms") {
    const std::string with_original = R"({"model": "harmless",
        "params": {"r": 0.5, "K": 5, "sigma": 0.5, "mu": 0.4,
                   "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3},
        "init": {"S": 3, "I": 1, "P": 2}})";
    const ScenarioFile sc = parse_scenario(with_original);
    REQUIRE(sc.init.has_value());
    CHECK(sc.init->A == doctest::Approx(0.75));
    CHECK(sc.init->T == doctest::Approx(2.0));
    CHECK(sc.init->U == doctest::Approx(1.0));

    const std::string both = R"({"model": "harmless",
        "params": {"r": 0.5, "K": 5, "sigma": 0.5, "mu": 0.4,
                   "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3},
        "init": {"S": 3, "A": 0.5}})";
    CHECK_THROWS_AS(parse_scenario(both), ScenarioError);
}

TEST_CASE("sweep block with explicit values and with a range") {
    const std::string with_range = R"({"model": "harmless",
        "params": {"r": 0.5, "K": 5, "sigma": 0.5, "mu": 0.4,
                   "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3},
        "sweep": {"parameter": "K", "from": 4, "to": 6, "step": 1}})";
    const ScenarioFile sc = parse_scenario(with_range);
    REQUIRE(sc.sweep.has_value());
    REQUIRE(sc.sweep->values.size() == 3);
    CHECK(sc.sweep->values[0] == 4.0);
    CHECK(sc.sweep->values[2] == 6.0);

    const std::string bad_param = R"({"model": "harmless",
        "params": {"r": 0.5, "K": 5, "sigma": 0.5, "mu": 0.4,
                   "q": 0.2, "w": 0.5, "m": 0.2, "g": 0.1, "f": 0.3},
        "sweep": {"parameter": "zeta", "values": [1, 2]}})";
    CHECK_THROWS_AS(parse_scenario(bad_param), ScenarioError);
}

TEST_CASE("scenario digest is stable and content-sensitive") {
    const std::string a = valid_scenario();
    CHECK(fnv1a_digest(a) == fnv1a_digest(a));
    CHECK(fnv1a_digest(a) != fnv1a_digest(a + " "));
    CHECK(fnv1a_digest(a).size() == 16);
}

TEST_CASE("verification suite passes and is deterministic") {
    const VerifyReport a = run_verify();
    CHECK(a.all_passed());
    const VerifyReport b = run_verify();
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].passed == b.checks[i].passed);
        CHECK(a.checks[i].cases == b.checks[i].cases);
        CHECK(a.checks[i].max_error == b.checks[i].max_error);
    }
}

TEST_CASE("trajectory CSV is reproducible byte-for-byte within a build") {
    const ScenarioFile sc = load_scenario(kScenarioDir + "/e3_coexistence.json");
    SolverOptions opts = sc.solver;
    opts.t_end = 50.0;
    const Trajectory a = simulate(sc.params, sc.initial_state(), opts);
    const Trajectory b = simulate(sc.params, sc.initial_state(), opts);
    const std::string csv_a = trajectory_csv(a);
    CHECK(csv_a == trajectory_csv(b));
    CHECK(csv_a.rfind("t,A,T,U,S,I,P\n", 0) == 0);
}

TEST_CASE("corrupted jacobian is caught by the finite-difference check") {
    VerifyOptions opts;
    opts.jacobian_override = [](const ModelParams& p, const StateReformed& y) {
        Matrix3 J = jacobian_reformed(p, y);
        J(1, 2) += 0.125;  // poison one entry
        return J;
    };
    const VerifyReport rep = run_verify(opts);
    bool fd_failed = false;
    for (const auto& c : rep.checks)
        if (c.name.find("finite differences") != std::string::npos) fd_failed = !c.passed;
    CHECK(fd_failed);
}
