#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "growthlab/scenario.hpp"

using namespace growthlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("shipped catalog") {
    const auto list = shipped_scenarios();
    REQUIRE(list.size() == 6);
    CHECK(find_scenario("qho-baseline").rate_name == "constant");
    CHECK(find_scenario("mono-linear").s_values.size() == 2);
    CHECK(find_scenario("oscillatory").classical_horizon > find_scenario("oscillatory").horizon);
    CHECK(find_scenario("forced-linear").a == 1.0);
    CHECK_THROWS_AS(find_scenario("nope"), std::invalid_argument);
}

TEST_CASE("key=value and JSON configs parse to the same scenario") {
    const std::string kv = R"(
# demo config
name = demo
rate = power_log
params = 1 1 0
s = 1 2
a = 0.5
horizon = 25
dt = 0.01
N0 = 64
)";
    const std::string js = R"({
  "name": "demo",
  "rate": "power_log",
  "params": [1, 1, 0],
  "s": [1, 2],
  "a": 0.5,
  "horizon": 25,
  "dt": 0.01,
  "N0": 64
})";
    const Scenario a = parse_scenario_config(kv);
    const Scenario b = parse_scenario_config(js);
    CHECK(a.name == b.name);
    CHECK(a.rate_name == b.rate_name);
    CHECK(a.rate_params == b.rate_params);
    CHECK(a.s_values == b.s_values);
    CHECK(a.a == b.a);
    CHECK(a.horizon == b.horizon);
    CHECK(a.dt == b.dt);
    CHECK(a.initial_truncation == 64);
}

TEST_CASE("config rejects unknown keys and malformed lines") {
    CHECK_THROWS_AS(parse_scenario_config("bogus_key = 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario_config("just some text"), std::invalid_argument);
}

TEST_CASE("format_s_value") {
    CHECK(format_s_value(1.0) == "1");
    CHECK(format_s_value(2.0) == "2");
    CHECK(format_s_value(0.5) == "0.5");
}

TEST_CASE("scenario validation") {
    Scenario sc;
    sc.rate_name = "constant";
    sc.horizon = 1.0;  // below t0 = pi/2
    RunOptions io;
    io.write_files = false;
    CHECK_THROWS_AS(run_scenario(sc, io), std::invalid_argument);
    sc.horizon = kPi / 2.0 + 5.0;
    sc.s_values = {-1.0};
    CHECK_THROWS_AS(run_scenario(sc, io), std::invalid_argument);
}

TEST_CASE("baseline scenario end to end, reproducibly") {
    Scenario sc;
    sc.name = "tiny-baseline";
    sc.rate_name = "constant";
    sc.rate_params = {1.0};
    sc.s_values = {1.0};
    sc.horizon = kPi / 2.0 + 5.0;
    sc.dt = 1e-2;
    sc.initial_truncation = 32;
    sc.window_offset = 1.0;

    RunOptions io;
    io.out_dir = ".";
    const ScenarioArtifacts art = run_scenario(sc, io);
    CHECK(art.all_pass);
    REQUIRE(art.ratios.size() == 1);
    // pure oscillator: ratio of measured to predicted is constant
    CHECK(art.ratios[0].band.max_value - art.ratios[0].band.min_value < 1e-6);

    bool found_symplectic = false;
    for (const Verdict& v : art.verdicts)
        if (v.name == "classical-symplectic-defect") {
            found_symplectic = true;
            CHECK(v.pass);
        }
    CHECK(found_symplectic);

    // byte-identical reruns
    const std::string q1 = slurp("tiny-baseline_quantum.csv");
    const std::string c1 = slurp("tiny-baseline_classical.csv");
    run_scenario(sc, io);
    CHECK(slurp("tiny-baseline_quantum.csv") == q1);
    CHECK(slurp("tiny-baseline_classical.csv") == c1);

    for (const std::string& f : art.files_written) std::remove(f.c_str());
}

TEST_CASE("forced tiny scenario emits the forced verdicts") {
    Scenario sc;
    sc.name = "tiny-forced";
    sc.rate_name = "constant";
    sc.s_values = {1.0};
    sc.a = 1.0;
    sc.horizon = kPi / 2.0 + 30.0;
    sc.dt = 5e-3;
    sc.initial_truncation = 128;
    sc.window_offset = 5.0;
    RunOptions io;
    io.write_files = false;
    const ScenarioArtifacts art = run_scenario(sc, io);
    bool has_forced_classical = false, has_forced_quantum = false;
    for (const Verdict& v : art.verdicts) {
        if (v.name == "forced-classical-band") has_forced_classical = v.pass;
        if (v.name == "forced-quantum-band-s1") has_forced_quantum = v.pass;
    }
    CHECK(has_forced_classical);
    CHECK(has_forced_quantum);
}
