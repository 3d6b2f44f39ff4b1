#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "loopchain/errors.hpp"
#include "loopchain/recipes.hpp"
#include "loopchain/scenario.hpp"

using namespace loopchain;

namespace {

const char* kMinimal = R"(
[scenario]
name = demo
basis = bare

[grid]
t_start = -2
t_end = 2
dt = 0.01
output_stride = 5

[pulse_P]
shape = gaussian
peak = 1.5
center = 0.25
width = 0.8
phase = 0.3

[pulse_S]
shape = constant
value = 0.7
phase = -0.3

[pulse_C]
shape = tabulated
times = -2, 0, 2
values = 0, 1, 0

[delta2]
shape = constant
value = 0.1

[delta3]
shape = follow
pulse = S
factor = -0.5

[initial]
basis = bare
amplitudes = 1, 0, 0
)";

Scenario parse(const std::string& text, const std::vector<std::string>& overrides = {}) {
    std::istringstream in(text);
    return parse_scenario(in, overrides);
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return text.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
    try {
        parse(text, overrides);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(ParseScenario, Minimal) {
    const auto sc = parse(kMinimal);
    EXPECT_EQ(sc.name, "demo");
    EXPECT_EQ(sc.basis, Basis::Bare);
    EXPECT_EQ(sc.output_stride, 5u);
    EXPECT_EQ(sc.grid.t_start(), -2.0);
    EXPECT_EQ(sc.grid.steps(), 400u);
    EXPECT_DOUBLE_EQ(sc.cfg.pump().value(0.25), 1.5);
    EXPECT_DOUBLE_EQ(sc.cfg.pump().phase(), 0.3);
    EXPECT_DOUBLE_EQ(sc.cfg.stokes().value(-1.0), 0.7);
    EXPECT_DOUBLE_EQ(sc.cfg.control().value(1.0), 0.5);
    EXPECT_DOUBLE_EQ(sc.cfg.delta2(1.0), 0.1);
    EXPECT_DOUBLE_EQ(sc.cfg.delta3(1.0), -0.35);
    EXPECT_EQ(populations(sc.initial)[0], 1.0);
}

TEST(ParseScenario, Overrides) {
    const auto sc = parse(kMinimal, {"grid.dt=0.02", "pulse_P.peak=2", "scenario.basis=householder"});
    EXPECT_EQ(sc.grid.steps(), 200u);
    EXPECT_DOUBLE_EQ(sc.cfg.pump().value(0.25), 2.0);
    EXPECT_EQ(sc.basis, Basis::Householder);
}

TEST(ParseScenario, OverrideErrors) {
    EXPECT_NE(error_of(kMinimal, {"grid.dx=0.1"}).find("unknown key 'grid.dx'"), std::string::npos);
    EXPECT_NE(error_of(kMinimal, {"grid.dt"}).find("section.key=value"), std::string::npos);
    EXPECT_NE(error_of(kMinimal, {"grid.dt=fast"}).find("not a number"), std::string::npos);
}

TEST(ParseScenario, HouseholderInitialState) {
    const auto sc = parse(replace(kMinimal, "basis = bare\namplitudes", "basis = householder\namplitudes"));
    EXPECT_EQ(sc.initial.basis(), Basis::Householder);
}

TEST(ParseScenario, ComplexAmplitudes) {
    const auto sc = parse(replace(kMinimal, "amplitudes = 1, 0, 0", "amplitudes = 0, 0.6i, -0.8"));
    EXPECT_EQ(sc.initial.amplitudes()[1], Complex(0.0, 0.6));
    EXPECT_EQ(sc.initial.amplitudes()[2], Complex(-0.8, 0.0));
}

TEST(ParseScenario, Diagnostics) {
    EXPECT_NE(error_of(std::string(kMinimal) + "[extra]\nx = 1\n").find("unknown section [extra]"), std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "width = 0.8", "width = 0.8\nwidht = 1")).find("unknown key 'widht'"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "peak = 1.5\n", "")).find("missing key 'peak'"), std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "shape = gaussian", "shape = lorentzian")).find("unknown shape"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "amplitudes = 1, 0, 0", "amplitudes = 1, 0")).find("expected 3 entries"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "amplitudes = 1, 0, 0", "amplitudes = 1, 1, 0")).find("[initial]"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "pulse = S", "pulse = Q")).find("expected P, S or C"), std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "output_stride = 5", "output_stride = 2.5")).find("output_stride"),
              std::string::npos);
    EXPECT_NE(error_of("[grid\nt_start = 0\n").find("line "), std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "[initial]\nbasis = bare\namplitudes = 1, 0, 0\n", "")).find("[initial]"),
              std::string::npos);
}

TEST(ParseScenario, ControlPhaseMustBeZero) {
    const auto text = replace(kMinimal, "values = 0, 1, 0\n", "values = 0, 1, 0\nphase = 0.1\n");
    EXPECT_NE(error_of(text).find("phase must be 0"), std::string::npos);
}

TEST(ParseScenario, ChainBreakingStokes) {
    const auto text = replace(kMinimal, "shape = constant\nvalue = 0.7\nphase = -0.3", "shape = chain_breaking");
    const auto sc = parse(replace(text, "pulse = S", "pulse = P"));
    EXPECT_TRUE(check_condition(sc.cfg, sc.grid, ConditionId::ChainBreakA).satisfied);
    EXPECT_NE(error_of(replace(replace(kMinimal, "shape = gaussian", "shape = chain_breaking"), "peak = 1.5\n", ""))
                  .find("only pulse_S"),
              std::string::npos);
}

TEST(ScenarioToIni, RoundTripPresets) {
    for (const auto& name : preset_names()) {
        const auto sc = preset_scenario(name);
        const auto text = scenario_to_ini(sc);
        const auto back = parse(text);
        EXPECT_EQ(scenario_to_ini(back), text) << name;
        EXPECT_EQ(back.grid.steps(), sc.grid.steps());
        for (double t : {-3.0, -0.4, 0.0, 1.3}) {
            const auto a = sc.cfg.sample(t);
            const auto b = back.cfg.sample(t);
            EXPECT_EQ(a.omega_p, b.omega_p) << name;
            EXPECT_EQ(a.omega_c, b.omega_c) << name;
            EXPECT_NEAR(a.omega_s, b.omega_s, 1e-12) << name;
            EXPECT_EQ(a.phase_p, b.phase_p) << name;
            EXPECT_EQ(a.phase_s, b.phase_s) << name;
            EXPECT_EQ(a.delta2, b.delta2) << name;
            EXPECT_EQ(a.delta3, b.delta3) << name;
        }
    }
}

TEST(ScenarioToIni, RoundTripParsed) {
    const auto sc = parse(kMinimal);
    const auto back = parse(scenario_to_ini(sc));
    EXPECT_EQ(scenario_to_ini(back), scenario_to_ini(sc));
    EXPECT_EQ(back.output_stride, 5u);
}

TEST(PresetScenario, OverridesAndErrors) {
    const auto sc = preset_scenario("fig3", {"grid.dt=0.002", "pulse_P.peak=0.5"});
    EXPECT_EQ(sc.name, "fig3");
    EXPECT_EQ(sc.grid.steps(), 5000u);
    EXPECT_DOUBLE_EQ(sc.cfg.pump().value(0.0), 0.5);
    EXPECT_THROW(preset_scenario("fig9"), InvalidInput);
    EXPECT_THROW(preset_scenario("fig3", {"pulse_P.value=1"}), ParseError);
}

TEST(LoadScenarioFile, ReadsAndReportsPath) {
    const std::string path = ::testing::TempDir() + "loopchain_scenario.ini";
    {
        std::ofstream out(path);
        out << kMinimal;
    }
    EXPECT_EQ(load_scenario_file(path).name, "demo");
    EXPECT_NE(error_of(""), "");
    try {
        load_scenario_file(::testing::TempDir() + "missing.ini");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("cannot open"), std::string::npos);
    }
}
