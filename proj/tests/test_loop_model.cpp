#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loopchain/errors.hpp"
#include "loopchain/loop_model.hpp"
#include "oracles.hpp"

using namespace loopchain;

namespace {

constexpr double kPi = std::numbers::pi;

LoopConfig constant_loop(double op, double os, double oc, double d2, double d3, double pp = 0.0, double ps = 0.0) {
    return LoopConfig(Pulse::constant(op, pp), Pulse::constant(os, ps), Pulse::constant(oc),
                      DetuningSpec{ConstantDetuning{d2}, ConstantDetuning{d3}});
}

}  // namespace

TEST(Pulse, GaussianValues) {
    const auto g = Pulse::gaussian(1.0, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(g.value(0.0), 1.0);
    const auto h = Pulse::gaussian(2.0, 0.5, 1.5);
    EXPECT_NEAR(h.value(0.5 + 1.5), 2.0 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(h.value(0.5 - 1.5), 2.0 * std::exp(-1.0), 1e-15);
}

TEST(Pulse, ConstantValue) {
    const auto c = Pulse::constant(0.5);
    for (double t : {-100.0, 0.0, 3.7}) EXPECT_EQ(c.value(t), 0.5);
    EXPECT_EQ(evaluate_pulse(c, 1.0), 0.5);
}

TEST(Pulse, GaussianSumAddsTerms) {
    const auto s = Pulse::gaussian_sum({{1.0, -0.5, 1.0}, {0.5, 0.5, 2.0}});
    const double t = 0.3;
    EXPECT_NEAR(s.value(t), std::exp(-0.64) + 0.5 * std::exp(-0.01), 1e-15);
}

TEST(Pulse, AnalyticDerivativeMatchesDifference) {
    const auto s = Pulse::gaussian_sum({{1.0, -0.5, 1.0}, {0.5, 0.5, 0.7}});
    const double h = 1e-5;
    for (double t : {-2.0, -0.4, 0.0, 0.9, 2.5}) {
        const double fd = (s.value(t + h) - s.value(t - h)) / (2 * h);
        ASSERT_TRUE(s.derivative(t).has_value());
        EXPECT_NEAR(*s.derivative(t), fd, 1e-9);
    }
    EXPECT_EQ(*Pulse::constant(3.0).derivative(1.0), 0.0);
    EXPECT_FALSE(Pulse::tabulated({0.0, 1.0}, {0.0, 1.0}).derivative(0.5).has_value());
}

TEST(Pulse, TabulatedInterpolatesAndRejectsOutside) {
    const auto p = Pulse::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
    EXPECT_DOUBLE_EQ(p.value(0.5), 1.0);
    EXPECT_DOUBLE_EQ(p.value(2.0), 1.0);
    EXPECT_DOUBLE_EQ(p.value(3.0), 0.0);
    EXPECT_THROW(p.value(-0.1), RangeError);
    EXPECT_THROW(p.value(3.1), RangeError);
    EXPECT_EQ(p.domain(), std::make_pair(0.0, 3.0));
    EXPECT_TRUE(std::isinf(Pulse::constant(1.0).domain().second));
}

TEST(Pulse, RejectsInvalidShapes) {
    EXPECT_THROW(Pulse::gaussian(1.0, 0.0, 0.0), InvalidInput);
    EXPECT_THROW(Pulse::gaussian(1.0, 0.0, -1.0), InvalidInput);
    EXPECT_THROW(Pulse::gaussian_sum({}), InvalidInput);
    EXPECT_THROW(Pulse::gaussian_sum({{1.0, 0.0, 1.0}, {1.0, 0.0, 0.0}}), InvalidInput);
    EXPECT_THROW(Pulse::tabulated({0.0, 0.0}, {1.0, 1.0}), InvalidInput);
    EXPECT_THROW(Pulse::tabulated({0.0, 1.0}, {1.0}), InvalidInput);
    EXPECT_THROW(Pulse::tabulated({0.0}, {1.0}), InvalidInput);
    EXPECT_THROW(Pulse::constant(1.0, std::nan("")), InvalidInput);
    EXPECT_THROW(Pulse(SynthesizedShape{"empty", nullptr}), InvalidInput);
}

TEST(Pulse, CouplingCarriesPhase) {
    const auto p = Pulse::constant(2.0, kPi / 2);
    EXPECT_NEAR(std::abs(p.coupling(0.0) - Complex(0.0, 2.0)), 0.0, 1e-15);
    EXPECT_EQ(p.with_phase(0.0).coupling(0.0), Complex(2.0));
}

TEST(LoopConfig, ControlPhaseMustBeZero) {
    EXPECT_THROW(LoopConfig(Pulse::zero(), Pulse::zero(), Pulse::constant(1.0, 0.1)), InvalidInput);
    EXPECT_THROW(LoopConfig(Pulse::zero(), Pulse::zero(), Pulse::zero(), {}, 0.0), InvalidInput);
    EXPECT_THROW(LoopConfig(Pulse::zero(), Pulse::zero(), Pulse::zero(), {ConstantDetuning{std::nan("")}, {}}),
                 InvalidInput);
}

TEST(LoopConfig, DetuningForms) {
    const LoopConfig cfg(Pulse::zero(), Pulse::gaussian(2.0, 0.0, 1.0), Pulse::zero(),
                         DetuningSpec{PulseFollowingDetuning{PulseId::S, -0.5},
                                      TabulatedDetuning{{-1.0, 1.0}, {0.0, 4.0}}});
    EXPECT_DOUBLE_EQ(cfg.delta2(0.0), -1.0);
    EXPECT_DOUBLE_EQ(cfg.delta3(0.0), 2.0);
    EXPECT_THROW(cfg.delta3(2.0), RangeError);
    const auto s = cfg.sample(0.0);
    EXPECT_DOUBLE_EQ(s.omega_s, 2.0);
    EXPECT_DOUBLE_EQ(s.delta2, -1.0);
}

TEST(BareHamiltonian, DetuningsOnly) {
    const auto w = bare_hamiltonian(constant_loop(0.0, 0.0, 0.0, 1.0, 2.0), 0.0);
    const ComplexMatrix expected{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}};
    EXPECT_EQ(max_abs_difference(w.matrix(), expected), 0.0);
}

TEST(BareHamiltonian, DirectSubstitution) {
    const auto w = bare_hamiltonian(constant_loop(1.0, 2.0, 1.0, 0.0, 0.0), 0.0);
    const ComplexMatrix expected{{0.0, 0.5, 0.5}, {0.5, 0.0, 1.0}, {0.5, 1.0, 0.0}};
    EXPECT_EQ(max_abs_difference(w.matrix(), expected), 0.0);
}

TEST(BareHamiltonian, PhasesOnUpperTriangle) {
    const auto w = bare_hamiltonian(constant_loop(1.0, 2.0, 1.0, 0.0, 0.0, kPi / 2, kPi), 0.0);
    EXPECT_NEAR(std::abs(w(0, 1) - Complex(0.0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w(1, 2) - Complex(-1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w(1, 0) - Complex(0.0, -0.5)), 0.0, 1e-15);
}

TEST(BareHamiltonian, Fig5ValuesAtPulseCenter) {
    // theta = pi/4, Omega0 = 30/T, tau = 0.5 T: P and C centered at +tau, S at -tau.
    const double a = 30.0 / std::sqrt(2.0);
    const LoopConfig cfg(Pulse::gaussian(a, 0.5, 1.0), Pulse::gaussian(30.0, -0.5, 1.0), Pulse::gaussian(a, 0.5, 1.0));
    const auto w = bare_hamiltonian(cfg, 0.5);
    EXPECT_NEAR(std::abs(w(0, 1)), a / 2, 1e-13);
    EXPECT_NEAR(std::abs(w(0, 2)), a / 2, 1e-13);
    EXPECT_NEAR(std::abs(w(1, 2)), 15.0 * std::exp(-1.0), 1e-13);
}

TEST(BareHamiltonian, RandomizedInvariants) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cfg = oracle::random_loop(rng);
        for (double t : {-3.0, -0.7, 0.0, 1.2, 4.0}) {
            const auto w = bare_hamiltonian(cfg, t);
            const auto s = cfg.sample(t);
            EXPECT_TRUE(is_hermitian(w.matrix()));
            EXPECT_EQ(w(0, 0), Complex(0.0));
            EXPECT_NEAR(std::abs(w(0, 1)), s.omega_p / 2, 1e-15);
            EXPECT_NEAR(std::abs(w(0, 2)), s.omega_c / 2, 1e-15);
            EXPECT_NEAR(std::abs(w(1, 2)), s.omega_s / 2, 1e-15);
            EXPECT_LT(max_abs_difference(w.matrix(), oracle::bare_w(s)), 1e-15);
        }
    }
}

TEST(Interpolation, Endpoints) {
    EXPECT_DOUBLE_EQ(interpolate_linear({0.0, 2.0}, {1.0, 3.0}, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(interpolate_linear({0.0, 2.0}, {1.0, 3.0}, 2.0), 3.0);
    EXPECT_THROW(interpolate_linear({0.0, 2.0}, {1.0, 3.0}, 2.5), RangeError);
}
