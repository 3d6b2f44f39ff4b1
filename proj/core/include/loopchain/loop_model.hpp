#pragma once

// Pulse envelopes and the bare-basis loop RWA Hamiltonian
//
//          | 0               W01           W02          |
//   W(t) = | conj(W01)       Delta2        W12          |
//          | conj(W02)       conj(W12)     Delta3       |
//
// with W01 = Omega_P e^{i phi_P} / 2, W02 = Omega_C / 2 and
// W12 = Omega_S e^{i phi_S} / 2. Amplitudes obey dC/dt = -i W C.
//
// Times are in units of the config time unit T and frequencies in 1/T.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loopchain/linalg.hpp"

namespace loopchain {

struct GaussianTerm {
    double peak = 0.0;
    double center = 0.0;
    double width = 1.0;  ///< value at center +- width is peak / e
};

struct ConstantShape {
    double value = 0.0;
};

struct GaussianSumShape {
    std::vector<GaussianTerm> terms;
};

/// Linearly interpolated samples on a strictly increasing time grid.
struct TabulatedShape {
    std::vector<double> times;
    std::vector<double> values;
};

/// Envelope computed on demand from other pulses (see recipes).
struct SynthesizedShape {
    std::string kind;
    std::function<double(double)> envelope;
};

using PulseShape = std::variant<GaussianTerm, ConstantShape, GaussianSumShape, TabulatedShape, SynthesizedShape>;

/// Real envelope with a constant phase. A synthesized envelope may be
/// negative; value * e^{i phase} is then the same coupling as |value| with
/// the phase flipped by pi.
class Pulse {
public:
    explicit Pulse(PulseShape shape, double phase = 0.0);

    static Pulse gaussian(double peak, double center, double width, double phase = 0.0);
    static Pulse constant(double value, double phase = 0.0);
    static Pulse gaussian_sum(std::vector<GaussianTerm> terms, double phase = 0.0);
    static Pulse tabulated(std::vector<double> times, std::vector<double> values, double phase = 0.0);
    static Pulse zero() { return constant(0.0); }

    const PulseShape& shape() const { return shape_; }
    double phase() const { return phase_; }
    Pulse with_phase(double phase) const;

    /// Throws RangeError outside a tabulated range.
    double value(double t) const;

    /// Closed-form time derivative for gaussian, gaussian-sum and constant
    /// shapes; empty for tabulated and synthesized ones.
    std::optional<double> derivative(double t) const;

    /// Time interval where value() is defined (infinite unless tabulated).
    std::pair<double, double> domain() const;

    Complex coupling(double t) const;

private:
    PulseShape shape_;
    double phase_;
};

inline double evaluate_pulse(const Pulse& p, double t) { return p.value(t); }

enum class PulseId { P, S, C };

const char* to_string(PulseId id);

struct ConstantDetuning {
    double value = 0.0;
};

struct TabulatedDetuning {
    std::vector<double> times;
    std::vector<double> values;
};

/// Detuning tied to a pulse envelope: Delta(t) = factor * Omega_pulse(t).
struct PulseFollowingDetuning {
    PulseId pulse = PulseId::S;
    double factor = 0.0;
};

using Detuning = std::variant<ConstantDetuning, TabulatedDetuning, PulseFollowingDetuning>;

/// Cumulative detunings Delta2 = Delta_P and Delta3 = Delta_P - Delta_S.
struct DetuningSpec {
    Detuning delta2 = ConstantDetuning{};
    Detuning delta3 = ConstantDetuning{};
};

/// Every loop parameter at one instant.
struct LoopSample {
    double t = 0.0;
    double omega_p = 0.0;
    double omega_s = 0.0;
    double omega_c = 0.0;
    double phase_p = 0.0;
    double phase_s = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
};

/// Three pulses and two detunings. The C field is the phase reference,
/// so its phase must be zero.
class LoopConfig {
public:
    LoopConfig(Pulse pump, Pulse stokes, Pulse control, DetuningSpec detunings = {}, double time_unit = 1.0);

    const Pulse& pump() const { return pump_; }
    const Pulse& stokes() const { return stokes_; }
    const Pulse& control() const { return control_; }
    const Pulse& pulse(PulseId id) const;
    const DetuningSpec& detunings() const { return detunings_; }
    double time_unit() const { return time_unit_; }

    LoopConfig with_pump(Pulse p) const;
    LoopConfig with_stokes(Pulse s) const;
    LoopConfig with_control(Pulse c) const;
    LoopConfig with_detunings(DetuningSpec d) const;

    double delta2(double t) const;
    double delta3(double t) const;

    LoopSample sample(double t) const;

private:
    double evaluate(const Detuning& d, double t) const;

    Pulse pump_;
    Pulse stokes_;
    Pulse control_;
    DetuningSpec detunings_;
    double time_unit_;
};

/// W(t) for the loop; element (0,0) is zero by the choice of overall phase.
HermitianMatrix bare_hamiltonian(const LoopConfig& cfg, double t);
HermitianMatrix bare_hamiltonian(const LoopSample& s);

/// Linear interpolation on a strictly increasing grid; RangeError outside.
double interpolate_linear(const std::vector<double>& times, const std::vector<double>& values, double t);

}  // namespace loopchain
