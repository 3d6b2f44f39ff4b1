#pragma once

// Time-dependent Householder basis for the three-state loop.
//
// The reflection R(t) fixes |1> and mixes |2>,|3> by the angle
// theta = atan2(Omega_C, Omega_P). Amplitudes transform as C~ = R C and
// obey dC~/dt = -i W~ C~ with W~ = R W R - i R dR/dt, a nearest-neighbour
// chain |1> - |2~> - |3~>:
//
//          | 0               Omega~_P / 2            0                   |
//   W~ =   | c.c.            Delta~2                 (Omega~_S - 2i e^{-i phi_P} dtheta/dt) / 2 |
//          | 0               c.c.                    Delta~3             |

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "loopchain/linalg.hpp"
#include "loopchain/loop_model.hpp"
#include "loopchain/time_grid.hpp"

namespace loopchain {

/// Envelopes below this (in 1/T) count as switched off.
inline constexpr double kEnvelopeFloor = 1e-14;

enum class Basis { Bare, Householder };

const char* to_string(Basis basis);

using Amplitudes = std::array<Complex, 3>;

struct MixingAngle {
    double theta = 0.0;      ///< atan2(Omega_C, Omega_P), in [0, pi/2] for nonnegative envelopes
    double theta_dot = 0.0;  ///< d theta / dt
};

struct FrameSnapshot {
    double t = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
    double phase_p = 0.0;
    UnitaryMatrix reflection;  ///< R(t)
    HermitianMatrix wtilde;    ///< W~(t), closed form
    double delta2_tilde = 0.0;
    double delta3_tilde = 0.0;
    Complex omega_p_tilde;
    Complex omega_s_tilde;
    double omega_rms = 0.0;  ///< sqrt(Omega_P^2 + Omega_C^2)

    /// 2 * W~[1][2]: the full 2~-3~ coupling including the frame term.
    Complex chain_coupling() const { return 2.0 * wtilde(1, 2); }
};

enum class StateLabel { One, Two, Three, Dark, Spectator };

const char* to_string(StateLabel label);

/// A unit-norm state given by its ket components in a declared basis.
class BasisState {
public:
    static constexpr double kTolerance = 1e-12;

    BasisState(StateLabel label, Amplitudes amplitudes, Basis basis = Basis::Bare);

    StateLabel label() const { return label_; }
    Basis basis() const { return basis_; }
    const Amplitudes& amplitudes() const { return amplitudes_; }

private:
    StateLabel label_;
    Amplitudes amplitudes_;
    Basis basis_;
};

struct HouseholderStates {
    BasisState one;
    BasisState two;
    BasisState three;  ///< spectator of the chain when the 2~-3~ coupling vanishes
};

/// Unit vector (0, sin(theta/2) e^{-i phi_P}, -cos(theta/2)).
HouseholderVector householder_vector(double theta, double phase_p);

/// R with rows (1,0,0), (0, cos, e^{-i phi_P} sin), (0, e^{i phi_P} sin, -cos).
UnitaryMatrix householder_reflection(double theta, double phase_p);

/// Columns of R as bare-basis kets: |2~> = (0, cos, e^{i phi_P} sin),
/// |3~> = (0, e^{-i phi_P} sin, -cos).
HouseholderStates householder_states(double theta, double phase_p);

/// Closed-form W~ for one loop sample at a given angle and angular rate.
/// Exact for any theta; theta need not match the envelopes (frozen frame).
FrameSnapshot snapshot_at(const LoopSample& sample, double theta, double theta_dot);

inline constexpr double kDefaultDerivativeStep = 1e-4;

/// Throws DegenerateAngle when both P and C envelopes are below the floor.
/// derivative_step is used only for envelopes without a closed-form
/// derivative (4th-order central differences).
MixingAngle mixing_angle(const LoopConfig& cfg, double t, double derivative_step = kDefaultDerivativeStep);

FrameSnapshot frame_snapshot(const LoopConfig& cfg, double t, double derivative_step = kDefaultDerivativeStep);

/// Zero-eigenvalue state of the chain when Delta~3 = 0:
/// |D~> = (|X|, 0, -conj(Omega~_P) conj(X)/|X|) / N with X the 2~-3~ coupling,
/// returned as bare-basis ket R |D~>. Reduces to |1> when Omega~_P = 0.
/// Throws DegenerateDarkState when both couplings vanish.
BasisState dark_state(const FrameSnapshot& snapshot);

/// Householder frame over a time window with the angle frozen wherever it
/// is undefined, so R(t) exists at every time. Frozen times get the angle
/// of the nearest defined grid time and zero angular rate.
class HouseholderFrame {
public:
    HouseholderFrame(LoopConfig cfg, const TimeGrid& grid);

    const LoopConfig& config() const { return cfg_; }

    bool frozen(double t) const;
    MixingAngle mixing_angle(double t) const;
    FrameSnapshot snapshot(double t) const;
    UnitaryMatrix reflection(double t) const;

    /// Maximal grid intervals on which the angle is defined.
    const std::vector<std::pair<double, double>>& defined_runs() const { return defined_runs_; }

private:
    double theta_or_frozen(double t) const;

    LoopConfig cfg_;
    double derivative_step_;
    std::vector<std::pair<double, double>> defined_runs_;
};

/// C~ = R C (R is an involution, so this also maps back).
Amplitudes apply_reflection(const UnitaryMatrix& r, const Amplitudes& c);

}  // namespace loopchain
