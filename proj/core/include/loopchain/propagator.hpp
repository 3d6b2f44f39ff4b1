#pragma once

// Fixed-step RK4 integration of dC/dt = -i W(t) C in the bare basis or of
// dC~/dt = -i W~(t) C~ in the Householder basis, with observables.

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "loopchain/householder_frame.hpp"
#include "loopchain/linalg.hpp"
#include "loopchain/loop_model.hpp"
#include "loopchain/time_grid.hpp"

namespace loopchain {

using Populations = std::array<double, 3>;

/// Three amplitudes tagged with their basis; unit norm within 1e-9.
class StateVector {
public:
    static constexpr double kTolerance = 1e-9;

    StateVector(Amplitudes amplitudes, Basis basis = Basis::Bare);

    /// For propagated states, whose drift is tracked by the trajectory.
    static StateVector unchecked(Amplitudes amplitudes, Basis basis);

    static StateVector basis_vector(std::size_t index, Basis basis = Basis::Bare);

    const Amplitudes& amplitudes() const { return amplitudes_; }
    Basis basis() const { return basis_; }

private:
    struct Unchecked {};
    StateVector(Amplitudes amplitudes, Basis basis, Unchecked) : amplitudes_(amplitudes), basis_(basis) {}

    Amplitudes amplitudes_;
    Basis basis_;
};

Populations populations(const Amplitudes& c);
inline Populations populations(const StateVector& s) { return populations(s.amplitudes()); }

/// |<target|psi>|^2. Throws InvalidInput when the bases differ.
double projection_population(const StateVector& psi, const BasisState& target);

struct Trajectory {
    TimeGrid grid;
    Basis basis = Basis::Bare;
    std::vector<Amplitudes> states;  ///< one per grid point
    std::vector<Populations> populations;
    std::vector<double> spectator_population;  ///< |<3~(t)|psi(t)>|^2
    std::vector<double> dark_population;       ///< |<D(t)|psi(t)>|^2, NaN where the dark state is undefined
    double norm_drift = 0.0;                   ///< max | |C| - 1 | over the grid

    StateVector state(std::size_t k) const { return StateVector::unchecked(states[k], basis); }
    const Amplitudes& final_state() const { return states.back(); }
    const Populations& final_populations() const { return populations.back(); }
};

struct PropagationOptions {
    /// Norm drift above this raises AccuracyError. Infinity disables the check.
    double max_norm_drift = 1e-6;
};

/// RK4 over the grid from psi0, whose basis must equal the requested one.
Trajectory propagate(const LoopConfig& cfg, const StateVector& psi0, const TimeGrid& grid, Basis basis,
                     const PropagationOptions& options = {});

/// Per-time C -> R(t) C, flipping the basis tag. R is its own inverse, so
/// applying this twice returns the original trajectory.
Trajectory transform_trajectory(const Trajectory& traj, const LoopConfig& cfg);

/// Generic N-state RK4 for dC/dt = -i H(t) C; returns the state at every grid point.
using HamiltonianFn = std::function<ComplexMatrix(double)>;
std::vector<ComplexVector> integrate(const HamiltonianFn& h, ComplexVector psi0, const TimeGrid& grid);

struct TrajectorySummary {
    Populations final_populations{};
    double norm_drift = 0.0;
    double spectator_min = 0.0;
    double spectator_max = 0.0;
    double dark_min = 0.0;  ///< over grid points where the dark state is defined
};

TrajectorySummary summarize(const Trajectory& traj);

}  // namespace loopchain
