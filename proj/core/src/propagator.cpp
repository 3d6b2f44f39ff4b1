#include "loopchain/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "loopchain/errors.hpp"

namespace loopchain {

namespace {

using Matrix3 = std::array<Complex, 9>;

Matrix3 to_array(const ComplexMatrix& m) {
    Matrix3 out{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) out[3 * i + j] = m(i, j);
    }
    return out;
}

/// -i H c
Amplitudes rhs(const Matrix3& h, const Amplitudes& c) {
    Amplitudes out{};
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = -kI * (h[3 * i] * c[0] + h[3 * i + 1] * c[1] + h[3 * i + 2] * c[2]);
    }
    return out;
}

Amplitudes axpy(const Amplitudes& c, double a, const Amplitudes& k) {
    return {c[0] + a * k[0], c[1] + a * k[1], c[2] + a * k[2]};
}

template <class HamiltonianAt>
Amplitudes rk4_step(const HamiltonianAt& hamiltonian, double t, double dt, const Amplitudes& c) {
    const Matrix3 h_start = hamiltonian(t);
    const Matrix3 h_mid = hamiltonian(t + 0.5 * dt);
    const Matrix3 h_end = hamiltonian(t + dt);
    const Amplitudes k1 = rhs(h_start, c);
    const Amplitudes k2 = rhs(h_mid, axpy(c, 0.5 * dt, k1));
    const Amplitudes k3 = rhs(h_mid, axpy(c, 0.5 * dt, k2));
    const Amplitudes k4 = rhs(h_end, axpy(c, dt, k3));
    Amplitudes out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = c[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

double squared_overlap(const Amplitudes& target, const Amplitudes& c) {
    return std::norm(std::conj(target[0]) * c[0] + std::conj(target[1]) * c[1] + std::conj(target[2]) * c[2]);
}

/// Spectator and dark populations for a state given in `basis`.
void observe(const HouseholderFrame& frame, double t, Basis basis, const Amplitudes& c, double& spectator,
             double& dark) {
    const auto snap = frame.snapshot(t);
    const Amplitudes bare = basis == Basis::Bare ? c : apply_reflection(snap.reflection, c);
    spectator = squared_overlap(householder_states(snap.theta, snap.phase_p).three.amplitudes(), bare);
    try {
        dark = squared_overlap(dark_state(snap).amplitudes(), bare);
    } catch (const DegenerateDarkState&) {
        dark = std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

StateVector::StateVector(Amplitudes amplitudes, Basis basis) : amplitudes_(amplitudes), basis_(basis) {
    if (std::abs(norm(amplitudes_) - 1.0) > kTolerance) {
        throw InvalidInput("state vector must have unit norm, got " + std::to_string(norm(amplitudes_)));
    }
}

StateVector StateVector::unchecked(Amplitudes amplitudes, Basis basis) {
    return StateVector(amplitudes, basis, Unchecked{});
}

StateVector StateVector::basis_vector(std::size_t index, Basis basis) {
    if (index > 2) throw InvalidInput("basis index must be 0, 1 or 2");
    Amplitudes a{};
    a[index] = 1.0;
    return StateVector(a, basis);
}

Populations populations(const Amplitudes& c) { return {std::norm(c[0]), std::norm(c[1]), std::norm(c[2])}; }

double projection_population(const StateVector& psi, const BasisState& target) {
    if (psi.basis() != target.basis()) {
        throw InvalidInput(std::string("projection: state is in the ") + to_string(psi.basis()) +
                           " basis but the target is in the " + to_string(target.basis()) + " basis");
    }
    return squared_overlap(target.amplitudes(), psi.amplitudes());
}

Trajectory propagate(const LoopConfig& cfg, const StateVector& psi0, const TimeGrid& grid, Basis basis,
                     const PropagationOptions& options) {
    if (psi0.basis() != basis) {
        throw InvalidInput(std::string("initial state is in the ") + to_string(psi0.basis()) +
                           " basis but propagation was requested in the " + to_string(basis) + " basis");
    }
    const HouseholderFrame frame(cfg, grid);

    auto bare_h = [&cfg](double t) { return to_array(bare_hamiltonian(cfg, t).matrix()); };
    auto chain_h = [&frame](double t) { return to_array(frame.snapshot(t).wtilde.matrix()); };

    Trajectory traj{grid, basis, {}, {}, {}, {}, 0.0};
    const std::size_t n = grid.points();
    traj.states.reserve(n);
    traj.populations.reserve(n);
    traj.spectator_population.resize(n);
    traj.dark_population.resize(n);

    Amplitudes c = psi0.amplitudes();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid.time(k);
        if (k > 0) {
            const double t_prev = grid.time(k - 1);
            c = basis == Basis::Bare ? rk4_step(bare_h, t_prev, t - t_prev, c) : rk4_step(chain_h, t_prev, t - t_prev, c);
        }
        traj.states.push_back(c);
        traj.populations.push_back(populations(c));
        traj.norm_drift = std::max(traj.norm_drift, std::abs(norm(c) - 1.0));
        observe(frame, t, basis, c, traj.spectator_population[k], traj.dark_population[k]);
    }

    if (traj.norm_drift > options.max_norm_drift) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "norm drift %.3g exceeds %.3g; use a smaller time step (dt = %.6g)",
                      traj.norm_drift, options.max_norm_drift, grid.step());
        throw AccuracyError(msg);
    }
    return traj;
}

Trajectory transform_trajectory(const Trajectory& traj, const LoopConfig& cfg) {
    const HouseholderFrame frame(cfg, traj.grid);
    Trajectory out = traj;
    out.basis = traj.basis == Basis::Bare ? Basis::Householder : Basis::Bare;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        out.states[k] = apply_reflection(frame.reflection(traj.grid.time(k)), traj.states[k]);
        out.populations[k] = populations(out.states[k]);
    }
    return out;
}

std::vector<ComplexVector> integrate(const HamiltonianFn& h, ComplexVector psi0, const TimeGrid& grid) {
    const std::size_t dim = psi0.size();
    auto derivative = [dim](const ComplexMatrix& m, const ComplexVector& c) {
        if (m.dim() != dim) throw InvalidInput("integrate: Hamiltonian dimension does not match the state");
        auto out = multiply(m, c);
        for (auto& z : out) z *= -kI;
        return out;
    };
    auto shifted = [](const ComplexVector& c, double a, const ComplexVector& k) {
        ComplexVector out = c;
        for (std::size_t i = 0; i < c.size(); ++i) out[i] += a * k[i];
        return out;
    };

    std::vector<ComplexVector> states;
    states.reserve(grid.points());
    states.push_back(psi0);
    ComplexVector c = std::move(psi0);
    for (std::size_t k = 1; k < grid.points(); ++k) {
        const double t = grid.time(k - 1);
        const double dt = grid.time(k) - t;
        const auto h_mid = h(t + 0.5 * dt);
        const auto k1 = derivative(h(t), c);
        const auto k2 = derivative(h_mid, shifted(c, 0.5 * dt, k1));
        const auto k3 = derivative(h_mid, shifted(c, 0.5 * dt, k2));
        const auto k4 = derivative(h(t + dt), shifted(c, dt, k3));
        for (std::size_t i = 0; i < dim; ++i) c[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        states.push_back(c);
    }
    return states;
}

TrajectorySummary summarize(const Trajectory& traj) {
    TrajectorySummary s;
    s.final_populations = traj.final_populations();
    s.norm_drift = traj.norm_drift;
    const auto [lo, hi] = std::minmax_element(traj.spectator_population.begin(), traj.spectator_population.end());
    s.spectator_min = *lo;
    s.spectator_max = *hi;
    s.dark_min = std::numeric_limits<double>::quiet_NaN();
    for (double d : traj.dark_population) {
        if (std::isnan(d)) continue;
        s.dark_min = std::isnan(s.dark_min) ? d : std::min(s.dark_min, d);
    }
    return s;
}

}  // namespace loopchain
