#pragma once

// Special-case conditions of the loop: chain breaking (the 2~-3~ coupling
// vanishes, leaving 3~ as a spectator) and two-photon resonance in the
// Householder chain (Delta~3 = 0, giving a dark state). Includes pulse
// synthesis, condition checks, predictions and the figure presets.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopchain/householder_frame.hpp"
#include "loopchain/loop_model.hpp"
#include "loopchain/propagator.hpp"
#include "loopchain/time_grid.hpp"

namespace loopchain {

enum class ConditionId {
    ChainBreakA,         ///< Delta2 = Delta3, Omega_S e^{i phi_S} = -2i e^{-i phi_P} dtheta/dt
    ChainBreakB,         ///< Delta2 = Delta3, phi_P = -phi_S, Omega_C = Omega_P
    TwoPhotonResonance,  ///< Delta~3 = 0
    PhaseCondition,      ///< phi_P + phi_S = pi/2, Delta3 = -Delta2 Omega_C^2 / Omega_P^2
    DetuningRelation,    ///< Delta3 = -Delta2 Omega_C^2/Omega_P^2 + (Omega_C/Omega_P) Omega_S cos(phi_P + phi_S)
};

const char* to_string(ConditionId id);
std::optional<ConditionId> parse_condition_id(std::string_view text);
const std::vector<ConditionId>& all_conditions();

struct ConditionTolerances {
    double frequency = 1e-10;  ///< in 1/T
    double phase = 1e-10;      ///< in rad
};

/// One algebraic relation of a condition and its worst violation.
struct ConditionTerm {
    std::string name;
    std::string unit;  ///< "1/T" or "rad"
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool satisfied() const { return max_violation < tolerance; }
};

struct ConditionReport {
    ConditionId id = ConditionId::ChainBreakA;
    std::vector<ConditionTerm> terms;
    double max_violation = 0.0;  ///< largest term violation
    bool satisfied = false;      ///< every term below its tolerance and at least one point evaluated
    bool indeterminate = false;  ///< no grid point where the condition can be evaluated
    std::size_t evaluated_points = 0;
    std::size_t total_points = 0;
    double sub_grid_start = 0.0;  ///< first evaluated time
    double sub_grid_end = 0.0;    ///< last evaluated time
};

/// Evaluates a condition over the grid. Relations with Omega_C / Omega_P
/// ratios, and Delta~3, use only points with Omega_P > 1e-12 / T.
ConditionReport check_condition(const LoopConfig& cfg, const TimeGrid& grid, ConditionId id,
                                const ConditionTolerances& tolerances = {});

/// Replaces S by Omega_S(t) = -2 dtheta/dt with phi_S = pi/2 - phi_P, and
/// sets Delta3 = Delta2, so the 2~-3~ coupling vanishes on the grid and 3~
/// becomes a spectator. Throws SynthesisError when P and C both vanish on an
/// interior interval of the grid.
LoopConfig synthesize_chain_breaking_S(const LoopConfig& cfg, const TimeGrid& grid);

/// Bare-basis state reached when the population starts in |1>:
///  - S before P with Delta~3 = 0 (dark-state passage): (0, -e^{-i phi_P} sin, cos);
///  - chain broken, complete transfer 1 -> 2~: (0, cos, e^{i phi_P} sin).
/// Both need proportional P and C pulses (constant theta). Throws NotApplicable otherwise.
StateVector final_superposition_prediction(const LoopConfig& cfg, const TimeGrid& grid);

struct ScenarioPreset {
    std::string name;
    std::string description;
    LoopConfig cfg;
    TimeGrid grid;
    StateVector initial;
    Populations expected_final{};
};

/// Default grid for the presets: [-5T, 5T] with dt = T/1000.
TimeGrid default_preset_grid(double dt = 1e-3);

const std::vector<std::string>& preset_names();

/// fig3, fig4 or fig5. Throws InvalidInput on an unknown name.
ScenarioPreset preset(std::string_view name, const TimeGrid& grid = default_preset_grid());

}  // namespace loopchain
