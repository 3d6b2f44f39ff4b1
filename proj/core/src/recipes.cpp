#include "loopchain/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>

#include "loopchain/errors.hpp"

namespace loopchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRatioFloor = 1e-12;

/// Angle wrapped into [-pi, pi].
double wrap(double angle) { return std::remainder(angle, 2.0 * kPi); }

/// Accumulates worst violations of the frequency-valued relations of one condition.
class ReportBuilder {
public:
    ReportBuilder(ConditionId id, std::size_t total, const ConditionTolerances& tol) : tol_(tol) {
        report_.id = id;
        report_.total_points = total;
    }

    void frequency_term(const std::string& name) { report_.terms.push_back({name, "1/T", 0.0, tol_.frequency}); }

    void phase_term(const std::string& name, double violation) {
        report_.terms.push_back({name, "rad", std::abs(violation), tol_.phase});
    }

    void record(std::size_t term, double violation) {
        auto& v = report_.terms[term].max_violation;
        v = std::isnan(violation) ? violation : std::max(v, std::abs(violation));
    }

    void evaluated(double t) {
        if (report_.evaluated_points == 0) report_.sub_grid_start = t;
        report_.sub_grid_end = t;
        ++report_.evaluated_points;
    }

    ConditionReport finish() {
        report_.indeterminate = report_.evaluated_points == 0;
        report_.max_violation = 0.0;
        bool all = true;
        for (const auto& term : report_.terms) {
            report_.max_violation = std::max(report_.max_violation, term.max_violation);
            all = all && term.satisfied();
        }
        report_.satisfied = all && !report_.indeterminate;
        return report_;
    }

private:
    ConditionTolerances tol_;
    ConditionReport report_;
};

double centroid(const TimeGrid& grid, const std::function<double(double)>& weight) {
    double sum = 0.0;
    double moment = 0.0;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double t = grid.time(k);
        const double w = weight(t);
        sum += w;
        moment += w * t;
    }
    return sum > 0.0 ? moment / sum : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

const char* to_string(ConditionId id) {
    switch (id) {
        case ConditionId::ChainBreakA: return "chain-break-A";
        case ConditionId::ChainBreakB: return "chain-break-B";
        case ConditionId::TwoPhotonResonance: return "two-photon-resonance";
        case ConditionId::PhaseCondition: return "phase-condition";
        case ConditionId::DetuningRelation: return "detuning-relation";
    }
    return "?";
}

const std::vector<ConditionId>& all_conditions() {
    static const std::vector<ConditionId> ids{ConditionId::ChainBreakA, ConditionId::ChainBreakB,
                                              ConditionId::TwoPhotonResonance, ConditionId::PhaseCondition,
                                              ConditionId::DetuningRelation};
    return ids;
}

std::optional<ConditionId> parse_condition_id(std::string_view text) {
    for (auto id : all_conditions()) {
        if (text == to_string(id)) return id;
    }
    return std::nullopt;
}

ConditionReport check_condition(const LoopConfig& cfg, const TimeGrid& grid, ConditionId id,
                                const ConditionTolerances& tolerances) {
    ReportBuilder rb(id, grid.points(), tolerances);
    const double phase_p = cfg.pump().phase();
    const double phase_s = cfg.stokes().phase();
    const double loop_phase = phase_p + phase_s;

    switch (id) {
        case ConditionId::ChainBreakA: {
            const HouseholderFrame frame(cfg, grid);
            rb.frequency_term("Delta2 - Delta3");
            rb.frequency_term("Omega_S e^{i phi_S} + 2i e^{-i phi_P} dtheta/dt");
            for (std::size_t k = 0; k < grid.points(); ++k) {
                const double t = grid.time(k);
                const auto x = cfg.sample(t);
                const double rate = frame.mixing_angle(t).theta_dot;
                rb.record(0, x.delta2 - x.delta3);
                rb.record(1, std::abs(x.omega_s * std::polar(1.0, phase_s) +
                                      2.0 * kI * std::polar(1.0, -phase_p) * rate));
                rb.evaluated(t);
            }
            break;
        }
        case ConditionId::ChainBreakB: {
            rb.frequency_term("Delta2 - Delta3");
            rb.frequency_term("Omega_C - Omega_P");
            rb.phase_term("phi_P + phi_S", wrap(loop_phase));
            for (std::size_t k = 0; k < grid.points(); ++k) {
                const double t = grid.time(k);
                const auto x = cfg.sample(t);
                rb.record(0, x.delta2 - x.delta3);
                rb.record(1, x.omega_c - x.omega_p);
                rb.evaluated(t);
            }
            break;
        }
        case ConditionId::TwoPhotonResonance: {
            const HouseholderFrame frame(cfg, grid);
            rb.frequency_term("Delta~3");
            for (std::size_t k = 0; k < grid.points(); ++k) {
                const double t = grid.time(k);
                if (!(cfg.pump().value(t) > kRatioFloor)) continue;
                rb.record(0, frame.snapshot(t).delta3_tilde);
                rb.evaluated(t);
            }
            break;
        }
        case ConditionId::PhaseCondition: {
            rb.phase_term("phi_P + phi_S - pi/2", wrap(loop_phase - kPi / 2));
            rb.frequency_term("Delta3 + Delta2 Omega_C^2 / Omega_P^2");
            for (std::size_t k = 0; k < grid.points(); ++k) {
                const double t = grid.time(k);
                const auto x = cfg.sample(t);
                if (!(x.omega_p > kRatioFloor)) continue;
                const double ratio = x.omega_c / x.omega_p;
                rb.record(1, x.delta3 + x.delta2 * ratio * ratio);
                rb.evaluated(t);
            }
            break;
        }
        case ConditionId::DetuningRelation: {
            rb.frequency_term("Delta3 + Delta2 Omega_C^2/Omega_P^2 - (Omega_C/Omega_P) Omega_S cos(phi_P + phi_S)");
            for (std::size_t k = 0; k < grid.points(); ++k) {
                const double t = grid.time(k);
                const auto x = cfg.sample(t);
                if (!(x.omega_p > kRatioFloor)) continue;
                const double ratio = x.omega_c / x.omega_p;
                rb.record(0, x.delta3 + x.delta2 * ratio * ratio - ratio * x.omega_s * std::cos(loop_phase));
                rb.evaluated(t);
            }
            break;
        }
    }
    return rb.finish();
}

LoopConfig synthesize_chain_breaking_S(const LoopConfig& cfg, const TimeGrid& grid) {
    auto frame = std::make_shared<const HouseholderFrame>(cfg, grid);
    const auto& runs = frame->defined_runs();
    if (runs.empty()) throw SynthesisError("cannot synthesize S: P and C vanish on the whole grid");
    if (runs.size() > 1) {
        throw SynthesisError("cannot synthesize S: P and C both vanish on an interior interval starting at t = " +
                             std::to_string(runs.front().second));
    }

    const double phase_s = wrap(kPi / 2 - cfg.pump().phase());
    Pulse stokes(SynthesizedShape{"chain_breaking",
                                  [frame](double t) { return -2.0 * frame->mixing_angle(t).theta_dot; }},
                 phase_s);

    DetuningSpec detunings = cfg.detunings();
    detunings.delta3 = detunings.delta2;
    return LoopConfig(cfg.pump(), std::move(stokes), cfg.control(), std::move(detunings), cfg.time_unit());
}

StateVector final_superposition_prediction(const LoopConfig& cfg, const TimeGrid& grid) {
    const HouseholderFrame frame(cfg, grid);
    if (frame.defined_runs().empty()) throw NotApplicable("prediction needs nonzero P or C pulses");

    // Proportional P and C: one angle everywhere, no angular rate.
    const double theta = frame.mixing_angle(frame.defined_runs().front().first).theta;
    double worst_rate = 0.0;
    double worst_chain = 0.0;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const auto snap = frame.snapshot(grid.time(k));
        worst_rate = std::max({worst_rate, std::abs(snap.theta_dot), std::abs(snap.theta - theta)});
        worst_chain = std::max(worst_chain, std::abs(snap.chain_coupling()));
    }
    if (worst_rate > 1e-9) throw NotApplicable("prediction needs proportional P and C pulses (constant mixing angle)");

    const double phase_p = cfg.pump().phase();
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    const double s_center = centroid(grid, [&cfg](double t) { return std::pow(cfg.stokes().value(t), 2); });
    const double p_center = centroid(grid, [&cfg](double t) {
        return std::pow(cfg.pump().value(t), 2) + std::pow(cfg.control().value(t), 2);
    });
    const bool counterintuitive = std::isfinite(s_center) && std::isfinite(p_center) && s_center < p_center;
    if (counterintuitive && check_condition(cfg, grid, ConditionId::TwoPhotonResonance).satisfied) {
        return StateVector({0.0, -std::polar(1.0, -phase_p) * s, c});
    }
    if (worst_chain < 1e-9) return StateVector({0.0, c, std::polar(1.0, phase_p) * s});
    throw NotApplicable(
        "config matches neither dark-state passage (S before P with Delta~3 = 0) nor a broken chain");
}

TimeGrid default_preset_grid(double dt) { return TimeGrid(-5.0, 5.0, dt); }

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig3", "fig4", "fig5"};
    return names;
}

ScenarioPreset preset(std::string_view name, const TimeGrid& grid) {
    constexpr double tau = 0.5;
    constexpr double third = 1.0 / 3.0;

    if (name == "fig3") {
        // Fractional-pi pulses under chain-break-B, resonant in the Householder
        // basis through Delta2 = Delta3 = -Omega_S / 2.
        constexpr double omega_pc = 0.76;
        constexpr double omega_s = 1.0;
        DetuningSpec detunings{PulseFollowingDetuning{PulseId::S, -0.5}, PulseFollowingDetuning{PulseId::S, -0.5}};
        LoopConfig cfg(Pulse::gaussian(omega_pc, 0.0, 1.0), Pulse::gaussian(omega_s, tau, 1.0),
                       Pulse::gaussian(omega_pc, 0.0, 1.0), detunings);
        return {"fig3", "equal superposition of |1>,|2>,|3> from |1> with Omega_C = Omega_P (chain-break-B)",
                std::move(cfg), grid, StateVector::basis_vector(0), {third, third, third}};
    }
    if (name == "fig4") {
        // Intuitive P-then-(P,C) sequence; S synthesized as -2 dtheta/dt.
        constexpr double alpha = kPi / 4;
        constexpr double omega0 = 0.567;
        LoopConfig base(Pulse::gaussian_sum({{omega0, -tau, 1.0}, {omega0 * std::cos(alpha), tau, 1.0}}),
                        Pulse::zero(), Pulse::gaussian(omega0 * std::sin(alpha), tau, 1.0));
        return {"fig4", "equal superposition of |1>,|2>,|3> with S synthesized for chain breaking (chain-break-A)",
                synthesize_chain_breaking_S(base, grid), grid, StateVector::basis_vector(0),
                {third, third, third}};
    }
    if (name == "fig5") {
        // Counterintuitive S-before-(P,C) passage through the dark state;
        // phi_P + phi_S = pi/2 keeps Delta~3 = 0 during the overlap.
        constexpr double theta = kPi / 4;
        constexpr double omega0 = 30.0;
        LoopConfig cfg(Pulse::gaussian(omega0 * std::cos(theta), tau, 1.0, kPi / 2),
                       Pulse::gaussian(omega0, -tau, 1.0, 0.0), Pulse::gaussian(omega0 * std::sin(theta), tau, 1.0));
        return {"fig5", "equal superposition of |2>,|3> from |1> by dark-state passage (two-photon resonance)",
                std::move(cfg), grid, StateVector::basis_vector(0), {0.0, 0.5, 0.5}};
    }
    throw InvalidInput("unknown preset '" + std::string(name) + "' (known: fig3, fig4, fig5)");
}

}  // namespace loopchain
