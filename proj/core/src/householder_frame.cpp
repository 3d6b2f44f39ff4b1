#include "loopchain/householder_frame.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "loopchain/errors.hpp"

namespace loopchain {

namespace {

bool envelopes_defined(double omega_p, double omega_c) {
    return std::max(std::abs(omega_p), std::abs(omega_c)) >= kEnvelopeFloor;
}

/// Five-point first derivative of f at t. The stencil slides inward when
/// [t - 2h, t + 2h] leaves [lo, hi].
double five_point_derivative(const std::function<double(double)>& f, double t, double h, double lo, double hi) {
    // Weights for stencils starting at offsets -2 (central), -1, 0, -3, -4.
    struct Stencil {
        int start;
        std::array<double, 5> weights;
    };
    static constexpr std::array<Stencil, 5> stencils{{
        {-2, {1.0, -8.0, 0.0, 8.0, -1.0}},
        {-1, {-3.0, -10.0, 18.0, -6.0, 1.0}},
        {0, {-25.0, 48.0, -36.0, 16.0, -3.0}},
        {-3, {-1.0, 6.0, -18.0, 10.0, 3.0}},
        {-4, {3.0, -16.0, 36.0, -48.0, 25.0}},
    }};
    for (const auto& s : stencils) {
        const double first = t + s.start * h;
        const double last = first + 4.0 * h;
        if (first < lo || last > hi) continue;
        double sum = 0.0;
        for (int j = 0; j < 5; ++j) sum += s.weights[j] * f(first + j * h);
        return sum / (12.0 * h);
    }
    throw RangeError("pulse domain too short for a finite-difference angular rate at t = " + std::to_string(t));
}

std::pair<double, double> angle_domain(const LoopConfig& cfg) {
    const auto p = cfg.pump().domain();
    const auto c = cfg.control().domain();
    return {std::max(p.first, c.first), std::min(p.second, c.second)};
}

/// theta_dot = (Omega_P dOmega_C - Omega_C dOmega_P) / (Omega_P^2 + Omega_C^2) when both
/// envelopes have closed-form derivatives; empty otherwise.
std::optional<double> analytic_theta_dot(const LoopConfig& cfg, double t, double omega_p, double omega_c) {
    const auto dp = cfg.pump().derivative(t);
    const auto dc = cfg.control().derivative(t);
    if (!dp || !dc) return std::nullopt;
    return (omega_p * *dc - omega_c * *dp) / (omega_p * omega_p + omega_c * omega_c);
}

}  // namespace

const char* to_string(Basis basis) { return basis == Basis::Bare ? "bare" : "householder"; }

const char* to_string(StateLabel label) {
    switch (label) {
        case StateLabel::One: return "1";
        case StateLabel::Two: return "2~";
        case StateLabel::Three: return "3~";
        case StateLabel::Dark: return "dark";
        case StateLabel::Spectator: return "spectator";
    }
    return "?";
}

BasisState::BasisState(StateLabel label, Amplitudes amplitudes, Basis basis)
    : label_(label), amplitudes_(amplitudes), basis_(basis) {
    if (std::abs(norm(amplitudes_) - 1.0) > kTolerance) {
        throw InvalidInput(std::string("basis state '") + to_string(label) + "' is not normalized");
    }
}

HouseholderVector householder_vector(double theta, double phase_p) {
    return HouseholderVector(
        ComplexVector{0.0, std::sin(theta / 2) * std::polar(1.0, -phase_p), -std::cos(theta / 2)});
}

UnitaryMatrix householder_reflection(double theta, double phase_p) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phase_p);
    return UnitaryMatrix(ComplexMatrix{
        {1.0, 0.0, 0.0},
        {0.0, c, std::conj(e) * s},
        {0.0, e * s, -c},
    });
}

HouseholderStates householder_states(double theta, double phase_p) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phase_p);
    return HouseholderStates{
        BasisState(StateLabel::One, {1.0, 0.0, 0.0}),
        BasisState(StateLabel::Two, {0.0, c, e * s}),
        BasisState(StateLabel::Three, {0.0, std::conj(e) * s, -c}),
    };
}

FrameSnapshot snapshot_at(const LoopSample& x, double theta, double theta_dot) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double loop_phase = x.phase_p + x.phase_s;
    const Complex e_p = std::polar(1.0, x.phase_p);

    const double product = s * c * x.omega_s * std::cos(loop_phase);
    const double delta2_tilde = x.delta3 * s * s + x.delta2 * c * c + product;
    const double delta3_tilde = x.delta2 * s * s + x.delta3 * c * c - product;
    const double omega = std::hypot(x.omega_p, x.omega_c);
    const Complex omega_p_tilde = e_p * omega;
    const Complex omega_s_tilde = 2.0 * std::conj(e_p) * (x.delta2 - x.delta3) * s * c +
                                  (std::polar(1.0, -2.0 * loop_phase) * s * s - c * c) *
                                      std::polar(1.0, x.phase_s) * x.omega_s;
    const Complex w12 = 0.5 * (omega_s_tilde - 2.0 * kI * std::conj(e_p) * theta_dot);

    HermitianMatrix wtilde(ComplexMatrix{
        {0.0, 0.5 * omega_p_tilde, 0.0},
        {0.5 * std::conj(omega_p_tilde), delta2_tilde, w12},
        {0.0, std::conj(w12), delta3_tilde},
    });
    return FrameSnapshot{x.t,
                         theta,
                         theta_dot,
                         x.phase_p,
                         householder_reflection(theta, x.phase_p),
                         std::move(wtilde),
                         delta2_tilde,
                         delta3_tilde,
                         omega_p_tilde,
                         omega_s_tilde,
                         omega};
}

MixingAngle mixing_angle(const LoopConfig& cfg, double t, double derivative_step) {
    const double omega_p = cfg.pump().value(t);
    const double omega_c = cfg.control().value(t);
    if (!envelopes_defined(omega_p, omega_c)) {
        throw DegenerateAngle("mixing angle undefined at t = " + std::to_string(t) + ": P and C envelopes both vanish");
    }
    MixingAngle out{std::atan2(omega_c, omega_p), 0.0};
    if (auto rate = analytic_theta_dot(cfg, t, omega_p, omega_c)) {
        out.theta_dot = *rate;
    } else {
        const auto [lo, hi] = angle_domain(cfg);
        auto theta = [&cfg](double u) { return std::atan2(cfg.control().value(u), cfg.pump().value(u)); };
        out.theta_dot = five_point_derivative(theta, t, derivative_step, lo, hi);
    }
    return out;
}

FrameSnapshot frame_snapshot(const LoopConfig& cfg, double t, double derivative_step) {
    const auto angle = mixing_angle(cfg, t, derivative_step);
    return snapshot_at(cfg.sample(t), angle.theta, angle.theta_dot);
}

BasisState dark_state(const FrameSnapshot& snap) {
    const Complex x = snap.chain_coupling();
    const double ax = std::abs(x);
    const double ap = std::abs(snap.omega_p_tilde);
    if (ax < kEnvelopeFloor && ap < kEnvelopeFloor) {
        throw DegenerateDarkState("dark state undefined at t = " + std::to_string(snap.t) +
                                  ": both chain couplings vanish");
    }
    Amplitudes chain{};
    if (ax == 0.0) {
        chain = {0.0, 0.0, -std::conj(snap.omega_p_tilde) / ap};
    } else {
        const double n = std::hypot(ax, ap);
        chain = {ax / n, 0.0, -std::conj(snap.omega_p_tilde) * std::conj(x) / (ax * n)};
    }
    return BasisState(StateLabel::Dark, apply_reflection(snap.reflection, chain));
}

Amplitudes apply_reflection(const UnitaryMatrix& r, const Amplitudes& c) {
    if (r.dim() != 3) throw InvalidInput("apply: expected a 3x3 matrix");
    Amplitudes out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = r(i, 0) * c[0] + r(i, 1) * c[1] + r(i, 2) * c[2];
    return out;
}

HouseholderFrame::HouseholderFrame(LoopConfig cfg, const TimeGrid& grid)
    : cfg_(std::move(cfg)), derivative_step_(grid.step() / 10.0) {
    bool in_run = false;
    double run_start = 0.0;
    double previous = 0.0;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double t = grid.time(k);
        const bool defined = envelopes_defined(cfg_.pump().value(t), cfg_.control().value(t));
        if (defined && !in_run) {
            run_start = t;
            in_run = true;
        } else if (!defined && in_run) {
            defined_runs_.emplace_back(run_start, previous);
            in_run = false;
        }
        previous = t;
    }
    if (in_run) defined_runs_.emplace_back(run_start, previous);
}

bool HouseholderFrame::frozen(double t) const {
    return !envelopes_defined(cfg_.pump().value(t), cfg_.control().value(t));
}

double HouseholderFrame::theta_or_frozen(double t) const {
    const double omega_p = cfg_.pump().value(t);
    const double omega_c = cfg_.control().value(t);
    if (envelopes_defined(omega_p, omega_c)) return std::atan2(omega_c, omega_p);
    if (defined_runs_.empty()) return 0.0;

    double nearest = defined_runs_.front().first;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : defined_runs_) {
        for (double edge : {a, b}) {
            if (std::abs(edge - t) < best) {
                best = std::abs(edge - t);
                nearest = edge;
            }
        }
    }
    return std::atan2(cfg_.control().value(nearest), cfg_.pump().value(nearest));
}

MixingAngle HouseholderFrame::mixing_angle(double t) const {
    const double omega_p = cfg_.pump().value(t);
    const double omega_c = cfg_.control().value(t);
    if (!envelopes_defined(omega_p, omega_c)) return {theta_or_frozen(t), 0.0};

    MixingAngle out{std::atan2(omega_c, omega_p), 0.0};
    if (auto rate = analytic_theta_dot(cfg_, t, omega_p, omega_c)) {
        out.theta_dot = *rate;
    } else {
        const auto [lo, hi] = angle_domain(cfg_);
        out.theta_dot = five_point_derivative([this](double u) { return theta_or_frozen(u); }, t, derivative_step_, lo, hi);
    }
    return out;
}

FrameSnapshot HouseholderFrame::snapshot(double t) const {
    const auto angle = mixing_angle(t);
    return snapshot_at(cfg_.sample(t), angle.theta, angle.theta_dot);
}

UnitaryMatrix HouseholderFrame::reflection(double t) const {
    return householder_reflection(theta_or_frozen(t), cfg_.pump().phase());
}

}  // namespace loopchain
