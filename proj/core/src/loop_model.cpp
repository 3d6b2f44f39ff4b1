#include "loopchain/loop_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "loopchain/errors.hpp"

namespace loopchain {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double gaussian_value(const GaussianTerm& g, double t) {
    const double x = (t - g.center) / g.width;
    return g.peak * std::exp(-x * x);
}

double gaussian_derivative(const GaussianTerm& g, double t) {
    const double x = (t - g.center) / g.width;
    return -2.0 * x / g.width * g.peak * std::exp(-x * x);
}

void validate_term(const GaussianTerm& g) {
    if (!(g.width > 0.0) || !std::isfinite(g.width)) throw InvalidInput("gaussian width must be positive");
    if (!std::isfinite(g.peak) || !std::isfinite(g.center)) throw InvalidInput("gaussian parameters must be finite");
}

void validate_table(const std::vector<double>& times, const std::vector<double>& values, const char* what) {
    if (times.size() != values.size()) throw InvalidInput(std::string(what) + ": times and values differ in length");
    if (times.size() < 2) throw InvalidInput(std::string(what) + ": needs at least two samples");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!std::isfinite(times[k]) || !std::isfinite(values[k])) {
            throw InvalidInput(std::string(what) + ": samples must be finite");
        }
        if (k > 0 && !(times[k] > times[k - 1])) {
            throw InvalidInput(std::string(what) + ": times must be strictly increasing");
        }
    }
}

}  // namespace

double interpolate_linear(const std::vector<double>& times, const std::vector<double>& values, double t) {
    if (!(t >= times.front() && t <= times.back())) {
        throw RangeError("t = " + std::to_string(t) + " outside tabulated range [" + std::to_string(times.front()) +
                         ", " + std::to_string(times.back()) + "]");
    }
    auto upper = std::upper_bound(times.begin(), times.end(), t);
    if (upper == times.end()) return values.back();
    const std::size_t hi = static_cast<std::size_t>(upper - times.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
}

Pulse::Pulse(PulseShape shape, double phase) : shape_(std::move(shape)), phase_(phase) {
    if (!std::isfinite(phase_)) throw InvalidInput("pulse phase must be finite");
    std::visit(Overloaded{
                   [](const GaussianTerm& g) { validate_term(g); },
                   [](const ConstantShape& c) {
                       if (!std::isfinite(c.value)) throw InvalidInput("constant pulse value must be finite");
                   },
                   [](const GaussianSumShape& s) {
                       if (s.terms.empty()) throw InvalidInput("gaussian sum needs at least one term");
                       for (const auto& g : s.terms) validate_term(g);
                   },
                   [](const TabulatedShape& tab) { validate_table(tab.times, tab.values, "tabulated pulse"); },
                   [](const SynthesizedShape& s) {
                       if (!s.envelope) throw InvalidInput("synthesized pulse has no envelope");
                   },
               },
               shape_);
}

Pulse Pulse::gaussian(double peak, double center, double width, double phase) {
    return Pulse(GaussianTerm{peak, center, width}, phase);
}

Pulse Pulse::constant(double value, double phase) { return Pulse(ConstantShape{value}, phase); }

Pulse Pulse::gaussian_sum(std::vector<GaussianTerm> terms, double phase) {
    return Pulse(GaussianSumShape{std::move(terms)}, phase);
}

Pulse Pulse::tabulated(std::vector<double> times, std::vector<double> values, double phase) {
    return Pulse(TabulatedShape{std::move(times), std::move(values)}, phase);
}

Pulse Pulse::with_phase(double phase) const { return Pulse(shape_, phase); }

double Pulse::value(double t) const {
    return std::visit(Overloaded{
                          [t](const GaussianTerm& g) { return gaussian_value(g, t); },
                          [](const ConstantShape& c) { return c.value; },
                          [t](const GaussianSumShape& s) {
                              double sum = 0.0;
                              for (const auto& g : s.terms) sum += gaussian_value(g, t);
                              return sum;
                          },
                          [t](const TabulatedShape& tab) { return interpolate_linear(tab.times, tab.values, t); },
                          [t](const SynthesizedShape& s) { return s.envelope(t); },
                      },
                      shape_);
}

std::optional<double> Pulse::derivative(double t) const {
    return std::visit(Overloaded{
                          [t](const GaussianTerm& g) -> std::optional<double> { return gaussian_derivative(g, t); },
                          [](const ConstantShape&) -> std::optional<double> { return 0.0; },
                          [t](const GaussianSumShape& s) -> std::optional<double> {
                              double sum = 0.0;
                              for (const auto& g : s.terms) sum += gaussian_derivative(g, t);
                              return sum;
                          },
                          [](const TabulatedShape&) -> std::optional<double> { return std::nullopt; },
                          [](const SynthesizedShape&) -> std::optional<double> { return std::nullopt; },
                      },
                      shape_);
}

std::pair<double, double> Pulse::domain() const {
    if (const auto* tab = std::get_if<TabulatedShape>(&shape_)) return {tab->times.front(), tab->times.back()};
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
}

Complex Pulse::coupling(double t) const { return value(t) * std::polar(1.0, phase_); }

const char* to_string(PulseId id) {
    switch (id) {
        case PulseId::P: return "P";
        case PulseId::S: return "S";
        case PulseId::C: return "C";
    }
    return "?";
}

LoopConfig::LoopConfig(Pulse pump, Pulse stokes, Pulse control, DetuningSpec detunings, double time_unit)
    : pump_(std::move(pump)),
      stokes_(std::move(stokes)),
      control_(std::move(control)),
      detunings_(std::move(detunings)),
      time_unit_(time_unit) {
    if (control_.phase() != 0.0) throw InvalidInput("the C field is the phase reference: its phase must be 0");
    if (!(time_unit_ > 0.0) || !std::isfinite(time_unit_)) throw InvalidInput("time unit must be positive");
    for (const Detuning* d : {&detunings_.delta2, &detunings_.delta3}) {
        if (const auto* c = std::get_if<ConstantDetuning>(d); c && !std::isfinite(c->value)) {
            throw InvalidInput("detuning must be finite");
        }
        if (const auto* tab = std::get_if<TabulatedDetuning>(d)) validate_table(tab->times, tab->values, "tabulated detuning");
        if (const auto* f = std::get_if<PulseFollowingDetuning>(d); f && !std::isfinite(f->factor)) {
            throw InvalidInput("detuning factor must be finite");
        }
    }
}

const Pulse& LoopConfig::pulse(PulseId id) const {
    switch (id) {
        case PulseId::P: return pump_;
        case PulseId::S: return stokes_;
        case PulseId::C: return control_;
    }
    return pump_;
}

LoopConfig LoopConfig::with_pump(Pulse p) const { return {std::move(p), stokes_, control_, detunings_, time_unit_}; }
LoopConfig LoopConfig::with_stokes(Pulse s) const { return {pump_, std::move(s), control_, detunings_, time_unit_}; }
LoopConfig LoopConfig::with_control(Pulse c) const { return {pump_, stokes_, std::move(c), detunings_, time_unit_}; }
LoopConfig LoopConfig::with_detunings(DetuningSpec d) const { return {pump_, stokes_, control_, std::move(d), time_unit_}; }

double LoopConfig::evaluate(const Detuning& d, double t) const {
    return std::visit(Overloaded{
                          [](const ConstantDetuning& c) { return c.value; },
                          [t](const TabulatedDetuning& tab) { return interpolate_linear(tab.times, tab.values, t); },
                          [this, t](const PulseFollowingDetuning& f) { return f.factor * pulse(f.pulse).value(t); },
                      },
                      d);
}

double LoopConfig::delta2(double t) const { return evaluate(detunings_.delta2, t); }
double LoopConfig::delta3(double t) const { return evaluate(detunings_.delta3, t); }

LoopSample LoopConfig::sample(double t) const {
    return LoopSample{t,
                      pump_.value(t),
                      stokes_.value(t),
                      control_.value(t),
                      pump_.phase(),
                      stokes_.phase(),
                      delta2(t),
                      delta3(t)};
}

HermitianMatrix bare_hamiltonian(const LoopSample& s) {
    const Complex w01 = 0.5 * s.omega_p * std::polar(1.0, s.phase_p);
    const Complex w02 = 0.5 * s.omega_c;
    const Complex w12 = 0.5 * s.omega_s * std::polar(1.0, s.phase_s);
    return HermitianMatrix(ComplexMatrix{
        {0.0, w01, w02},
        {std::conj(w01), s.delta2, w12},
        {std::conj(w02), std::conj(w12), s.delta3},
    });
}

HermitianMatrix bare_hamiltonian(const LoopConfig& cfg, double t) { return bare_hamiltonian(cfg.sample(t)); }

}  // namespace loopchain
