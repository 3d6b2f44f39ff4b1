#include "loopchain/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "loopchain/errors.hpp"
#include "loopchain/matrix_io.hpp"
#include "loopchain/recipes.hpp"

namespace loopchain {

namespace {

using Tree = boost::property_tree::ptree;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string number_text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += ", ";
        out += number_text(xs[k]);
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(trim(std::string_view(text).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Typed access to one [section] with key-level diagnostics.
class Section {
public:
    Section(const Tree& root, std::string name) : name_(std::move(name)) {
        if (auto child = root.get_child_optional(name_)) {
            node_ = &*child;
        }
    }

    bool present() const { return node_ != nullptr; }
    const std::string& name() const { return name_; }

    std::string text(const std::string& key) const {
        if (!node_) throw ParseError("missing section [" + name_ + "]");
        auto value = node_->get_optional<std::string>(key);
        if (!value) throw ParseError("[" + name_ + "] missing key '" + key + "'");
        return trim(*value);
    }

    std::string text_or(const std::string& key, const std::string& fallback) const {
        if (!node_ || !node_->get_child_optional(key)) return fallback;
        return text(key);
    }

    double number(const std::string& key) const { return parse_number(key, text(key)); }

    double number_or(const std::string& key, double fallback) const {
        if (!node_ || !node_->get_child_optional(key)) return fallback;
        return number(key);
    }

    std::vector<double> numbers(const std::string& key) const {
        std::vector<double> out;
        for (const auto& item : split_list(text(key))) out.push_back(parse_number(key, item));
        return out;
    }

    void allow_only(const std::set<std::string>& keys) const {
        if (!node_) return;
        for (const auto& [key, _] : *node_) {
            if (!keys.count(key)) throw ParseError("[" + name_ + "] unknown key '" + key + "'");
        }
    }

    double parse_number(const std::string& key, const std::string& value) const {
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
        if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ParseError("[" + name_ + "] " + key + ": '" + value + "' is not a number");
        }
        return x;
    }

private:
    std::string name_;
    const Tree* node_ = nullptr;
};

Basis parse_basis(const Section& s, const std::string& key) {
    const auto value = s.text_or(key, "bare");
    if (value == "bare") return Basis::Bare;
    if (value == "householder") return Basis::Householder;
    throw ParseError("[" + s.name() + "] " + key + ": expected 'bare' or 'householder', got '" + value + "'");
}

PulseId parse_pulse_id(const Section& s, const std::string& key) {
    const auto value = s.text(key);
    if (value == "P") return PulseId::P;
    if (value == "S") return PulseId::S;
    if (value == "C") return PulseId::C;
    throw ParseError("[" + s.name() + "] " + key + ": expected P, S or C, got '" + value + "'");
}

struct PulseBlock {
    std::optional<Pulse> pulse;  ///< empty for chain_breaking
    bool chain_breaking = false;
};

PulseBlock read_pulse(const Tree& root, PulseId id) {
    const Section s(root, std::string("pulse_") + to_string(id));
    if (!s.present()) throw ParseError("missing section [" + s.name() + "]");
    const auto shape = s.text("shape");
    try {
        if (shape == "gaussian") {
            s.allow_only({"shape", "peak", "center", "width", "phase"});
            return {Pulse::gaussian(s.number("peak"), s.number("center"), s.number("width"), s.number_or("phase", 0.0))};
        }
        if (shape == "constant") {
            s.allow_only({"shape", "value", "phase"});
            return {Pulse::constant(s.number("value"), s.number_or("phase", 0.0))};
        }
        if (shape == "gaussian_sum") {
            s.allow_only({"shape", "peaks", "centers", "widths", "phase"});
            const auto peaks = s.numbers("peaks");
            const auto centers = s.numbers("centers");
            const auto widths = s.numbers("widths");
            if (peaks.size() != centers.size() || peaks.size() != widths.size()) {
                throw ParseError("[" + s.name() + "] peaks, centers and widths must have equal length");
            }
            std::vector<GaussianTerm> terms;
            for (std::size_t k = 0; k < peaks.size(); ++k) terms.push_back({peaks[k], centers[k], widths[k]});
            return {Pulse::gaussian_sum(std::move(terms), s.number_or("phase", 0.0))};
        }
        if (shape == "tabulated") {
            s.allow_only({"shape", "times", "values", "phase"});
            return {Pulse::tabulated(s.numbers("times"), s.numbers("values"), s.number_or("phase", 0.0))};
        }
        if (shape == "chain_breaking") {
            if (id != PulseId::S) throw ParseError("[" + s.name() + "] only pulse_S can be chain_breaking");
            s.allow_only({"shape"});
            return {std::nullopt, true};
        }
    } catch (const InvalidInput& e) {
        throw ParseError("[" + s.name() + "] " + e.what());
    }
    throw ParseError("[" + s.name() + "] unknown shape '" + shape + "'");
}

Detuning read_detuning(const Tree& root, const std::string& name) {
    const Section s(root, name);
    if (!s.present()) return ConstantDetuning{0.0};
    const auto shape = s.text_or("shape", "constant");
    if (shape == "constant") {
        s.allow_only({"shape", "value"});
        return ConstantDetuning{s.number("value")};
    }
    if (shape == "tabulated") {
        s.allow_only({"shape", "times", "values"});
        return TabulatedDetuning{s.numbers("times"), s.numbers("values")};
    }
    if (shape == "follow") {
        s.allow_only({"shape", "pulse", "factor"});
        return PulseFollowingDetuning{parse_pulse_id(s, "pulse"), s.number("factor")};
    }
    throw ParseError("[" + name + "] unknown shape '" + shape + "'");
}

StateVector read_initial(const Tree& root) {
    const Section s(root, "initial");
    s.allow_only({"basis", "amplitudes"});
    const auto items = split_list(s.text("amplitudes"));
    if (items.size() != 3) throw ParseError("[initial] amplitudes: expected 3 entries, got " + std::to_string(items.size()));
    Amplitudes a{};
    for (std::size_t k = 0; k < 3; ++k) {
        try {
            a[k] = parse_complex(items[k]);
        } catch (const ParseError& e) {
            throw ParseError(std::string("[initial] amplitudes: ") + e.what());
        }
    }
    try {
        return StateVector(a, parse_basis(s, "basis"));
    } catch (const InvalidInput& e) {
        throw ParseError(std::string("[initial] ") + e.what());
    }
}

Scenario from_tree(const Tree& root) {
    const std::set<std::string> sections{"scenario", "grid",   "pulse_P", "pulse_S",
                                         "pulse_C",  "delta2", "delta3",  "initial"};
    for (const auto& [name, _] : root) {
        if (!sections.count(name)) throw ParseError("unknown section [" + name + "]");
    }

    const Section scenario(root, "scenario");
    scenario.allow_only({"name", "basis", "time_unit"});
    const Section grid_section(root, "grid");
    grid_section.allow_only({"t_start", "t_end", "dt", "output_stride"});

    const double stride = grid_section.number_or("output_stride", 10.0);
    if (!(stride >= 1.0) || stride != std::floor(stride)) throw ParseError("[grid] output_stride must be a positive integer");

    try {
        const TimeGrid grid(grid_section.number("t_start"), grid_section.number("t_end"), grid_section.number("dt"));
        auto p = read_pulse(root, PulseId::P);
        auto s = read_pulse(root, PulseId::S);
        auto c = read_pulse(root, PulseId::C);
        if (c.pulse->phase() != 0.0) throw ParseError("[pulse_C] phase must be 0: C is the phase reference");
        DetuningSpec detunings{read_detuning(root, "delta2"), read_detuning(root, "delta3")};

        LoopConfig cfg(*p.pulse, s.chain_breaking ? Pulse::zero() : *s.pulse, *c.pulse, std::move(detunings),
                       scenario.number_or("time_unit", 1.0));
        if (s.chain_breaking) cfg = synthesize_chain_breaking_S(cfg, grid);

        return Scenario{scenario.text_or("name", "custom"), std::move(cfg), grid, read_initial(root),
                        parse_basis(scenario, "basis"), static_cast<std::size_t>(stride)};
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    } catch (const SynthesisError& e) {
        throw ParseError(std::string("[pulse_S] ") + e.what());
    }
}

void apply_overrides(Tree& root, const std::vector<std::string>& overrides) {
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("override '" + item + "' is not of the form section.key=value");
        const auto key = trim(std::string_view(item).substr(0, eq));
        const auto value = trim(std::string_view(item).substr(eq + 1));
        if (key.find('.') == std::string::npos || !root.get_child_optional(key)) {
            throw ParseError("override '" + item + "': unknown key '" + key + "'");
        }
        root.put(key, value);
    }
}

Tree to_tree(const Scenario& sc) {
    Tree root;
    root.put("scenario.name", sc.name);
    root.put("scenario.basis", to_string(sc.basis));
    root.put("scenario.time_unit", number_text(sc.cfg.time_unit()));
    root.put("grid.t_start", number_text(sc.grid.t_start()));
    root.put("grid.t_end", number_text(sc.grid.t_end()));
    root.put("grid.dt", number_text(sc.grid.requested_dt()));
    root.put("grid.output_stride", std::to_string(sc.output_stride));

    for (auto id : {PulseId::P, PulseId::S, PulseId::C}) {
        const std::string sec = std::string("pulse_") + to_string(id) + ".";
        const auto& pulse = sc.cfg.pulse(id);
        const auto& shape = pulse.shape();
        if (const auto* g = std::get_if<GaussianTerm>(&shape)) {
            root.put(sec + "shape", "gaussian");
            root.put(sec + "peak", number_text(g->peak));
            root.put(sec + "center", number_text(g->center));
            root.put(sec + "width", number_text(g->width));
        } else if (const auto* k = std::get_if<ConstantShape>(&shape)) {
            root.put(sec + "shape", "constant");
            root.put(sec + "value", number_text(k->value));
        } else if (const auto* sum = std::get_if<GaussianSumShape>(&shape)) {
            std::vector<double> peaks, centers, widths;
            for (const auto& t : sum->terms) {
                peaks.push_back(t.peak);
                centers.push_back(t.center);
                widths.push_back(t.width);
            }
            root.put(sec + "shape", "gaussian_sum");
            root.put(sec + "peaks", join(peaks));
            root.put(sec + "centers", join(centers));
            root.put(sec + "widths", join(widths));
        } else if (const auto* tab = std::get_if<TabulatedShape>(&shape)) {
            root.put(sec + "shape", "tabulated");
            root.put(sec + "times", join(tab->times));
            root.put(sec + "values", join(tab->values));
        } else if (const auto* syn = std::get_if<SynthesizedShape>(&shape)) {
            if (syn->kind != "chain_breaking") throw InvalidInput("cannot serialize synthesized pulse '" + syn->kind + "'");
            root.put(sec + "shape", "chain_breaking");
            continue;
        }
        root.put(sec + "phase", number_text(pulse.phase()));
    }

    const std::pair<const char*, const Detuning*> detunings[] = {{"delta2", &sc.cfg.detunings().delta2},
                                                                  {"delta3", &sc.cfg.detunings().delta3}};
    for (const auto& [name, d] : detunings) {
        const std::string sec = std::string(name) + ".";
        if (const auto* k = std::get_if<ConstantDetuning>(d)) {
            root.put(sec + "shape", "constant");
            root.put(sec + "value", number_text(k->value));
        } else if (const auto* tab = std::get_if<TabulatedDetuning>(d)) {
            root.put(sec + "shape", "tabulated");
            root.put(sec + "times", join(tab->times));
            root.put(sec + "values", join(tab->values));
        } else if (const auto* f = std::get_if<PulseFollowingDetuning>(d)) {
            root.put(sec + "shape", "follow");
            root.put(sec + "pulse", to_string(f->pulse));
            root.put(sec + "factor", number_text(f->factor));
        }
    }

    root.put("initial.basis", to_string(sc.initial.basis()));
    std::string amplitudes;
    for (std::size_t k = 0; k < 3; ++k) {
        if (k) amplitudes += ", ";
        amplitudes += format_complex(sc.initial.amplitudes()[k]);
    }
    root.put("initial.amplitudes", amplitudes);
    return root;
}

Tree read_tree(std::istream& in) {
    Tree root;
    try {
        boost::property_tree::ini_parser::read_ini(in, root);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ParseError("line " + std::to_string(e.line()) + ": " + e.message());
    }
    return root;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::vector<std::string>& overrides) {
    Tree root = read_tree(in);
    apply_overrides(root, overrides);
    return from_tree(root);
}

Scenario load_scenario_file(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    try {
        return parse_scenario(in, overrides);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Scenario preset_scenario(std::string_view name, const std::vector<std::string>& overrides) {
    auto p = preset(name);
    const Scenario base{p.name, std::move(p.cfg), p.grid, p.initial, Basis::Bare, 10};
    Tree root = to_tree(base);
    apply_overrides(root, overrides);
    return from_tree(root);
}

std::string scenario_to_ini(const Scenario& scenario) {
    std::ostringstream out;
    boost::property_tree::ini_parser::write_ini(out, to_tree(scenario));
    return out.str();
}

}  // namespace loopchain
