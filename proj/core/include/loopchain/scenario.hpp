#pragma once

// Scenario config files (INI). Schema, one section per block:
//
//   [scenario]  name, basis (bare|householder), time_unit
//   [grid]      t_start, t_end, dt, output_stride
//   [pulse_P] [pulse_S] [pulse_C]
//               shape = gaussian     -> peak, center, width, phase
//               shape = constant     -> value, phase
//               shape = gaussian_sum -> peaks, centers, widths (comma lists), phase
//               shape = tabulated    -> times, values (comma lists), phase
//               shape = chain_breaking (pulse_S only; synthesized, no other keys)
//   [delta2] [delta3]
//               shape = constant     -> value
//               shape = tabulated    -> times, values
//               shape = follow       -> pulse (P|S|C), factor
//   [initial]   basis (bare|householder), amplitudes (three a+bi entries)
//
// pulse_C must have phase 0. Overrides use dotted keys: "grid.dt=0.0005".

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "loopchain/householder_frame.hpp"
#include "loopchain/loop_model.hpp"
#include "loopchain/propagator.hpp"
#include "loopchain/time_grid.hpp"

namespace loopchain {

struct Scenario {
    std::string name;
    LoopConfig cfg;
    TimeGrid grid;
    StateVector initial;
    Basis basis = Basis::Bare;
    std::size_t output_stride = 10;
};

/// Parses INI text, applying "section.key=value" overrides first. Every
/// override must name a key present in the text. Throws ParseError with
/// line or key diagnostics.
Scenario parse_scenario(std::istream& in, const std::vector<std::string>& overrides = {});
Scenario load_scenario_file(const std::string& path, const std::vector<std::string>& overrides = {});

/// A named preset with overrides applied to its serialized form.
Scenario preset_scenario(std::string_view name, const std::vector<std::string>& overrides = {});

/// INI text that parse_scenario maps back to the same scenario.
std::string scenario_to_ini(const Scenario& scenario);

}  // namespace loopchain
