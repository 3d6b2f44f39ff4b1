#pragma once

// Trajectory CSV: one header line, then one row per output stride (plus the
// final grid point). Amplitudes and P1..P3 are always bare-basis values;
// a Householder-basis trajectory is mapped back through R(t) first. Numbers
// are printed with 17 significant digits, NaN as "nan".

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "loopchain/loop_model.hpp"
#include "loopchain/propagator.hpp"

namespace loopchain {

/// t, re_C1, im_C1, re_C2, im_C2, re_C3, im_C3, P1, P2, P3, P_spectator,
/// P_dark, theta, theta_dot, Dtilde2, Dtilde3, abs_Omega_tilde_P, abs_W23, norm
const std::vector<std::string>& trajectory_csv_columns();

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const LoopConfig& cfg, std::size_t stride = 10);

}  // namespace loopchain
