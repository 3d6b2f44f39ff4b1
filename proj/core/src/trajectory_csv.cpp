#include "loopchain/trajectory_csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "loopchain/errors.hpp"
#include "loopchain/householder_frame.hpp"

namespace loopchain {

namespace {

void put(std::ostream& out, double x, bool first = false) {
    char buf[40];
    if (std::isnan(x)) {
        std::snprintf(buf, sizeof buf, "nan");
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", x);
    }
    if (!first) out << ',';
    out << buf;
}

}  // namespace

const std::vector<std::string>& trajectory_csv_columns() {
    static const std::vector<std::string> columns{
        "t",  "re_C1",       "im_C1",  "re_C2", "im_C2",     "re_C3",   "im_C3",   "P1",                "P2",      "P3",
        "P_spectator", "P_dark", "theta", "theta_dot", "Dtilde2", "Dtilde3", "abs_Omega_tilde_P", "abs_W23", "norm"};
    return columns;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const LoopConfig& cfg, std::size_t stride) {
    if (stride == 0) throw InvalidInput("output stride must be positive");
    const auto& columns = trajectory_csv_columns();
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
    out << '\n';

    const HouseholderFrame frame(cfg, traj.grid);
    const std::size_t last = traj.states.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        if (k % stride != 0 && k != last) continue;
        const double t = traj.grid.time(k);
        const auto snap = frame.snapshot(t);
        const Amplitudes c = traj.basis == Basis::Bare ? traj.states[k] : apply_reflection(snap.reflection, traj.states[k]);
        const auto p = populations(c);

        put(out, t, true);
        for (const auto& z : c) {
            put(out, z.real());
            put(out, z.imag());
        }
        for (double x : p) put(out, x);
        put(out, traj.spectator_population[k]);
        put(out, traj.dark_population[k]);
        put(out, snap.theta);
        put(out, snap.theta_dot);
        put(out, snap.delta2_tilde);
        put(out, snap.delta3_tilde);
        put(out, std::abs(snap.omega_p_tilde));
        put(out, std::abs(snap.wtilde(1, 2)));
        put(out, std::sqrt(p[0] + p[1] + p[2]));
        out << '\n';
    }
}

}  // namespace loopchain
