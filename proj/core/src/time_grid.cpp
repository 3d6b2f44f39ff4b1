#include "loopchain/time_grid.hpp"

#include <cmath>
#include <string>

#include "loopchain/errors.hpp"

namespace loopchain {

TimeGrid::TimeGrid(double t_start, double t_end, double dt) : t_start_(t_start), t_end_(t_end), dt_(dt) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(dt)) {
        throw InvalidInput("time grid bounds and step must be finite");
    }
    if (!(dt > 0.0)) throw InvalidInput("time step must be positive");
    if (!(t_end > t_start)) throw InvalidInput("grid end must lie after grid start");
    const double ratio = (t_end - t_start) / dt;
    if (ratio > kMaxSteps) {
        throw InvalidInput("grid needs " + std::to_string(ratio) + " steps; at most 1e7 are allowed");
    }
    steps_ = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
    if (steps_ == 0) steps_ = 1;
    step_ = (t_end - t_start) / static_cast<double>(steps_);
}

double TimeGrid::time(std::size_t k) const {
    if (k == steps_) return t_end_;
    return t_start_ + static_cast<double>(k) * step_;
}

}  // namespace loopchain
