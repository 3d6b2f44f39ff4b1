#pragma once

#include <cstddef>

namespace loopchain {

/// Uniform grid t_k = t_start + k * step(), k = 0..steps().
///
/// The step actually used is (t_end - t_start) / steps() with steps() the
/// smallest count whose step does not exceed the requested dt, so the grid
/// always ends exactly at t_end.
class TimeGrid {
public:
    static constexpr double kMaxSteps = 1e7;

    TimeGrid(double t_start, double t_end, double dt);

    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    double requested_dt() const { return dt_; }
    double step() const { return step_; }
    std::size_t steps() const { return steps_; }
    std::size_t points() const { return steps_ + 1; }
    double time(std::size_t k) const;

private:
    double t_start_;
    double t_end_;
    double dt_;
    std::size_t steps_;
    double step_;
};

}  // namespace loopchain
