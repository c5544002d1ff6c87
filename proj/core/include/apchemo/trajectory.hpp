#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>

#include "apchemo/errors.hpp"

namespace apchemo {

struct RunOptions {
  double dt = 1e-4;
  double t_end = 0.0;
  std::size_t stride = 1;  ///< snapshot every stride steps (and always at the last step)
};

/// Number of fixed steps reaching t_end; t_end must be a multiple of dt to 1e-9.
inline std::size_t step_count(const RunOptions& o) {
  if (!(o.dt > 0.0)) throw InvalidArgument("run options: dt must be > 0");
  if (!(o.t_end >= 0.0)) throw InvalidArgument("run options: t_end must be >= 0");
  if (o.stride < 1) throw InvalidArgument("run options: stride must be >= 1");
  const double steps = o.t_end / o.dt;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw InvalidArgument("run options: t_end is not a multiple of dt");
  }
  return static_cast<std::size_t>(rounded);
}

template <class State>
using SnapshotSink = std::function<void(std::size_t step, const State&)>;

/// Advances `state` with `step(state)` and reports snapshots to `sink`; after
/// step i the time is reset to t0 + i dt so it does not accumulate round-off.
/// Solver failures are rethrown as RunAborted carrying the failing step index.
template <class State, class Step>
State run_trajectory(State state, const RunOptions& options, Step&& step,
                     const SnapshotSink<State>& sink) {
  const std::size_t n = step_count(options);
  const double t0 = state.t;
  if (sink) sink(0, state);
  for (std::size_t i = 1; i <= n; ++i) {
    try {
      step(state);
    } catch (const RunAborted&) {
      throw;
    } catch (const Error& e) {
      throw RunAborted(i, e.what());
    }
    state.t = t0 + static_cast<double>(i) * options.dt;
    if (sink && (i % options.stride == 0 || i == n)) sink(i, state);
  }
  return state;
}

}  // namespace apchemo
