#include "locfree/process.hpp"

#include <ostream>
#include <stdexcept>

namespace locfree {

Trajectory run(const ProcessConfig& config) {
  return run_observed(config, detail::no_observer);
}

DriftEstimate drift_estimate(const Trajectory& traj) {
  const auto steps = traj.config.steps;
  if (steps < 1) throw std::invalid_argument("drift needs at least one step");
  const double zeta = static_cast<double>(traj.final_heap.size()) / static_cast<double>(steps);
  const double roof_frac = traj.mean_roof() / static_cast<double>(traj.config.m);
  return {zeta, 1.0 - roof_frac};
}

void apply_event(Heap& heap, const Event& ev) {
  if (ev.kind == 0)
    heap.add_piece(ev.column, static_cast<Sign>(ev.sign));
  else
    heap.annihilate_top(ev.column);
}

std::int64_t reduced_walk_sample(int m, std::optional<int> start, SplitMix64& rng) {
  if (m < 4) throw std::invalid_argument("reduced walk needs m >= 4");
  if (start && *start < 1) throw std::invalid_argument("walk start must be positive");
  std::int64_t t = 0;
  std::int64_t pos = start ? *start : -1;  // -1 marks the infinite tower
  while (true) {
    // Wait for a landing in one of the three relevant columns.
    std::uint64_t r;
    do {
      ++t;
      r = rng.below(static_cast<std::uint64_t>(m));
    } while (r >= 3);
    if (r != 1) return t;  // adjacent column: the run ends
    // Column 0: the tower moves by +-1.
    const std::int64_t delta = rng.below(2) ? 1 : -1;
    if (pos > 0) {
      pos += delta;
      if (pos == 0) return t;
    }
  }
}

std::pair<double, double> two_state_stationary(int m) {
  if (m < 4) throw std::invalid_argument("chain needs m >= 4");
  const double p10 = 2.0 / m;
  const double p01 = 1.0 / m;
  const double pi1 = p01 / (p01 + p10);
  return {1.0 - pi1, pi1};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (!traj.config.record_events && traj.config.steps > 0)
    throw std::invalid_argument("trajectory was not recorded with events");
  os << "step,event,column,sign,heap_size,roof_size\n";
  Heap heap(traj.config.m);
  std::int64_t step = 0;
  for (const Event& ev : traj.events) {
    apply_event(heap, ev);
    ++step;
    os << step << ',' << (ev.kind ? "annihilate" : "add") << ',' << ev.column << ','
       << sign_char(static_cast<Sign>(ev.sign)) << ',' << heap.size() << ','
       << heap.roof_size() << '\n';
  }
}

}  // namespace locfree
