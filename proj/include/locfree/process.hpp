#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "locfree/heap.hpp"
#include "locfree/rng.hpp"

namespace locfree {

// The growth process: at each step a column (and a sign) is chosen uniformly
// over the 2m possibilities. When the piece lands directly on the column's
// top, it annihilates with probability p, else it stacks. p = 1/2 is the
// signed process (the annihilation event is exactly "opposite drawn sign"),
// p = 0 never annihilates, p = 1 always does.
struct ProcessConfig {
  int m = 10;
  double p = 0.5;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
  bool record_events = true;
};

struct Event {
  std::uint16_t column;
  std::uint8_t kind;  // 0 = added, 1 = annihilated
  std::uint8_t sign;  // sign of the added piece / the victim
};

struct Trajectory {
  ProcessConfig config;
  std::vector<Event> events;           // empty when record_events is false
  std::uint64_t sum_roof_after = 0;    // sum over steps of #T after the drop
  std::int64_t annihilations = 0;
  Heap final_heap;

  double mean_roof() const {
    return config.steps == 0 ? 0.0
                             : static_cast<double>(sum_roof_after) /
                                   static_cast<double>(config.steps);
  }
};

struct DriftEstimate {
  double zeta_hat;        // final heap size / steps
  double one_minus_roof;  // 1 - (time-averaged #T)/m
};

namespace detail {
inline void no_observer(std::int64_t, const Heap&, const DropEvent&) {}
}

// Runs the process; observe(step, heap_after, event) is called once per step.
template <class Observer>
Trajectory run_observed(const ProcessConfig& config, Observer&& observe) {
  if (config.p < 0.0 || config.p > 1.0)
    throw std::invalid_argument("annihilation probability must lie in [0, 1]");
  if (config.steps < 0) throw std::invalid_argument("steps must be >= 0");
  Heap heap(config.m);
  SplitMix64 rng(config.seed);
  Trajectory traj{config, {}, 0, 0, heap};
  if (config.record_events) traj.events.reserve(static_cast<std::size_t>(config.steps));
  const bool signed_process = config.p == 0.5;
  for (std::int64_t step = 1; step <= config.steps; ++step) {
    const std::uint64_t r = rng.below(2ULL * static_cast<std::uint64_t>(config.m));
    const int column = static_cast<int>(r >> 1);
    const Sign sign = (r & 1) ? Sign::minus : Sign::plus;
    DropEvent ev;
    if (signed_process) {
      ev = heap.drop(column, sign);
    } else {
      bool coin = false;
      if (heap.annihilation_eligible(column)) {
        if (config.p >= 1.0)
          coin = true;
        else if (config.p > 0.0)
          coin = rng.unit_real() < config.p;
      }
      ev = heap.drop_coin(column, sign, coin);
    }
    traj.sum_roof_after += static_cast<std::uint64_t>(heap.roof_size());
    if (config.record_events)
      traj.events.push_back(Event{static_cast<std::uint16_t>(column),
                                  static_cast<std::uint8_t>(ev.kind == DropEvent::Kind::annihilated),
                                  static_cast<std::uint8_t>(ev.piece.sign)});
    observe(step, heap, ev);
  }
  traj.annihilations = heap.annihilation_count();
  traj.final_heap = std::move(heap);
  return traj;
}

Trajectory run(const ProcessConfig& config);

// Throws when the trajectory is empty (steps must be >= 1).
DriftEstimate drift_estimate(const Trajectory& traj);

// Replays a recorded event onto a heap.
void apply_event(Heap& heap, const Event& ev);

// The reduced single-column model: between walk events wait geometric times
// with success probability 3/m; a walk event stops the run with probability
// 2/3 (an adjacent-column landing) and otherwise moves the tower height by
// +-1, absorbing at 0. Returns the total elapsed time. start == nullopt means
// the walk starts from an infinite tower and never absorbs.
std::int64_t reduced_walk_sample(int m, std::optional<int> start, SplitMix64& rng);

// Exact stationary distribution (pi0, pi1) of the single-column roof chain of
// the unsigned process, with transition rates p10 = 2/m and p01 = 1/m.
std::pair<double, double> two_state_stationary(int m);

// Delimited export: step,event,column,sign,heap_size,roof_size. Requires a
// trajectory recorded with events.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace locfree
