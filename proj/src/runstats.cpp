#include "locfree/runstats.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace locfree {

const char* to_string(RunTermination t) {
  switch (t) {
    case RunTermination::builds_upward: return "builds_upward";
    case RunTermination::backtracks: return "backtracks";
    case RunTermination::censored: return "censored";
  }
  return "?";
}

const char* to_string(RunStart s) {
  switch (s) {
    case RunStart::short_pos: return "short";
    case RunStart::long_pos: return "long";
    case RunStart::initial: return "initial";
  }
  return "?";
}

namespace {

bool adjacent(int a, int b, int m) {
  const int d = ((a - b) % m + m) % m;
  return d == 1 || d == m - 1;
}

RunStart classify_start(const Heap& heap, int column, int value) {
  if (value == 1) {
    // Short: nothing directly below the roof piece in this column.
    const int h = heap.top_height(column);
    return heap.has_piece(column, h - 1) ? RunStart::long_pos : RunStart::short_pos;
  }
  if (heap.top_height(column) == 0) return RunStart::initial;
  const int blockers = heap.blocker_count(column, 2);
  if (blockers == 0)
    throw std::logic_error("0-run start with an unblocked column top");
  return blockers == 1 ? RunStart::short_pos : RunStart::long_pos;
}

RunTermination classify_end(int closed_value, const Event& ev, int column, int m) {
  if (closed_value == 0) {
    if (ev.kind == 0 && ev.column == column) return RunTermination::builds_upward;
    if (ev.kind == 1 && adjacent(ev.column, column, m)) return RunTermination::backtracks;
  } else {
    if (ev.kind == 0 && adjacent(ev.column, column, m)) return RunTermination::builds_upward;
    if (ev.kind == 1 && ev.column == column) return RunTermination::backtracks;
  }
  throw std::logic_error("roof indicator flipped without a qualifying event");
}

}  // namespace

std::vector<RunRecord> run_lengths(const Trajectory& traj, int column) {
  const int m = traj.config.m;
  if (column < 0 || column >= m) throw std::invalid_argument("column out of range");
  if (traj.config.steps == 0) return {};
  if (!traj.config.record_events ||
      static_cast<std::int64_t>(traj.events.size()) != traj.config.steps)
    throw std::invalid_argument("run decomposition needs a full-resolution trajectory");

  std::vector<RunRecord> out;
  Heap heap(m);
  RunRecord current{0, 0, RunTermination::censored, RunStart::initial};
  for (const Event& ev : traj.events) {
    apply_event(heap, ev);
    const int x = heap.is_roof(column) ? 1 : 0;
    if (x == current.value) {
      ++current.length;
      continue;
    }
    current.termination = classify_end(current.value, ev, column, m);
    out.push_back(current);
    current = RunRecord{x, 1, RunTermination::censored, classify_start(heap, column, x)};
  }
  current.termination = RunTermination::censored;
  out.push_back(current);
  return out;
}

Estimate estimate_rho(int m, std::int64_t samples, std::uint64_t seed) {
  return estimate_rho_from(make_config(ConfigChain::k_chain(2), m), samples, seed);
}

Estimate estimate_rho_from(const Heap& init, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const int m = init.columns();
  std::int64_t backtracked = 0;
  for (std::int64_t rep = 0; rep < samples; ++rep) {
    SplitMix64 rng = SplitMix64::for_replica(seed, static_cast<std::uint64_t>(rep));
    Heap heap = init;
    while (true) {
      const std::uint64_t r = rng.below(2ULL * static_cast<std::uint64_t>(m));
      const int column = static_cast<int>(r >> 1);
      if (column == 0) break;  // the 0-run builds upward
      const Sign sign = (r & 1) ? Sign::minus : Sign::plus;
      const DropEvent ev = heap.drop(column, sign);
      if (ev.kind == DropEvent::Kind::annihilated && heap.is_roof(0)) {
        ++backtracked;  // every blocker is gone
        break;
      }
    }
  }
  const double p = static_cast<double>(backtracked) / static_cast<double>(samples);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return {p, se, samples, 0.0};
}

Estimate estimate_wp(int m, std::int64_t samples, std::int64_t horizon,
                     std::uint64_t seed, int cone_stop) {
  Heap init(m);
  const Piece tracked = init.add_piece(0, Sign::plus);
  return estimate_wp_from(init, tracked, samples, horizon, seed, cone_stop);
}

Estimate estimate_wp_from(const Heap& init, const Piece& tracked,
                          std::int64_t samples, std::int64_t horizon,
                          std::uint64_t seed, int cone_stop) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (cone_stop < 1) throw std::invalid_argument("cone_stop must be >= 1");
  if (!init.is_roof(tracked.column) || !(init.top(tracked.column) == tracked))
    throw std::invalid_argument("tracked piece must be a roof piece of the initial heap");
  const int m = init.columns();
  constexpr int kConeCheckEvery = 8;
  std::int64_t annihilated = 0;
  std::int64_t stopped_buried = 0;
  std::int64_t stopped_horizon = 0;
  for (std::int64_t rep = 0; rep < samples; ++rep) {
    SplitMix64 rng = SplitMix64::for_replica(seed, static_cast<std::uint64_t>(rep));
    Heap heap = init;
    bool resolved = false;
    for (std::int64_t step = 1; step <= horizon; ++step) {
      const std::uint64_t r = rng.below(2ULL * static_cast<std::uint64_t>(m));
      const DropEvent ev =
          heap.drop(static_cast<int>(r >> 1), (r & 1) ? Sign::minus : Sign::plus);
      if (ev.kind == DropEvent::Kind::annihilated && ev.piece == tracked) {
        ++annihilated;
        resolved = true;
        break;
      }
      if (step % kConeCheckEvery == 0 && heap.cone_size(tracked, cone_stop) >= cone_stop) {
        ++stopped_buried;
        resolved = true;
        break;
      }
    }
    if (!resolved) ++stopped_horizon;
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(annihilated) / n;
  const double se = std::sqrt(p * (1.0 - p) / n);
  const double bias = (static_cast<double>(stopped_buried) * std::pow(0.2, cone_stop) +
                       static_cast<double>(stopped_horizon) * 0.2) / n;
  return {p, se, samples, bias};
}

namespace {

struct TildeOutcome {
  std::int64_t hits = 0;       // distinguished piece annihilated first
  double sum_steps = 0.0;
  double sum_steps_sq = 0.0;
};

TildeOutcome tilde_experiment(const ConfigChain& chain, int m, std::int64_t samples,
                              std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const auto [init, pieces] = realize_config(chain, m);
  const std::optional<Piece> distinguished =
      chain.empty() ? std::nullopt : std::optional<Piece>(pieces.back());
  TildeOutcome out;
  for (std::int64_t rep = 0; rep < samples; ++rep) {
    SplitMix64 rng = SplitMix64::for_replica(seed, static_cast<std::uint64_t>(rep));
    Heap heap = init;
    std::int64_t steps = 0;
    while (true) {
      const std::uint64_t r = rng.below(2ULL * static_cast<std::uint64_t>(m));
      const int column = static_cast<int>(r >> 1);
      ++steps;
      if (column == 0) break;
      const DropEvent ev = heap.drop(column, (r & 1) ? Sign::minus : Sign::plus);
      if (ev.kind == DropEvent::Kind::annihilated && distinguished &&
          ev.piece == *distinguished) {
        ++out.hits;
        break;
      }
    }
    out.sum_steps += static_cast<double>(steps);
    out.sum_steps_sq += static_cast<double>(steps) * static_cast<double>(steps);
  }
  return out;
}

}  // namespace

Estimate estimate_tilde_p(const ConfigChain& chain, int m, std::int64_t samples,
                          std::uint64_t seed) {
  const TildeOutcome out = tilde_experiment(chain, m, samples, seed);
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(out.hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), samples, 0.0};
}

Estimate estimate_tilde_e(const ConfigChain& chain, int m, std::int64_t samples,
                          std::uint64_t seed) {
  const TildeOutcome out = tilde_experiment(chain, m, samples, seed);
  const double n = static_cast<double>(samples);
  const double mean = out.sum_steps / n;
  const double var = std::max(0.0, out.sum_steps_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), samples, 0.0};
}

namespace {

bool top_levels_agree(const Heap& a, const Heap& b, int level) {
  const RoofLevels la = a.top_levels(level);
  const RoofLevels lb = b.top_levels(level);
  for (int i = 0; i < level; ++i) {
    const bool ea = i >= static_cast<int>(la.levels.size());
    const bool eb = i >= static_cast<int>(lb.levels.size());
    if (ea != eb) return false;
    if (ea) continue;
    if (la.levels[static_cast<std::size_t>(i)] != lb.levels[static_cast<std::size_t>(i)])
      return false;
  }
  return true;
}

}  // namespace

double coupling_agreement(int m, const Heap& init1, const Heap& init2,
                          std::int64_t n, int level, int reps, std::uint64_t seed) {
  if (init1.columns() != m || init2.columns() != m)
    throw std::invalid_argument("initial heaps must share m");
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  int agree = 0;
  for (int rep = 0; rep < reps; ++rep) {
    SplitMix64 rng = SplitMix64::for_replica(seed, static_cast<std::uint64_t>(rep));
    Heap h1 = init1;
    Heap h2 = init2;
    for (std::int64_t step = 0; step < n; ++step) {
      const std::uint64_t r = rng.below(2ULL * static_cast<std::uint64_t>(m));
      const int column = static_cast<int>(r >> 1);
      const Sign s1 = (r & 1) ? Sign::minus : Sign::plus;
      Sign s2 = s1;
      if (h1.annihilation_eligible(column) && h2.annihilation_eligible(column)) {
        // Match the annihilation events.
        const bool annihilates = h1.top(column)->sign != s1;
        s2 = annihilates ? opposite(h2.top(column)->sign) : h2.top(column)->sign;
      }
      h1.drop(column, s1);
      h2.drop(column, s2);
    }
    if (top_levels_agree(h1, h2, level)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(reps);
}

std::string estimate_text(const std::string& name, const Estimate& e) {
  std::ostringstream os;
  os.precision(10);
  os << "name = " << name << "\n";
  os << "value = " << e.value << "\n";
  os << "std_error = " << e.std_error << "\n";
  os << "samples = " << e.samples << "\n";
  os << "truncation_bias_bound = " << e.truncation_bias_bound << "\n";
  return os.str();
}

}  // namespace locfree
