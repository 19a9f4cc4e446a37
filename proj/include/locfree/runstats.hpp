#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locfree/config_chain.hpp"
#include "locfree/heap.hpp"
#include "locfree/process.hpp"

namespace locfree {

enum class RunTermination : std::uint8_t {
  builds_upward,  // ended by a piece falling in the column (0-run) or in an
                  // adjacent column (1-run)
  backtracks,     // ended by annihilation of the blocking pieces
  censored        // the trajectory ended first
};

enum class RunStart : std::uint8_t {
  short_pos,  // 1-run: no piece directly below the roof piece;
              // 0-run: exactly one piece blocking the column's highest piece
  long_pos,
  initial     // the distinguished leading 0-run, and 0-runs beginning with an
              // empty column
};

struct RunRecord {
  int value;  // 0 or 1
  std::int64_t length;
  RunTermination termination;
  RunStart start;
};

const char* to_string(RunTermination t);
const char* to_string(RunStart s);

// Run-length decomposition of the roof indicator of `column`. The leading
// 0-run is always emitted and may have length zero. Requires a trajectory
// recorded at full resolution.
std::vector<RunRecord> run_lengths(const Trajectory& traj, int column);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  double truncation_bias_bound = 0.0;  // 0 when the experiment stops exactly
};

// Probability that a 0-run started from the two-box configuration backtracks
// (the blocking piece is annihilated before any piece falls in column 0).
// Exact stopping, no truncation bias.
Estimate estimate_rho(int m, std::int64_t samples, std::uint64_t seed);
// Same experiment from an arbitrary starting heap; the tracked piece is the
// highest piece in column 0 of `init`.
Estimate estimate_rho_from(const Heap& init, std::int64_t samples, std::uint64_t seed);

// Probability that a given roof piece is ever annihilated. A replica stops
// when the piece is annihilated, when more than `cone_stop` pieces block it,
// or at `horizon` steps. Tail bound per truncated replica: annihilating the
// tracked piece requires every currently blocking piece to be annihilated
// first, and each such annihilation has probability < 1/5 uniformly over
// states (see analytic::wp_bounds), so by sequential conditioning the
// remaining probability is at most (1/5)^blockers; unresolved-at-horizon
// replicas use the one-factor bound 1/5. truncation_bias_bound accumulates
// these per-replica tails.
Estimate estimate_wp(int m, std::int64_t samples, std::int64_t horizon,
                     std::uint64_t seed, int cone_stop = 12);
Estimate estimate_wp_from(const Heap& init, const Piece& tracked,
                          std::int64_t samples, std::int64_t horizon,
                          std::uint64_t seed, int cone_stop = 12);

// Probability that the chain's final piece is annihilated before a piece
// falls in column 0, starting from the minimal realization of `chain`.
// Exact stopping.
Estimate estimate_tilde_p(const ConfigChain& chain, int m, std::int64_t samples,
                          std::uint64_t seed);
// Mean number of steps until either event of the same experiment.
Estimate estimate_tilde_e(const ConfigChain& chain, int m, std::int64_t samples,
                          std::uint64_t seed);

// Runs the two heaps under the synchronous coupling (same column every step;
// signs matched so top-of-roof landings annihilate together) and returns the
// fraction of replicas whose top `level` roof levels agree after n steps.
double coupling_agreement(int m, const Heap& init1, const Heap& init2,
                          std::int64_t n, int level, int reps, std::uint64_t seed);

// Structured-text record: name, value, std_error, samples, bias bound.
std::string estimate_text(const std::string& name, const Estimate& e);

}  // namespace locfree
