#pragma once

#include <string>
#include <vector>

namespace locfree {

struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return lo <= x && x <= hi; }
  Interval widened(double delta) const { return {lo - delta, hi + delta}; }
};

// Closed forms for the conditional 1-run means: E(S) for a short start,
// E(S*) and E(S~) for its adjacent-first / own-column-first conditionals,
// E(L) for the infinite-tower start, and the unconditional cap m/2.
struct RunConstants {
  double e_s;
  double e_sstar;
  double e_stilde;
  double e_l;
  double e_ones_cap;
};

RunConstants e_run_constants(int m);

// Partial sum of 1 + sum_k C(2k,k) (1/4)^k [(1/3)^(2k-1) + (1/3)^(2k)],
// the expected number of walk events of the reduced model from a short
// start; converges to 3(sqrt(2)-1).
double n_wedge_t(int terms);

// P(T > 2k) = C(2k,k) (1/4)^k for the absorption time of the embedded
// symmetric walk started from 1.
double reduced_hitting_tail(int k);

// Two-sided bounds for rho, the probability that a 0-run started from the
// two-box configuration backtracks: [40/291, 20/137].
Interval rho_bounds();

// Two-sided bounds (1/6, 1/5) for the probability that a roof piece is ever
// annihilated, from the fixed point of p = 1/6 + (5/6) p^2.
Interval wp_bounds();

// Interval system for the before-column-0 annihilation probabilities of the
// chain configurations: the 4-piece unknowns are sandwiched between one
// tenth and one fifth of the 3-chain value, the resulting quadratics are
// solved at both ends, and the 2-chain quadratic is solved on top of them.
// chain4 equals chain2 when m == 4 (the chain wraps next to column 0) and
// carries the 3-chain interval otherwise.
struct TildePSystem {
  Interval chain2;
  Interval chain3;
  Interval chain4;
};

TildePSystem tilde_p_system(int m);

// E~ = (1 - P~) m, as an interval map.
Interval tilde_e(Interval chain_p, int m);

// The seven per-m lower bounds substituted into the 0-run expectation
// identity, keyed by starting configuration.
struct EZeroLadder {
  double tower3;        // {+1{0{0}}}   = 1 - r^3
  double branch_tower;  // {-1,+1{0}}   = 1 - r^2
  double tower2_chain;  // {+1{0{+1}}}  = 1 - q r^2
  double branch_chain;  // {-1,+1{+1}}  = 1 - q r
  double zigzag;        // {+1{+1{-1}}} = 1 - q r^2
  double chain4;        // {+1{+1{+1}}} = 1 - s q r, s worst over m >= 4
  double chain3_tower;  // {+1{+1{0}}}  = 1 - q^2 r
};

EZeroLadder e_zero_ladder();

// Bounds on the expected 0-run length from the two-box start, in absolute
// units (multiples of m): [0.85453 m, 0.86255 m] up to rounding.
Interval e_zero_bounds(int m);

// Stationary distribution of the three-state chain on {s*, s~, l}.
struct XiDistribution {
  double pi_sstar;
  double pi_stilde;
  double pi_ell;
};

XiDistribution xi_stationary(double rho);

// Almost-sure bound for the time-averaged 1-run length divided by m:
// max over the rho interval endpoints of
//   pi_s* E(S*) + pi_s~ E(S~) + pi_l E(L), per m. Reproduces 0.41884.
double ones_time_avg_bound(Interval rho, int m);

// ones / (ones + zeros_lower) with the computed constants; <= 0.32893.
double theorem_bound();

struct BoundsRow {
  std::string name;
  double reference;  // the published constant
  double computed;
};

std::vector<BoundsRow> bounds_report();
std::string bounds_report_text();

}  // namespace locfree
