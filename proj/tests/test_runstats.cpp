#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "locfree/analytic.hpp"
#include "locfree/runstats.hpp"

using namespace locfree;

namespace {

Trajectory manual_trajectory(int m, const std::vector<Event>& events) {
  Heap h(m);
  std::uint64_t sum_roof = 0;
  for (const Event& ev : events) {
    apply_event(h, ev);
    sum_roof += static_cast<std::uint64_t>(h.roof_size());
  }
  ProcessConfig config{m, 0.5, static_cast<std::int64_t>(events.size()), 0, true};
  return Trajectory{config, events, sum_roof, h.annihilation_count(), h};
}

Event add(int column) { return {static_cast<std::uint16_t>(column), 0, 0}; }

}  // namespace

TEST_CASE("run-length encoding of a short indicator sequence") {
  // Indicator of column 0 over four drops: 0, 1, 1, 0.
  const Trajectory traj = manual_trajectory(6, {add(2), add(0), add(3), add(1)});
  const auto runs = run_lengths(traj, 0);
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].value == 0);
  CHECK(runs[0].length == 1);
  CHECK(runs[0].start == RunStart::initial);
  CHECK(runs[0].termination == RunTermination::builds_upward);
  CHECK(runs[1].value == 1);
  CHECK(runs[1].length == 2);
  CHECK(runs[1].start == RunStart::short_pos);
  CHECK(runs[1].termination == RunTermination::builds_upward);
  CHECK(runs[2].value == 0);
  CHECK(runs[2].length == 1);
  CHECK(runs[2].start == RunStart::short_pos);  // one blocker above column 0
  CHECK(runs[2].termination == RunTermination::censored);
}

TEST_CASE("leading zero-run may be empty") {
  const Trajectory traj = manual_trajectory(6, {add(0), add(3)});
  const auto runs = run_lengths(traj, 0);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].value == 0);
  CHECK(runs[0].length == 0);
  CHECK(runs[0].start == RunStart::initial);
  CHECK(runs[1].value == 1);
  CHECK(runs[1].length == 2);
}

TEST_CASE("decomposition invariants on a long signed trajectory") {
  const Trajectory traj = run(ProcessConfig{8, 0.5, 60000, 21, true});
  const auto runs = run_lengths(traj, 0);
  REQUIRE(runs.size() >= 3);

  std::int64_t total = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    total += runs[i].length;
    if (i > 0) CHECK(runs[i].value == 1 - runs[i - 1].value);  // strict alternation
    if (i + 1 < runs.size()) CHECK(runs[i].termination != RunTermination::censored);
  }
  CHECK(total == traj.config.steps);
  CHECK(runs.back().termination == RunTermination::censored);

  // Boundary events agree with the termination tags.
  std::int64_t at = 0;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    at += runs[i].length;
    const Event& ev = traj.events[static_cast<std::size_t>(at)];  // first step of the next run
    if (runs[i].value == 0) {
      if (runs[i].termination == RunTermination::builds_upward) {
        CHECK(ev.kind == 0);
        CHECK(ev.column == 0);
      } else {
        CHECK(ev.kind == 1);
        CHECK((ev.column == 1 || ev.column == 7));
      }
    } else {
      if (runs[i].termination == RunTermination::builds_upward) {
        CHECK(ev.kind == 0);
        CHECK((ev.column == 1 || ev.column == 7));
      } else {
        CHECK(ev.kind == 1);
        CHECK(ev.column == 0);
      }
    }
  }

  // Both termination modes occur in a run this long.
  int backtracks = 0;
  for (const RunRecord& r : runs)
    if (r.termination == RunTermination::backtracks) ++backtracks;
  CHECK(backtracks > 0);
}

TEST_CASE("run_lengths rejects trajectories without events") {
  const Trajectory traj = run(ProcessConfig{6, 0.5, 100, 1, false});
  CHECK_THROWS_AS(run_lengths(traj, 0), std::invalid_argument);
  const Trajectory ok = run(ProcessConfig{6, 0.5, 100, 1, true});
  CHECK_THROWS_AS(run_lengths(ok, 6), std::invalid_argument);
}

TEST_CASE("short 1-run lengths match the reduced-model mean") {
  const int m = 10;
  const Trajectory traj = run(ProcessConfig{m, 0.5, 300000, 22, true});
  const auto runs = run_lengths(traj, 0);
  double sum = 0;
  std::int64_t count = 0;
  for (const RunRecord& r : runs) {
    if (r.value != 1 || r.start != RunStart::short_pos ||
        r.termination == RunTermination::censored)
      continue;
    sum += static_cast<double>(r.length);
    ++count;
  }
  REQUIRE(count > 2000);
  const double target = (std::sqrt(2.0) - 1.0) * m;
  CHECK(sum / static_cast<double>(count) == doctest::Approx(target).epsilon(0.05));
}

TEST_CASE("rho estimate lands in the published interval") {
  for (int m : {4, 10}) {
    const Estimate e = estimate_rho(m, 200000, 31);
    CHECK(e.truncation_bias_bound == 0.0);
    CHECK(e.value > 0.137457 - 3 * e.std_error);
    CHECK(e.value < 0.145985 + 3 * e.std_error);
  }
  CHECK_THROWS_AS(estimate_rho(10, 0, 1), std::invalid_argument);
}

TEST_CASE("backtracking is maximized from the short position") {
  const Estimate short_start = estimate_rho(10, 150000, 33);
  const Heap long_start = Heap::from_pieces(
      10, {{1, 0, Sign::plus}, {2, 0, Sign::plus}, {3, 1, Sign::plus}});
  REQUIRE(long_start.validate().empty());
  const Estimate longer = estimate_rho_from(long_start, 150000, 34);
  const double sigma = std::sqrt(short_start.std_error * short_start.std_error +
                                 longer.std_error * longer.std_error);
  CHECK(longer.value <= short_start.value + 3 * sigma);
}

TEST_CASE("wp estimate sits between one sixth and one fifth") {
  for (int m : {4, 10}) {
    const Estimate e = estimate_wp(m, 150000, 200000, 41);
    CHECK(e.truncation_bias_bound < 1e-6);
    CHECK(e.value > 1.0 / 6.0 - 3 * e.std_error - e.truncation_bias_bound);
    CHECK(e.value + e.truncation_bias_bound < 0.2 + 3 * e.std_error);
  }
  const Estimate e = estimate_wp(10, 150000, 200000, 41);

  SUBCASE("degenerate horizon is dominated by the tail bound") {
    const Estimate tiny = estimate_wp(10, 20000, 1, 42);
    CHECK(tiny.truncation_bias_bound > 0.15);
  }

  SUBCASE("the bound is uniform over initial heaps") {
    const Heap two_box = make_config(ConfigChain::k_chain(2), 10);
    const Piece tracked = *two_box.top(1);
    const Estimate e2 = estimate_wp_from(two_box, tracked, 150000, 200000, 43);
    CHECK(e2.value > 1.0 / 6.0 - 3 * e2.std_error - e2.truncation_bias_bound);
    CHECK(e2.value + e2.truncation_bias_bound < 0.2 + 3 * e2.std_error);

    // A grown heap, tracking one of its roof pieces.
    SplitMix64 grow(44);
    Heap big(10);
    for (int i = 0; i < 400; ++i) {
      const std::uint64_t r = grow.below(20);
      big.drop(static_cast<int>(r >> 1), (r & 1) ? Sign::minus : Sign::plus);
    }
    REQUIRE(big.roof_size() > 0);
    const Piece roof_piece = big.roof().front();
    const Estimate e3 = estimate_wp_from(big, roof_piece, 150000, 200000, 45);
    CHECK(e3.value > 1.0 / 6.0 - 3 * e3.std_error - e3.truncation_bias_bound);
    CHECK(e3.value + e3.truncation_bias_bound < 0.2 + 3 * e3.std_error);
  }

  SUBCASE("the tracked piece must start in the roof") {
    const Heap two_box = make_config(ConfigChain::k_chain(2), 10);
    CHECK_THROWS_AS(estimate_wp_from(two_box, *two_box.top(0), 10, 10, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("tilde experiments") {
  SUBCASE("2-chain probability") {
    const Estimate e = estimate_tilde_p(ConfigChain::k_chain(2), 10, 200000, 51);
    CHECK(e.value > 0.180115 - 3 * e.std_error);
    CHECK(e.value < 0.1806355 + 3 * e.std_error);
  }
  SUBCASE("3-chain probability") {
    const Estimate e = estimate_tilde_p(ConfigChain::k_chain(3), 10, 200000, 52);
    CHECK(e.value > 0.133939 - 3 * e.std_error);
    CHECK(e.value < 0.141677 + 3 * e.std_error);
  }
  SUBCASE("at m = 4 the 4-chain equals the 2-chain") {
    const Estimate four = estimate_tilde_p(ConfigChain::k_chain(4), 4, 200000, 53);
    const Estimate two = estimate_tilde_p(ConfigChain::k_chain(2), 4, 200000, 54);
    const double sigma =
        std::sqrt(four.std_error * four.std_error + two.std_error * two.std_error);
    CHECK(std::fabs(four.value - two.value) < 3 * sigma);
  }
  SUBCASE("empty chain waits a geometric time with mean m") {
    const Estimate e = estimate_tilde_e(ConfigChain(), 10, 200000, 55);
    CHECK(e.value == doctest::Approx(10.0).epsilon(0.01));
  }
  SUBCASE("mean stopping time satisfies E~ = (1 - P~) m") {
    const Estimate p = estimate_tilde_p(ConfigChain::k_chain(2), 10, 200000, 56);
    const Estimate t = estimate_tilde_e(ConfigChain::k_chain(2), 10, 200000, 57);
    const double sigma =
        std::sqrt(t.std_error * t.std_error + 100.0 * p.std_error * p.std_error);
    CHECK(std::fabs(t.value - (1.0 - p.value) * 10.0) < 3 * sigma);
  }
  SUBCASE("the 3-chain mean matches the iterated identity") {
    const Estimate p = estimate_tilde_p(ConfigChain::k_chain(3), 10, 200000, 58);
    const Estimate t = estimate_tilde_e(ConfigChain::k_chain(3), 10, 200000, 59);
    const double sigma =
        std::sqrt(t.std_error * t.std_error + 100.0 * p.std_error * p.std_error);
    CHECK(std::fabs(t.value - (1.0 - p.value) * 10.0) < 3 * sigma);
  }
  SUBCASE("mean stopping times land in the analytic intervals") {
    const TildePSystem sys = tilde_p_system(10);
    const Estimate t2 = estimate_tilde_e(ConfigChain::k_chain(2), 10, 200000, 60);
    const Interval e2 = tilde_e(sys.chain2, 10).widened(3 * t2.std_error);
    CHECK(e2.contains(t2.value));
    const Estimate t3 = estimate_tilde_e(ConfigChain::k_chain(3), 10, 200000, 61);
    const Interval e3 = tilde_e(sys.chain3, 10).widened(3 * t3.std_error);
    CHECK(e3.contains(t3.value));
  }
}

TEST_CASE("coupling agreement") {
  const Heap empty(6);
  const Heap two_box = make_config(ConfigChain::k_chain(2), 6);
  SUBCASE("equal initial heaps always agree") {
    CHECK(coupling_agreement(6, two_box, two_box, 200, 2, 50, 61) == 1.0);
  }
  SUBCASE("distinct roofs at n = 0") {
    CHECK(coupling_agreement(6, empty, two_box, 0, 1, 50, 62) == 0.0);
  }
  SUBCASE("mismatched m") {
    CHECK_THROWS_AS(coupling_agreement(8, empty, two_box, 10, 1, 10, 63),
                    std::invalid_argument);
  }
  SUBCASE("long horizons agree at level 1") {
    CHECK(coupling_agreement(6, empty, two_box, 5000, 1, 200, 64) >= 0.99);
  }
}
