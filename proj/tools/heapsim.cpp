// heapsim: simulate random heaps on the cyclic lattice, estimate run
// statistics, normalize words over the locally free group, and print the
// analytic bound report. Every output echoes the resolved configuration so
// the run can be reproduced from the file alone.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "locfree/analytic.hpp"
#include "locfree/heap.hpp"
#include "locfree/process.hpp"
#include "locfree/runstats.hpp"
#include "locfree/words.hpp"

namespace {

using namespace locfree;

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open output path: " + path);
    os = file.get();
  }
  std::ostream& stream() { return *os; }
};

std::string config_echo(const std::string& subcommand,
                        const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  os << "subcommand = " << subcommand << "\n";
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Splits `samples` across replicas with substream seeds and merges the
// tallies; merging is associative so the result does not depend on thread
// scheduling.
Estimate replicated(std::int64_t samples, int replicas, std::uint64_t seed,
                    const std::function<Estimate(std::int64_t, std::uint64_t)>& runner) {
  if (replicas <= 1) return runner(samples, seed);
  std::vector<Estimate> parts(static_cast<std::size_t>(replicas));
  std::vector<std::thread> threads;
  const std::int64_t base = samples / replicas;
  std::int64_t extra = samples % replicas;
  std::int64_t assigned = 0;
  std::vector<std::int64_t> counts;
  for (int i = 0; i < replicas; ++i) {
    std::int64_t n = base + (i < extra ? 1 : 0);
    counts.push_back(n);
    assigned += n;
  }
  (void)assigned;
  for (int i = 0; i < replicas; ++i) {
    threads.emplace_back([&, i] {
      if (counts[static_cast<std::size_t>(i)] > 0)
        parts[static_cast<std::size_t>(i)] =
            runner(counts[static_cast<std::size_t>(i)], seed + static_cast<std::uint64_t>(i));
    });
  }
  for (auto& t : threads) t.join();
  double sum = 0.0, sum_sq = 0.0, bias = 0.0;
  std::int64_t n_total = 0;
  for (const Estimate& e : parts) {
    if (e.samples == 0) continue;
    const double n = static_cast<double>(e.samples);
    sum += e.value * n;
    // se^2 = (E[x^2] - mean^2)/n  =>  sum of squares = n (n se^2 + mean^2).
    sum_sq += n * (n * e.std_error * e.std_error + e.value * e.value);
    bias += e.truncation_bias_bound * n;
    n_total += e.samples;
  }
  const double n = static_cast<double>(n_total);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), n_total, bias / n};
}

Heap load_heap_or(const std::string& path, const Heap& fallback) {
  if (path.empty()) return fallback;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read heap snapshot: " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return Heap::from_text(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random heaps on Z_m x Z+: simulation, run statistics and exact bounds"};
  app.require_subcommand(1);

  int m = 10;
  double p = 0.5;
  std::int64_t steps = 1000000;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 0;
  int column = 0;
  int replicas = 1;
  std::string chain_text = "2-chain";
  std::string output_path;
  std::string format = "structured-text";
  std::int64_t horizon = 200000;
  int cone_stop = 12;
  std::int64_t couple_n = 10000;
  int level = 1;
  int reps = 1000;
  std::string init1_path, init2_path;
  std::string input_path;
  std::string trajectory_path;
  std::int64_t flush_every = 1000000;

  auto add_common = [&](CLI::App* sub, bool with_p) {
    sub->add_option("--m", m, "number of columns (>= 4)");
    if (with_p) sub->add_option("--p", p, "annihilation probability in [0, 1]");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--output", output_path, "output path (default stdout)");
  };

  auto* sim = app.add_subcommand("simulate", "run the growth process and report a summary");
  add_common(sim, true);
  sim->add_option("--steps", steps, "number of drops");
  sim->add_option("--trajectory", trajectory_path, "write per-step CSV trajectory here");
  sim->add_option("--flush-every", flush_every, "emit a partial summary every k steps");

  auto* drift = app.add_subcommand("drift", "drift estimate and the roof-identity pair");
  add_common(drift, true);
  drift->add_option("--steps", steps, "number of drops");

  auto* runs = app.add_subcommand("runs", "run-length decomposition of a column's roof indicator");
  add_common(runs, true);
  runs->add_option("--steps", steps, "number of drops");
  runs->add_option("--column", column, "tracked column");
  runs->add_option("--format", format, "record format")
      ->check(CLI::IsMember({"structured-text", "csv"}));

  auto* rho = app.add_subcommand("rho", "backtracking probability from the two-box start");
  add_common(rho, false);
  rho->add_option("--samples", samples, "replica count");
  rho->add_option("--replicas", replicas, "parallel fan-out");

  auto* wp = app.add_subcommand("wp", "probability that a roof piece is ever annihilated");
  add_common(wp, false);
  wp->add_option("--samples", samples, "replica count");
  wp->add_option("--horizon", horizon, "max steps per replica");
  wp->add_option("--cone-stop", cone_stop, "stop once this many pieces block the tracked piece");
  wp->add_option("--replicas", replicas, "parallel fan-out");

  auto* tildep = app.add_subcommand("tildep", "P~: chain piece annihilated before a column-0 landing");
  add_common(tildep, false);
  tildep->add_option("--samples", samples, "replica count");
  tildep->add_option("--chain", chain_text, "configuration (e.g. 2-chain, '+1,+1', '{-1,+1{0}}')");
  tildep->add_option("--replicas", replicas, "parallel fan-out");

  auto* tildee = app.add_subcommand("tildee", "E~: mean steps until either stopping event");
  add_common(tildee, false);
  tildee->add_option("--samples", samples, "replica count");
  tildee->add_option("--chain", chain_text, "configuration");
  tildee->add_option("--replicas", replicas, "parallel fan-out");

  auto* couple = app.add_subcommand("couple", "coupled pair agreement of the top roof levels");
  add_common(couple, false);
  couple->add_option("--n", couple_n, "coupled steps per replica");
  couple->add_option("--level", level, "roof levels compared");
  couple->add_option("--reps", reps, "replica count");
  couple->add_option("--init1", init1_path, "heap snapshot for the first heap (default: empty)");
  couple->add_option("--init2", init2_path, "heap snapshot for the second heap (default: two-box)");

  auto* uns = app.add_subcommand("unsigned", "unsigned process: stationary law and transition tallies");
  add_common(uns, false);
  uns->add_option("--steps", steps, "number of drops");
  uns->add_option("--column", column, "tracked column");

  auto* norm = app.add_subcommand("normalize", "read words (one per line), write normal forms");
  add_common(norm, false);
  norm->add_option("--input", input_path, "input path (default stdin)");

  auto* equal = app.add_subcommand("equal", "decide whether two words represent the same element");
  add_common(equal, false);
  std::string word_a, word_b;
  equal->add_option("word1", word_a, "first word")->required();
  equal->add_option("word2", word_b, "second word")->required();

  auto* bounds = app.add_subcommand("bounds", "analytic bound report");
  bounds->add_option("--output", output_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    Output out;
    out.open(output_path);
    std::ostream& os = out.stream();
    os.precision(10);

    if (sim->parsed() || drift->parsed()) {
      ProcessConfig config{m, p, steps, seed, !trajectory_path.empty()};
      Trajectory traj{config, {}, 0, 0, Heap(m)};
      if (sim->parsed() && flush_every > 0 && flush_every < steps) {
        std::uint64_t sum_roof = 0;
        traj = run_observed(config, [&](std::int64_t step, const Heap& heap, const DropEvent&) {
          sum_roof += static_cast<std::uint64_t>(heap.roof_size());
          if (step % flush_every == 0 && step < steps) {
            os << config_echo("simulate",
                              {{"m", std::to_string(m)},
                               {"p", fmt(p)},
                               {"steps", std::to_string(steps)},
                               {"seed", std::to_string(seed)},
                               {"progress_steps", std::to_string(step)},
                               {"mean_roof_fraction_so_far",
                                fmt(static_cast<double>(sum_roof) / (static_cast<double>(step) * m))}})
               << "\n";
            os.flush();
          }
        });
      } else {
        traj = run(config);
      }
      const char* name = sim->parsed() ? "simulate" : "drift";
      os << config_echo(name, {{"m", std::to_string(m)},
                               {"p", fmt(p)},
                               {"steps", std::to_string(steps)},
                               {"seed", std::to_string(seed)}});
      os << "mean_roof_fraction = " << fmt(traj.mean_roof() / m) << "\n";
      if (steps > 0) {
        const DriftEstimate d = drift_estimate(traj);
        os << "zeta_hat = " << fmt(d.zeta_hat) << "\n";
        os << "one_minus_roof_fraction = " << fmt(d.one_minus_roof) << "\n";
      }
      os << "annihilations = " << traj.annihilations << "\n";
      os << "final_heap_size = " << traj.final_heap.size() << "\n";
      os << "final_roof_size = " << traj.final_heap.roof_size() << "\n";
      if (!trajectory_path.empty()) {
        std::ofstream tos(trajectory_path);
        if (!tos) throw std::runtime_error("cannot open trajectory path");
        write_trajectory_csv(tos, traj);
      }
    } else if (runs->parsed()) {
      ProcessConfig config{m, p, steps, seed, true};
      const Trajectory traj = run(config);
      const auto records = run_lengths(traj, column);
      os << config_echo("runs", {{"m", std::to_string(m)},
                                 {"p", fmt(p)},
                                 {"steps", std::to_string(steps)},
                                 {"seed", std::to_string(seed)},
                                 {"column", std::to_string(column)},
                                 {"records", std::to_string(records.size())}});
      os << "\n";
      if (format == "csv") {
        os << "value,length,termination,start_class\n";
        for (const RunRecord& r : records)
          os << r.value << ',' << r.length << ',' << to_string(r.termination) << ','
             << to_string(r.start) << '\n';
      } else {
        for (const RunRecord& r : records)
          os << "value = " << r.value << "\nlength = " << r.length
             << "\ntermination = " << to_string(r.termination)
             << "\nstart_class = " << to_string(r.start) << "\n\n";
      }
    } else if (rho->parsed()) {
      const Estimate e = replicated(samples, replicas, seed, [&](std::int64_t n, std::uint64_t s) {
        return estimate_rho(m, n, s);
      });
      os << config_echo("rho", {{"m", std::to_string(m)},
                                {"samples", std::to_string(samples)},
                                {"seed", std::to_string(seed)},
                                {"replicas", std::to_string(replicas)}});
      os << estimate_text("rho", e);
    } else if (wp->parsed()) {
      const Estimate e = replicated(samples, replicas, seed, [&](std::int64_t n, std::uint64_t s) {
        return estimate_wp(m, n, horizon, s, cone_stop);
      });
      os << config_echo("wp", {{"m", std::to_string(m)},
                               {"samples", std::to_string(samples)},
                               {"horizon", std::to_string(horizon)},
                               {"cone_stop", std::to_string(cone_stop)},
                               {"seed", std::to_string(seed)},
                               {"replicas", std::to_string(replicas)}});
      os << estimate_text("wp", e);
    } else if (tildep->parsed() || tildee->parsed()) {
      const ConfigChain chain = ConfigChain::parse(chain_text);
      const bool want_p = tildep->parsed();
      const Estimate e = replicated(samples, replicas, seed, [&](std::int64_t n, std::uint64_t s) {
        return want_p ? estimate_tilde_p(chain, m, n, s) : estimate_tilde_e(chain, m, n, s);
      });
      os << config_echo(want_p ? "tildep" : "tildee",
                        {{"m", std::to_string(m)},
                         {"chain", chain.name()},
                         {"samples", std::to_string(samples)},
                         {"seed", std::to_string(seed)},
                         {"replicas", std::to_string(replicas)}});
      os << estimate_text(want_p ? "tilde_p" : "tilde_e", e);
    } else if (couple->parsed()) {
      const Heap h1 = load_heap_or(init1_path, Heap(m));
      const Heap h2 = load_heap_or(init2_path, make_config(ConfigChain::k_chain(2), m));
      const double frac = coupling_agreement(m, h1, h2, couple_n, level, reps, seed);
      os << config_echo("couple", {{"m", std::to_string(m)},
                                   {"n", std::to_string(couple_n)},
                                   {"level", std::to_string(level)},
                                   {"reps", std::to_string(reps)},
                                   {"seed", std::to_string(seed)}});
      os << "agreement_fraction = " << fmt(frac) << "\n";
    } else if (uns->parsed()) {
      std::int64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;
      int x_prev = 0;
      ProcessConfig config{m, 0.0, steps, seed, false};
      const Trajectory traj = run_observed(config, [&](std::int64_t, const Heap& heap, const DropEvent&) {
        const int x = heap.is_roof(column) ? 1 : 0;
        (x_prev ? (x ? n11 : n10) : (x ? n01 : n00))++;
        x_prev = x;
      });
      const auto [pi0, pi1] = two_state_stationary(m);
      os << config_echo("unsigned", {{"m", std::to_string(m)},
                                     {"steps", std::to_string(steps)},
                                     {"seed", std::to_string(seed)},
                                     {"column", std::to_string(column)}});
      os << "pi0 = " << fmt(pi0) << "\n";
      os << "pi1 = " << fmt(pi1) << "\n";
      os << "mean_roof_fraction = " << fmt(traj.mean_roof() / m) << "\n";
      os << "p10_hat = " << fmt(n10 + n11 > 0 ? static_cast<double>(n10) / (n10 + n11) : 0.0)
         << "\n";
      os << "p10_expected = " << fmt(2.0 / m) << "\n";
      os << "p01_hat = " << fmt(n00 + n01 > 0 ? static_cast<double>(n01) / (n00 + n01) : 0.0)
         << "\n";
      os << "p01_expected = " << fmt(1.0 / m) << "\n";
    } else if (norm->parsed()) {
      std::istream* is = &std::cin;
      std::ifstream file;
      if (!input_path.empty()) {
        file.open(input_path);
        if (!file) throw std::runtime_error("cannot read input path");
        is = &file;
      }
      std::string line;
      while (std::getline(*is, line)) os << format_word(normalize(parse_word(line, m))) << "\n";
    } else if (equal->parsed()) {
      const bool same = words_equal(parse_word(word_a, m), parse_word(word_b, m));
      os << (same ? "true" : "false") << "\n";
    } else if (bounds->parsed()) {
      os << config_echo("bounds", {});
      os << "\n" << bounds_report_text();
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
