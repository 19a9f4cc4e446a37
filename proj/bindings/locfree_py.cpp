#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "locfree/analytic.hpp"
#include "locfree/heap.hpp"
#include "locfree/process.hpp"
#include "locfree/runstats.hpp"
#include "locfree/words.hpp"

namespace py = pybind11;
using namespace locfree;

namespace {

Sign sign_from(const std::string& s) {
  if (s == "+") return Sign::plus;
  if (s == "-") return Sign::minus;
  throw std::invalid_argument("sign must be '+' or '-'");
}

py::tuple piece_tuple(const Piece& p) {
  return py::make_tuple(p.height, p.column, std::string(1, sign_char(p.sign)));
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["samples"] = e.samples;
  d["truncation_bias_bound"] = e.truncation_bias_bound;
  return d;
}

py::list levels_list(const RoofLevels& levels) {
  py::list out;
  for (const auto& level : levels.levels) {
    py::list l;
    for (const auto& [column, sign] : level)
      l.append(py::make_tuple(column, std::string(1, sign_char(sign))));
    out.append(l);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(locfree, mod) {
  mod.doc() = "Random heaps on Z_m x Z+: simulation, normal forms and exact bounds";

  py::class_<Heap>(mod, "Heap")
      .def(py::init<int>(), py::arg("m"))
      .def_property_readonly("m", &Heap::columns)
      .def_property_readonly("size", &Heap::size)
      .def_property_readonly("step_count", &Heap::step_count)
      .def_property_readonly("annihilation_count", &Heap::annihilation_count)
      .def("top_height", &Heap::top_height, py::arg("column"))
      .def("is_roof", &Heap::is_roof, py::arg("column"))
      .def("roof_size", &Heap::roof_size)
      .def("roof",
           [](const Heap& h) {
             py::list out;
             for (const Piece& p : h.roof()) out.append(piece_tuple(p));
             return out;
           })
      .def(
          "drop",
          [](Heap& h, int column, const std::string& sign) {
            const DropEvent ev = h.drop(column, sign_from(sign));
            py::dict d;
            d["kind"] = ev.kind == DropEvent::Kind::added ? "added" : "annihilated";
            d["piece"] = piece_tuple(ev.piece);
            return d;
          },
          py::arg("column"), py::arg("sign"))
      .def("levels", [](const Heap& h) { return levels_list(h.level_decomposition()); })
      .def("validate", &Heap::validate)
      .def("blocking_chain",
           [](const Heap& h) -> std::optional<std::string> {
             auto chain = h.blocking_chain();
             if (!chain) return std::nullopt;
             return chain->name();
           })
      .def("to_text", &Heap::to_text)
      .def_static("from_text", &Heap::from_text, py::arg("text"))
      .def("__eq__", [](const Heap& a, const Heap& b) { return a == b; })
      .def("__repr__", [](const Heap& h) {
        return "<Heap m=" + std::to_string(h.columns()) + " size=" + std::to_string(h.size()) + ">";
      });

  mod.def(
      "make_config",
      [](const std::string& chain, int m) { return make_config(ConfigChain::parse(chain), m); },
      py::arg("chain"), py::arg("m"));

  mod.def(
      "normalize",
      [](const std::string& word, int m) { return format_word(normalize(parse_word(word, m))); },
      py::arg("word"), py::arg("m"));
  mod.def(
      "words_equal",
      [](const std::string& a, const std::string& b, int m) {
        return words_equal(parse_word(a, m), parse_word(b, m));
      },
      py::arg("word1"), py::arg("word2"), py::arg("m"));
  mod.def(
      "word_to_heap",
      [](const std::string& word, int m) { return word_to_heap(parse_word(word, m)); },
      py::arg("word"), py::arg("m"));
  mod.def("heap_to_word", [](const Heap& h) { return format_word(heap_to_word(h)); },
          py::arg("heap"));

  mod.def(
      "simulate",
      [](int m, double p, std::int64_t steps, std::uint64_t seed) {
        const Trajectory traj = run(ProcessConfig{m, p, steps, seed, false});
        py::dict d;
        d["m"] = m;
        d["p"] = p;
        d["steps"] = steps;
        d["seed"] = seed;
        d["mean_roof_fraction"] = traj.mean_roof() / m;
        d["annihilations"] = traj.annihilations;
        d["final_heap_size"] = traj.final_heap.size();
        if (steps > 0) {
          const DriftEstimate drift = drift_estimate(traj);
          d["zeta_hat"] = drift.zeta_hat;
          d["one_minus_roof_fraction"] = drift.one_minus_roof;
        }
        return d;
      },
      py::arg("m"), py::arg("p"), py::arg("steps"), py::arg("seed") = 0);

  mod.def(
      "reduced_walk_samples",
      [](int m, std::optional<int> start, int n, std::uint64_t seed) {
        SplitMix64 rng(seed);
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.push_back(reduced_walk_sample(m, start, rng));
        return out;
      },
      py::arg("m"), py::arg("start"), py::arg("n"), py::arg("seed") = 0,
      "start=None samples the infinite-tower walk");

  mod.def("two_state_stationary", &two_state_stationary, py::arg("m"));

  mod.def(
      "estimate_rho",
      [](int m, std::int64_t samples, std::uint64_t seed) {
        return estimate_dict(estimate_rho(m, samples, seed));
      },
      py::arg("m"), py::arg("samples"), py::arg("seed") = 0);
  mod.def(
      "estimate_wp",
      [](int m, std::int64_t samples, std::int64_t horizon, std::uint64_t seed, int cone_stop) {
        return estimate_dict(estimate_wp(m, samples, horizon, seed, cone_stop));
      },
      py::arg("m"), py::arg("samples"), py::arg("horizon") = 200000, py::arg("seed") = 0,
      py::arg("cone_stop") = 12);
  mod.def(
      "estimate_tilde_p",
      [](const std::string& chain, int m, std::int64_t samples, std::uint64_t seed) {
        return estimate_dict(estimate_tilde_p(ConfigChain::parse(chain), m, samples, seed));
      },
      py::arg("chain"), py::arg("m"), py::arg("samples"), py::arg("seed") = 0);
  mod.def(
      "estimate_tilde_e",
      [](const std::string& chain, int m, std::int64_t samples, std::uint64_t seed) {
        return estimate_dict(estimate_tilde_e(ConfigChain::parse(chain), m, samples, seed));
      },
      py::arg("chain"), py::arg("m"), py::arg("samples"), py::arg("seed") = 0);
  mod.def(
      "coupling_agreement",
      [](int m, const Heap& init1, const Heap& init2, std::int64_t n, int level, int reps,
         std::uint64_t seed) {
        return coupling_agreement(m, init1, init2, n, level, reps, seed);
      },
      py::arg("m"), py::arg("init1"), py::arg("init2"), py::arg("n"), py::arg("level") = 1,
      py::arg("reps") = 1000, py::arg("seed") = 0);

  mod.def("rho_bounds", [] {
    const Interval i = rho_bounds();
    return py::make_tuple(i.lo, i.hi);
  });
  mod.def("wp_bounds", [] {
    const Interval i = wp_bounds();
    return py::make_tuple(i.lo, i.hi);
  });
  mod.def(
      "tilde_p_system",
      [](int m) {
        const TildePSystem sys = tilde_p_system(m);
        py::dict d;
        d["chain2"] = py::make_tuple(sys.chain2.lo, sys.chain2.hi);
        d["chain3"] = py::make_tuple(sys.chain3.lo, sys.chain3.hi);
        d["chain4"] = py::make_tuple(sys.chain4.lo, sys.chain4.hi);
        return d;
      },
      py::arg("m"));
  mod.def(
      "e_zero_bounds",
      [](int m) {
        const Interval i = e_zero_bounds(m);
        return py::make_tuple(i.lo, i.hi);
      },
      py::arg("m"));
  mod.def(
      "xi_stationary",
      [](double rho) {
        const XiDistribution pi = xi_stationary(rho);
        return py::make_tuple(pi.pi_sstar, pi.pi_stilde, pi.pi_ell);
      },
      py::arg("rho"));
  mod.def(
      "ones_time_avg_bound",
      [](double lo, double hi, int m) { return ones_time_avg_bound(Interval{lo, hi}, m); },
      py::arg("rho_lo"), py::arg("rho_hi"), py::arg("m") = 10);
  mod.def("theorem_bound", &theorem_bound);
  mod.def("n_wedge_t", &n_wedge_t, py::arg("terms"));
  mod.def(
      "run_constants",
      [](int m) {
        const RunConstants c = e_run_constants(m);
        py::dict d;
        d["e_s"] = c.e_s;
        d["e_sstar"] = c.e_sstar;
        d["e_stilde"] = c.e_stilde;
        d["e_l"] = c.e_l;
        d["e_ones_cap"] = c.e_ones_cap;
        return d;
      },
      py::arg("m"));
  mod.def("bounds_report", &bounds_report_text);
}
