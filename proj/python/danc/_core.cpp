#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "danc/acoustics.hpp"
#include "danc/complexity.hpp"
#include "danc/config.hpp"
#include "danc/error.hpp"
#include "danc/harness.hpp"
#include "danc/metrics.hpp"
#include "danc/wiener.hpp"

namespace py = pybind11;
using namespace danc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v) { return Array(static_cast<py::ssize_t>(v.size()), v.data()); }

Array to_array(const GlobalFilter& w) {
  Array a({static_cast<py::ssize_t>(w.nodes()), static_cast<py::ssize_t>(w.taps())});
  std::copy(w.data().begin(), w.data().end(), a.mutable_data());
  return a;
}

GlobalFilter from_array(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("expected a (nodes, taps) array");
  GlobalFilter w(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), w.data().begin());
  return w;
}

std::vector<double> to_vector(const Array& a) { return {a.data(), a.data() + a.size()}; }

SimConfig make_config(const std::string& preset_name, const py::dict& settings) {
  SimConfig cfg = preset(preset_name);
  for (const auto& [k, v] : settings) apply_setting(cfg, py::str(k), py::str(v));
  return cfg;
}

std::string config_text(const SimConfig& cfg) {
  std::ostringstream os;
  write_config(os, cfg);
  return os.str();
}

py::dict algorithm_dict(const AlgorithmResult& a) {
  py::dict d;
  d["mu"] = a.mu;
  d["tau_db"] = to_array(a.tau_db);
  d["steady_tau_db"] = a.steady_tau_db;
  d["run_steady_tau_db"] = a.run_steady_tau_db;
  d["diverged"] = a.diverged;
  d["averaged_runs"] = a.averaged_runs;
  d["mean_filter"] = to_array(a.mean_filter);
  d["consensus_spread"] = a.mean_filter.nodes() > 0 ? consensus_spread(a.mean_filter) : 0.0;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed multichannel active noise control simulator";

  static py::exception<Error> error(m, "DancError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<SimConfig>(m, "Config")
      .def(py::init([](const std::string& preset_name, const py::dict& settings) {
             return make_config(preset_name, settings);
           }),
           py::arg("preset") = "paper-tone", py::arg("settings") = py::dict())
      .def("set", [](SimConfig& c, const std::string& key, const py::object& v) { apply_setting(c, key, py::str(v)); })
      .def("text", &config_text)
      .def_readwrite("samples", &SimConfig::samples)
      .def_readwrite("runs", &SimConfig::runs)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("filter_taps", &SimConfig::filter_taps)
      .def_readwrite("workers", &SimConfig::workers)
      .def("__repr__", &config_text);

  m.def("preset_names", &preset_names);

  m.def(
      "run_experiment",
      [](const SimConfig& cfg) {
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        py::dict out;
        for (const auto& a : r.algorithms) out[py::str(to_string(a.kind))] = algorithm_dict(a);
        return py::make_tuple(out, r.run_seeds);
      },
      py::arg("config"), "Monte Carlo experiment; returns ({algorithm: results}, run_seeds)");

  m.def(
      "oracle",
      [](const SimConfig& cfg) {
        WienerSolution s;
        {
          py::gil_scoped_release release;
          s = experiment_oracle(cfg);
        }
        py::dict d;
        d["w_opt"] = to_array(s.w_opt);
        d["residual_power"] = to_array(s.residual_power);
        d["disturbance_power"] = to_array(s.disturbance_power);
        d["normal_residual"] = s.normal_residual;
        d["regularized"] = s.regularized;
        return d;
      },
      py::arg("config"));

  m.def(
      "op_count",
      [](const std::string& algorithm, std::size_t nodes, std::size_t filter_taps, std::size_t path_taps,
         const std::string& convention) {
        const auto conv = convention == "sliding" ? CountConvention::sliding : CountConvention::direct;
        if (convention != "sliding" && convention != "direct") throw py::value_error("convention: direct | sliding");
        const auto c = op_count_model(parse_algorithm(algorithm), {nodes, filter_taps, path_taps},
                                      Topology::ring(nodes), conv);
        return py::make_tuple(c.mul, c.add);
      },
      py::arg("algorithm"), py::arg("nodes") = 10, py::arg("filter_taps") = 260, py::arg("path_taps") = 64,
      py::arg("convention") = "direct", "Per-sample (mul, add) on a ring of `nodes`");

  m.def(
      "instrumented_count",
      [](const std::string& algorithm, std::size_t nodes, std::size_t filter_taps, std::size_t path_taps,
         std::size_t samples, std::uint64_t seed) {
        const auto c = instrumented_run(parse_algorithm(algorithm), {nodes, filter_taps, path_taps},
                                        Topology::ring(nodes), samples, seed);
        return py::make_tuple(c.mul, c.add);
      },
      py::arg("algorithm"), py::arg("nodes"), py::arg("filter_taps"), py::arg("path_taps"),
      py::arg("samples") = 8, py::arg("seed") = 1);

  m.def("reference_counts", [] {
    py::dict d;
    for (const auto& r : reference_counts()) d[py::str(r.algorithm)] = py::make_tuple(r.mul, r.add);
    return d;
  });

  m.def(
      "free_field_ir",
      [](std::array<double, 3> src, std::array<double, 3> rcv, double fs, std::size_t taps) {
        return to_array(free_field_ir({src[0], src[1], src[2]}, {rcv[0], rcv[1], rcv[2]}, fs, taps).coeffs);
      },
      py::arg("src"), py::arg("rcv"), py::arg("fs") = 4000.0, py::arg("taps") = 64);

  m.def(
      "reference_signal",
      [](const SimConfig& cfg, std::size_t n, std::uint64_t seed) {
        SignalSpec s = cfg.signal;
        s.seed = seed;
        return to_array(gen_signal(s, cfg.scene.fs, n));
      },
      py::arg("config"), py::arg("samples"), py::arg("seed") = 0);

  m.def(
      "normalized_residual_db",
      [](const Array& residual, const Array& disturbance, std::size_t window) {
        PowerTrace p{to_vector(residual), to_vector(disturbance)};
        if (p.residual.size() != p.disturbance.size()) throw py::value_error("length mismatch");
        return to_array(normalized_residual_db(p, window));
      },
      py::arg("residual_power"), py::arg("disturbance_power"), py::arg("window") = 1);

  m.def("consensus_spread", [](const Array& w) { return consensus_spread(from_array(w)); });
  m.def("relative_distance",
        [](const Array& w, const Array& ref) { return relative_distance(from_array(w), from_array(ref)); });
}
