// Copyright 2026 The NoisyFair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "noisyfair/core.h"
#include "noisyfair/experiment.h"
#include "noisyfair/fairspec.h"
#include "noisyfair/instance_io.h"
#include "noisyfair/metrics.h"
#include "noisyfair/noiselab.h"
#include "noisyfair/rankers.h"
#include "noisyfair/status.h"

namespace py = pybind11;

namespace noisyfair {
namespace {

using Rows = std::vector<std::vector<double>>;

std::optional<std::vector<size_t>> TruthLabels(const Instance& inst) {
  if (!inst.truth || !inst.truth->IsDisjointCover()) return std::nullopt;
  std::vector<size_t> labels(inst.m);
  for (size_t i = 0; i < inst.m; ++i) labels[i] = inst.truth->Label(i);
  return labels;
}

Instance MakeInstance(std::vector<double> w, size_t n, const Rows& P,
                      const std::string& structure,
                      std::optional<std::vector<size_t>> truth) {
  const Matrix pm = Matrix::FromRows(P);
  std::optional<GroupSample> sample;
  if (truth) sample = GroupSample::FromLabels(*truth, pm.cols());
  return MakeDcgInstance(std::move(w), n, pm, ParseGroupStructure(structure), std::move(sample));
}

std::vector<size_t> Rank(const Instance& inst, const std::string& algo, double phi,
                         const std::string& gamma_mode, double psi, double c, double delta,
                         double d, size_t t, uint64_t seed) {
  const Matrix U = UPhi(inst.n, inst.p, phi);
  Ranking r;
  if (algo == "uncons") {
    r = Uncons(inst);
  } else if (algo == "nresilient") {
    FairnessSpec spec;
    spec.U = U;
    spec.gamma_mode = ParseGammaMode(gamma_mode);
    spec.psi = psi;
    spec.c = c;
    spec.delta = delta;
    spec.d = d;
    NResilientOptions options;
    options.t = t;
    r = NResilient(inst, spec, seed, options);
  } else if (algo == "mc") {
    r = McBaseline(inst, U, seed);
  } else if (algo == "csv" || algo == "sj" || algo == "gak") {
    const GroupSample imputed = ImputeBayes(inst.P, inst.structure);
    if (algo == "csv") {
      r = CsvGreedy(inst, imputed, U);
    } else if (algo == "sj") {
      r = SjSample(inst, imputed, U, seed);
    } else {
      r = GakDetGreedy(inst, imputed,
                       std::vector<double>(inst.p, 1.0 / static_cast<double>(inst.p)));
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + algo + "'");
  }
  return r.slots;
}

py::dict EvaluateRanking(const Instance& inst, const std::vector<size_t>& slots) {
  if (!inst.truth) throw Error(ErrorCode::kInvalidArgument, "instance has no ground truth");
  const MetricReport report = Evaluate(Ranking{slots}, inst, *inst.truth);
  py::dict out;
  out["rd"] = report.rd;
  out["sl"] = report.sl;
  out["prop_rd"] = report.prop_rd;
  out["ndcg"] = report.ndcg;
  out["utility"] = report.utility;
  out["checkpoints"] = report.checkpoints;
  return out;
}

}  // namespace
}  // namespace noisyfair

PYBIND11_MODULE(_noisyfair, m) {
  using namespace noisyfair;
  m.doc() = "Fair ranking under noisy group membership";

  // Kept alive for the lifetime of the interpreter.
  static PyObject* error_type = py::exception<Error>(m, "Error").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def(py::init(&MakeInstance), py::arg("w"), py::arg("n"), py::arg("P"),
           py::arg("structure") = "disjoint", py::arg("truth") = std::nullopt)
      .def_readonly("m", &Instance::m)
      .def_readonly("n", &Instance::n)
      .def_readonly("p", &Instance::p)
      .def_property_readonly("w", [](const Instance& i) { return i.w; })
      .def_property_readonly("P", [](const Instance& i) { return i.P.ToRows(); })
      .def_property_readonly("W", [](const Instance& i) { return i.W.ToRows(); })
      .def_property_readonly("structure",
                             [](const Instance& i) {
                               return std::string(GroupStructureName(i.structure));
                             })
      .def_property_readonly("truth", &TruthLabels)
      .def("to_json", &SerializeInstance)
      .def_static("from_json", [](const std::string& text) { return ParseInstance(text); })
      .def("__repr__", [](const Instance& i) {
        return "Instance(m=" + std::to_string(i.m) + ", n=" + std::to_string(i.n) +
               ", p=" + std::to_string(i.p) + ")";
      });

  m.def("u_equal_representation",
        [](size_t n, size_t p) { return UEqualRepresentation(n, p).ToRows(); }, py::arg("n"),
        py::arg("p"));
  m.def("u_phi", [](size_t n, size_t p, double phi) { return UPhi(n, p, phi).ToRows(); },
        py::arg("n"), py::arg("p"), py::arg("phi"));
  m.def("gamma_heuristic",
        [](const Rows& U) { return GammaHeuristic(Matrix::FromRows(U)); }, py::arg("U"));
  m.def("gamma_theoretical",
        [](const Rows& U, double delta) { return GammaTheoretical(Matrix::FromRows(U), delta); },
        py::arg("U"), py::arg("delta"));

  m.def(
      "synth_nonuniform_fdr",
      [](size_t m_items, size_t n, double tau, uint64_t seed) {
        FdrSynthSpec spec;
        spec.m = m_items;
        spec.n = n;
        spec.tau = tau;
        return SynthNonuniformFdr(spec, seed);
      },
      py::arg("m") = 500, py::arg("n") = 25, py::arg("tau") = 0.0, py::arg("seed") = 0);
  m.def("half_half_instance", &HalfHalfInstance, py::arg("m"), py::arg("n"), py::arg("p") = 2);

  m.def("rank", &Rank, py::arg("instance"), py::arg("algo") = "nresilient",
        py::arg("phi") = 1.0, py::arg("gamma_mode") = "heuristic", py::arg("psi") = 0.5,
        py::arg("c") = 1.5, py::arg("delta") = 0.1, py::arg("d") = 3.0,
        py::arg("t") = kDefaultSwapT, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("evaluate", &EvaluateRanking, py::arg("instance"), py::arg("slots"));

  m.def(
      "probe_violations",
      [](const std::vector<size_t>& slots, const Instance& inst, const Rows& U,
         const std::vector<double>& epsilon, size_t trials, uint64_t seed) {
        const ViolationProbe probe = ProbeViolations(Ranking{slots}, inst.P, inst.structure,
                                                     Matrix::FromRows(U), epsilon, trials, seed);
        py::dict out;
        out["delta_hat"] = probe.delta_hat;
        out["std_error"] = probe.std_error;
        out["worst_k"] = probe.worst_k;
        out["worst_group"] = probe.worst_group;
        out["frequency"] = probe.frequency.ToRows();
        return out;
      },
      py::arg("slots"), py::arg("instance"), py::arg("U"), py::arg("epsilon"),
      py::arg("trials") = 1000, py::arg("seed") = 0);

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        const ExperimentConfig cfg = ParseExperimentConfig(config_json);
        std::vector<ExperimentRow> rows;
        {
          py::gil_scoped_release release;
          rows = RunExperiment(cfg);
        }
        return FormatCsv(rows);
      },
      py::arg("config_json"));
}
