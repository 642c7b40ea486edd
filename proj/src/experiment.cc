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

#include "noisyfair/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "noisyfair/fairspec.h"
#include "noisyfair/instance_io.h"
#include "noisyfair/metrics.h"
#include "noisyfair/noiselab.h"
#include "noisyfair/rankers.h"
#include "noisyfair/rng.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

using nlohmann::json;

const std::set<std::string> kGenerators = {"nonuniform-fdr", "multigroup", "noise-sweep",
                                           "file"};
const std::set<std::string> kAlgorithms = {"nresilient", "uncons", "csv", "sj", "gak", "mc"};
const std::set<std::string> kMetrics = {"rd", "sl", "prop_rd", "ndcg", "utility"};

// Calibration of tau is deterministic and independent of the run seed.
constexpr size_t kCalibrationSamples = 200000;
constexpr uint64_t kCalibrationSeed = 20210601;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kConfigInvalid, what);
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    Invalid(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

ExperimentConfig ResolveTau(ExperimentConfig cfg) {
  if (cfg.generator == "nonuniform-fdr" && !cfg.tau) {
    FdrSynthSpec spec;
    cfg.tau = CalibrateTau(spec, cfg.target_gap, kCalibrationSamples, kCalibrationSeed);
  }
  return cfg;
}

}  // namespace

std::vector<double> DefaultPhiGrid(size_t p) {
  const double extra = static_cast<double>(p) - 1.0;
  std::vector<double> grid = {static_cast<double>(p)};
  for (double f : {0.6, 0.4, 0.2, 0.1, 0.0}) grid.push_back(1.0 + f * extra);
  return grid;
}

ExperimentConfig ParseExperimentConfig(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    Invalid(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) Invalid("config must be a JSON object");
  static const std::set<std::string> known = {
      "generator", "instance", "m", "n", "p", "tau", "target_gap", "fdr_low", "fdr_high",
      "mu2", "eta", "majority", "algorithms", "phi", "iterations", "seed", "gamma_mode",
      "psi", "c", "delta", "d", "t", "metrics", "timing", "output", "threads"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) Invalid("unknown config key '" + item.key() + "'");
  }
  ExperimentConfig cfg;
  Read(j, "generator", cfg.generator);
  Read(j, "instance", cfg.instance_path);
  Read(j, "m", cfg.m);
  Read(j, "n", cfg.n);
  Read(j, "p", cfg.p);
  if (j.contains("tau")) {
    double tau = 0.0;
    Read(j, "tau", tau);
    cfg.tau = tau;
  }
  Read(j, "target_gap", cfg.target_gap);
  Read(j, "fdr_low", cfg.fdr_low);
  Read(j, "fdr_high", cfg.fdr_high);
  Read(j, "mu2", cfg.mu2);
  Read(j, "eta", cfg.eta);
  Read(j, "majority", cfg.majority);
  Read(j, "algorithms", cfg.algorithms);
  Read(j, "phi", cfg.phi);
  Read(j, "iterations", cfg.iterations);
  Read(j, "seed", cfg.seed);
  if (j.contains("gamma_mode")) {
    std::string mode;
    Read(j, "gamma_mode", mode);
    try {
      cfg.gamma_mode = ParseGammaMode(mode);
    } catch (const Error& e) {
      Invalid(e.what());
    }
  }
  Read(j, "psi", cfg.psi);
  Read(j, "c", cfg.c);
  Read(j, "delta", cfg.delta);
  Read(j, "d", cfg.d);
  Read(j, "t", cfg.t);
  Read(j, "metrics", cfg.metrics);
  Read(j, "timing", cfg.timing);
  Read(j, "output", cfg.output);
  Read(j, "threads", cfg.threads);
  ValidateExperimentConfig(cfg);
  return cfg;
}

void ValidateExperimentConfig(const ExperimentConfig& cfg) {
  if (!kGenerators.count(cfg.generator)) Invalid("unknown generator '" + cfg.generator + "'");
  if (cfg.generator == "file" && cfg.instance_path.empty()) Invalid("file generator needs 'instance'");
  if (cfg.iterations < 1) Invalid("iterations must be at least 1");
  if (cfg.generator != "file") {
    if (cfg.n < 5 || cfg.m < cfg.n) Invalid("need 5 <= n <= m");
    if (cfg.p < 2) Invalid("p must be at least 2");
    if (cfg.generator != "multigroup" && cfg.p != 2) Invalid("this generator has p = 2");
  }
  if (cfg.tau && !(*cfg.tau >= 0.0 && *cfg.tau <= 1.0)) Invalid("tau must lie in [0, 1]");
  if (!(cfg.eta >= 0.0 && cfg.eta < 0.5)) Invalid("eta must lie in [0, 1/2)");
  if (!(cfg.majority > 0.0 && cfg.majority < 1.0)) Invalid("majority must lie in (0, 1)");
  if (cfg.algorithms.empty()) Invalid("no algorithms");
  for (const auto& a : cfg.algorithms) {
    if (!kAlgorithms.count(a)) Invalid("unknown algorithm '" + a + "'");
  }
  for (const auto& mname : cfg.metrics) {
    if (!kMetrics.count(mname)) Invalid("unknown metric '" + mname + "'");
  }
  const double p = cfg.generator == "file" ? 1e9 : static_cast<double>(cfg.p);
  for (double phi : cfg.phi) {
    if (!(phi >= 1.0 && phi <= p)) Invalid("phi grid must lie in [1, p]");
  }
  if (!(cfg.c > 1.0)) Invalid("c must exceed 1");
  if (!(cfg.delta > 0.0 && cfg.delta <= 0.5)) Invalid("delta must lie in (0, 1/2]");
  if (!(cfg.d > 2.0)) Invalid("d must exceed 2");
  if (cfg.t < 1) Invalid("t must be positive");
  if (cfg.threads < 1) Invalid("threads must be positive");
}

ExperimentInstance DrawExperimentInstance(const ExperimentConfig& raw, size_t iter) {
  const ExperimentConfig cfg = ResolveTau(raw);
  ExperimentInstance out;
  out.seed = DeriveSeed(cfg.seed, 0, iter);
  if (cfg.generator == "nonuniform-fdr") {
    FdrSynthSpec spec;
    spec.m = cfg.m;
    spec.n = cfg.n;
    spec.tau = *cfg.tau;
    out.inst = SynthNonuniformFdr(spec, out.seed);
    out.imputed = ImputeBayes(out.inst.P, out.inst.structure);
  } else if (cfg.generator == "multigroup") {
    MultigroupSpec spec;
    spec.m = cfg.m;
    spec.n = cfg.n;
    spec.p = cfg.p;
    spec.fdr_low = cfg.fdr_low;
    spec.fdr_high = cfg.fdr_high;
    spec.mu2 = cfg.mu2;
    out.inst = SynthMultigroup(spec, out.seed);
    out.imputed = ImputeBayes(out.inst.P, out.inst.structure);
  } else if (cfg.generator == "noise-sweep") {
    GroupSample truth = TwoGroupTruth(cfg.m, cfg.majority, DeriveSeed(out.seed, 1));
    Rng rng(out.seed, 2);
    std::vector<double> w(cfg.m);
    for (double& x : w) x = rng.Uniform();
    RandomizedResponseParams params;
    params.eta = cfg.eta;
    params.estimate_group_sizes = true;
    Rng flip_rng(out.seed, 3);
    RandomizedResponseResult rr = RandomizedResponse(truth, params, flip_rng);
    out.inst = MakeDcgInstance(std::move(w), cfg.n, std::move(rr.p_hat),
                               GroupStructure::kDisjoint, std::move(truth));
    out.imputed = std::move(rr.noisy);
  } else {
    out.inst = ParseInstance(ReadFile(cfg.instance_path));
    if (!out.inst.truth) Invalid("experiment instances need ground truth");
    out.imputed = ImputeBayes(out.inst.P, out.inst.structure);
  }
  return out;
}

std::vector<ExperimentRow> RunExperiment(const ExperimentConfig& raw) {
  ValidateExperimentConfig(raw);
  const ExperimentConfig cfg = ResolveTau(raw);
  std::vector<ExperimentRow> rows;
  std::mutex mu;
  std::exception_ptr failure;

  auto run_iteration = [&](size_t iter) {
    const ExperimentInstance drawn = DrawExperimentInstance(cfg, iter);
    const Instance& inst = drawn.inst;
    const GroupSample& truth = *inst.truth;
    const std::vector<size_t> sizes = truth.GroupSizes();
    const std::vector<double> phis = cfg.phi.empty() ? DefaultPhiGrid(inst.p) : cfg.phi;
    std::vector<ExperimentRow> local;
    for (size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const std::string& algo = cfg.algorithms[a];
      for (size_t f = 0; f < phis.size(); ++f) {
        const double phi = phis[f];
        ExperimentRow row;
        row.algorithm = algo;
        row.phi = phi;
        row.iter = iter;
        row.seed = drawn.seed;
        const uint64_t algo_seed = DeriveSeed(cfg.seed, 1 + a, iter, f);
        if (algo == "gak" && std::abs(phi - 1.0) > 1e-12) {
          row.status = "skipped";
          local.push_back(std::move(row));
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
          const Matrix U = UPhi(inst.n, inst.p, phi);
          Ranking r;
          if (algo == "nresilient") {
            FairnessSpec spec;
            spec.U = U;
            spec.gamma_mode = cfg.gamma_mode;
            spec.psi = cfg.psi;
            spec.c = cfg.c;
            spec.delta = cfg.delta;
            spec.d = cfg.d;
            NResilientOptions options;
            options.t = cfg.t;
            r = NResilient(inst, spec, algo_seed, options);
          } else if (algo == "uncons") {
            r = Uncons(inst);
          } else if (algo == "csv") {
            r = CsvGreedy(inst, drawn.imputed, U);
          } else if (algo == "sj") {
            r = SjSample(inst, drawn.imputed, U, algo_seed);
          } else if (algo == "gak") {
            r = GakDetGreedy(inst, drawn.imputed,
                             std::vector<double>(inst.p, 1.0 / static_cast<double>(inst.p)));
          } else {
            r = McBaseline(inst, U, algo_seed);
          }
          const auto has = [&](const char* name) {
            return std::find(cfg.metrics.begin(), cfg.metrics.end(), name) != cfg.metrics.end();
          };
          if (has("rd")) row.rd = WeightedRd(r, truth);
          if (has("sl")) row.sl = WeightedSl(r, truth);
          if (has("prop_rd")) row.prop_rd = PropRd(r, truth, sizes);
          if (has("ndcg")) row.ndcg = Ndcg(r, inst);
          if (has("utility")) row.utility = Utility(r, inst.W);
          row.status = "ok";
        } catch (const Error& e) {
          switch (e.code()) {
            case ErrorCode::kStuck: row.status = "stuck"; break;
            case ErrorCode::kInfeasible: row.status = "infeasible"; break;
            default: row.status = "error"; break;
          }
        }
        if (cfg.timing) {
          row.runtime_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        }
        local.push_back(std::move(row));
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    rows.insert(rows.end(), std::make_move_iterator(local.begin()),
                std::make_move_iterator(local.end()));
  };

  const size_t workers = std::min(cfg.threads, cfg.iterations);
  if (workers <= 1) {
    for (size_t iter = 0; iter < cfg.iterations; ++iter) run_iteration(iter);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t iter = w; iter < cfg.iterations; iter += workers) run_iteration(iter);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::tie(a.algorithm, a.phi, a.iter) < std::tie(b.algorithm, b.phi, b.iter);
  });
  return rows;
}

std::string FormatCsv(const std::vector<ExperimentRow>& rows) {
  std::string out(kCsvHeader);
  out += "\n";
  auto opt = [](const std::optional<double>& x) { return x ? FormatNumber(*x) : std::string(); };
  for (const auto& r : rows) {
    out += r.algorithm + "," + FormatNumber(r.phi) + "," + std::to_string(r.iter) + "," +
           std::to_string(r.seed) + "," + opt(r.rd) + "," + opt(r.sl) + "," + opt(r.prop_rd) +
           "," + opt(r.ndcg) + "," + opt(r.utility) + "," + opt(r.runtime_ms) + "," + r.status +
           "\n";
  }
  return out;
}

}  // namespace noisyfair
