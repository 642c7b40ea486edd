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

// Command-line front end: generate / rank / evaluate / experiment.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "noisyfair/core.h"
#include "noisyfair/experiment.h"
#include "noisyfair/fairspec.h"
#include "noisyfair/instance_io.h"
#include "noisyfair/metrics.h"
#include "noisyfair/noiselab.h"
#include "noisyfair/rankers.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    WriteFile(path, text);
  }
}

struct GenerateArgs {
  std::string gen = "nonuniform-fdr";
  size_t m = 500;
  size_t n = 25;
  size_t p = 2;
  double tau = 0.0;
  double eta = 0.0;
  uint64_t seed = 0;
  std::string out;
};

void RunGenerate(const GenerateArgs& a) {
  Instance inst;
  if (a.gen == "half-half") {
    inst = HalfHalfInstance(a.m, std::min(a.n, a.m), a.p);
  } else if (a.gen == "nonuniform-fdr") {
    FdrSynthSpec spec;
    spec.m = a.m;
    spec.n = a.n;
    spec.tau = a.tau;
    inst = SynthNonuniformFdr(spec, a.seed);
  } else if (a.gen == "multigroup") {
    MultigroupSpec spec;
    spec.m = a.m;
    spec.n = a.n;
    spec.p = a.p;
    inst = SynthMultigroup(spec, a.seed);
  } else {
    ExperimentConfig cfg;
    cfg.generator = "noise-sweep";
    cfg.m = a.m;
    cfg.n = a.n;
    cfg.eta = a.eta;
    cfg.seed = a.seed;
    ValidateExperimentConfig(cfg);
    inst = DrawExperimentInstance(cfg, 0).inst;
  }
  Emit(a.out, SerializeInstance(inst));
}

struct RankArgs {
  std::string instance;
  std::string algo = "nresilient";
  std::optional<double> phi;
  std::string gamma_mode = "heuristic";
  double psi = 0.0;
  double c = 1.5;
  double delta = 0.1;
  double d = 3.0;
  size_t t = kDefaultSwapT;
  uint64_t seed = 0;
  std::string out;
};

void RunRank(const RankArgs& a) {
  const Instance inst = ParseInstance(ReadFile(a.instance));
  const Matrix U = UPhi(inst.n, inst.p, a.phi.value_or(1.0));
  Ranking r;
  if (a.algo == "uncons") {
    r = Uncons(inst);
  } else if (a.algo == "nresilient") {
    FairnessSpec spec;
    spec.U = U;
    spec.gamma_mode = ParseGammaMode(a.gamma_mode);
    spec.psi = a.psi;
    spec.c = a.c;
    spec.delta = a.delta;
    spec.d = a.d;
    NResilientOptions options;
    options.t = a.t;
    r = NResilient(inst, spec, a.seed, options);
  } else if (a.algo == "mc") {
    r = McBaseline(inst, U, a.seed);
  } else {
    const GroupSample imputed = ImputeBayes(inst.P, inst.structure);
    if (a.algo == "csv") {
      r = CsvGreedy(inst, imputed, U);
    } else if (a.algo == "sj") {
      r = SjSample(inst, imputed, U, a.seed);
    } else {
      r = GakDetGreedy(inst, imputed,
                       std::vector<double>(inst.p, 1.0 / static_cast<double>(inst.p)));
    }
  }
  Emit(a.out, SerializeRanking(r));
}

struct EvaluateArgs {
  std::string instance;
  std::string ranking;
  std::string out;
};

void RunEvaluate(const EvaluateArgs& a) {
  const Instance inst = ParseInstance(ReadFile(a.instance));
  if (!inst.truth) throw Error(ErrorCode::kInvalidArgument, "instance has no ground truth");
  const Ranking r = ParseRanking(ReadFile(a.ranking));
  CheckRanking(r, inst.m, inst.n);
  Emit(a.out, SerializeMetricReport(Evaluate(r, inst, *inst.truth)));
}

struct ExperimentArgs {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<size_t> threads;
  std::string out;
};

int RunExperimentCommand(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  try {
    cfg = ParseExperimentConfig(ReadFile(a.config));
    if (a.seed) cfg.seed = *a.seed;
    if (a.threads) cfg.threads = *a.threads;
    if (!a.out.empty()) cfg.output = a.out;
    ValidateExperimentConfig(cfg);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  Emit(cfg.output, FormatCsv(RunExperiment(cfg)));
  return 0;
}

bool IsUsageError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kPhiOutOfRange:
    case ErrorCode::kDeltaOutOfRange:
      return true;
    default:
      return false;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Fair ranking under noisy group labels"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance as JSON");
  generate->add_option("--gen", gen.gen, "Generator")
      ->check(CLI::IsMember({"nonuniform-fdr", "multigroup", "half-half", "noise-sweep"}));
  generate->add_option("--m", gen.m, "Number of items")->check(CLI::PositiveNumber);
  generate->add_option("--n", gen.n, "Number of slots")->check(CLI::PositiveNumber);
  generate->add_option("--p", gen.p, "Number of groups")->check(CLI::PositiveNumber);
  generate->add_option("--tau", gen.tau, "Label-noise skew")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--eta", gen.eta, "Flip probability")->check(CLI::Range(0.0, 0.4999));
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_option("--out", gen.out, "Output path (default stdout)");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank an instance");
  rank_cmd->add_option("--instance", rank.instance, "Instance JSON")->required();
  rank_cmd->add_option("--algo", rank.algo, "Algorithm")
      ->check(CLI::IsMember({"nresilient", "uncons", "csv", "sj", "gak", "mc"}));
  rank_cmd->add_option("--phi", rank.phi, "Fairness level in [1, p]");
  rank_cmd->add_option("--gamma-mode", rank.gamma_mode, "Gamma mode")
      ->check(CLI::IsMember({"theoretical", "improved", "position-weighted", "heuristic"}));
  rank_cmd->add_option("--psi", rank.psi, "Lower-bound ratio for improved modes");
  rank_cmd->add_option("--c", rank.c, "Relaxation constant (> 1)");
  rank_cmd->add_option("--delta", rank.delta, "Failure probability");
  rank_cmd->add_option("--d", rank.d, "Rounding parameter (> 2)");
  rank_cmd->add_option("--t", rank.t, "Swap-unit size")->check(CLI::PositiveNumber);
  rank_cmd->add_option("--seed", rank.seed, "Seed");
  rank_cmd->add_option("--out", rank.out, "Output path (default stdout)");

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score a ranking against ground truth");
  evaluate->add_option("--instance", eval.instance, "Instance JSON with truth")->required();
  evaluate->add_option("--ranking", eval.ranking, "Ranking JSON")->required();
  evaluate->add_option("--out", eval.out, "Output path (default stdout)");

  ExperimentArgs xp;
  auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment grid to CSV");
  experiment->add_option("--config", xp.config, "Config JSON")->required();
  experiment->add_option("--seed", xp.seed, "Base seed override");
  experiment->add_option("--out", xp.out, "Output CSV (default stdout)");
  experiment->add_option("--threads", xp.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*generate) RunGenerate(gen);
    if (*rank_cmd) RunRank(rank);
    if (*evaluate) RunEvaluate(eval);
    if (*experiment) return RunExperimentCommand(xp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return IsUsageError(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}

}  // namespace
}  // namespace noisyfair

int main(int argc, char** argv) { return noisyfair::Main(argc, argv); }
