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

// Seeded experiment harness: for every iteration one instance is drawn and
// shared by all phi values; every (algorithm, phi, iteration) becomes a CSV
// row.

#ifndef NOISYFAIR_EXPERIMENT_H_
#define NOISYFAIR_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noisyfair/core.h"

namespace noisyfair {

inline constexpr std::string_view kCsvHeader =
    "algorithm,phi,iter,seed,rd,sl,prop_rd,ndcg,utility,runtime_ms,status";

struct ExperimentConfig {
  // "nonuniform-fdr", "multigroup", "noise-sweep" or "file".
  std::string generator = "nonuniform-fdr";
  std::string instance_path;  // generator == "file"
  size_t m = 500;
  size_t n = 25;
  size_t p = 2;
  // nonuniform-fdr: tau directly, or calibrated to a target FDR gap.
  std::optional<double> tau;
  double target_gap = 0.30;
  // multigroup
  double fdr_low = 0.10;
  double fdr_high = 0.40;
  double mu2 = 0.45;
  // noise-sweep
  double eta = 0.0;
  double majority = 0.8;

  std::vector<std::string> algorithms = {"nresilient", "uncons", "csv", "sj", "gak", "mc"};
  std::vector<double> phi;  // empty: {p, ..., 1} default grid
  size_t iterations = 1;
  uint64_t seed = 0;
  GammaMode gamma_mode = GammaMode::kHeuristic;
  double psi = 0.5;
  double c = 1.5;
  double delta = 0.1;
  double d = 3.0;
  size_t t = 100;
  std::vector<std::string> metrics = {"rd", "sl", "prop_rd", "ndcg", "utility"};
  bool timing = false;  // runtime_ms stays blank unless set (keeps output byte-stable)
  std::string output;
  size_t threads = 1;
};

// Throws Error(kConfigInvalid) on any unknown key, bad type or bad value.
ExperimentConfig ParseExperimentConfig(std::string_view json_text);
void ValidateExperimentConfig(const ExperimentConfig& cfg);
std::vector<double> DefaultPhiGrid(size_t p);

struct ExperimentRow {
  std::string algorithm;
  double phi = 0.0;
  size_t iter = 0;
  uint64_t seed = 0;
  std::optional<double> rd, sl, prop_rd, ndcg, utility, runtime_ms;
  std::string status;  // ok | stuck | infeasible | skipped | error
};

std::vector<ExperimentRow> RunExperiment(const ExperimentConfig& cfg);
std::string FormatCsv(const std::vector<ExperimentRow>& rows);

// What the algorithms see for one iteration.
struct ExperimentInstance {
  Instance inst;         // P is the (possibly estimated) matrix, truth the real groups
  GroupSample imputed;   // groups given to CSV, SJ and GAK
  uint64_t seed = 0;
};
ExperimentInstance DrawExperimentInstance(const ExperimentConfig& cfg, size_t iter);

}  // namespace noisyfair

#endif  // NOISYFAIR_EXPERIMENT_H_
