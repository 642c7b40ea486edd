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

#include "noisyfair/instance_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

using nlohmann::json;

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIoError, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T Field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kIoError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIoError, std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  const json j = Parse(text);
  Instance inst;
  inst.m = Field<size_t>(j, "m");
  inst.n = Field<size_t>(j, "n");
  inst.p = Field<size_t>(j, "p");
  inst.structure = ParseGroupStructure(j.value("structure", std::string("disjoint")));
  inst.P = Matrix::FromRows(Field<std::vector<std::vector<double>>>(j, "P"));
  if (j.contains("w")) {
    std::vector<double> w = Field<std::vector<double>>(j, "w");
    inst.W = DcgUtilities(w, inst.n);
    inst.w = std::move(w);
  } else {
    inst.W = Matrix::FromRows(Field<std::vector<std::vector<double>>>(j, "W"));
  }
  if (j.contains("truth")) {
    inst.truth = GroupSample::FromRows(Field<std::vector<std::vector<int>>>(j, "truth"));
  }
  ValidateInstance(inst);
  return inst;
}

std::string SerializeInstance(const Instance& inst) {
  json j;
  j["m"] = inst.m;
  j["n"] = inst.n;
  j["p"] = inst.p;
  j["structure"] = std::string(GroupStructureName(inst.structure));
  if (inst.w) j["w"] = *inst.w;
  else j["W"] = inst.W.ToRows();
  j["P"] = inst.P.ToRows();
  if (inst.truth) {
    std::vector<std::vector<int>> rows(inst.truth->items(), std::vector<int>(inst.truth->groups()));
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t l = 0; l < rows[i].size(); ++l) rows[i][l] = inst.truth->Contains(i, l) ? 1 : 0;
    }
    j["truth"] = rows;
  }
  return j.dump() + "\n";
}

Ranking ParseRanking(std::string_view text) {
  const json j = Parse(text);
  Ranking r;
  for (long long item : Field<std::vector<long long>>(j, "slots")) {
    if (item < 1) throw Error(ErrorCode::kInvalidRanking, "ranking items are 1-based");
    r.slots.push_back(static_cast<size_t>(item - 1));
  }
  return r;
}

std::string SerializeRanking(const Ranking& r) {
  json j;
  std::vector<size_t> slots;
  for (size_t item : r.slots) slots.push_back(item + 1);
  j["slots"] = slots;
  return j.dump() + "\n";
}

std::string SerializeMetricReport(const MetricReport& report) {
  json j;
  j["rd"] = report.rd;
  j["sl"] = report.sl;
  j["prop_rd"] = report.prop_rd;
  j["ndcg"] = report.ndcg;
  j["utility"] = report.utility;
  j["checkpoints"] = report.checkpoints;
  return j.dump(2) + "\n";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to '" + path + "'");
}

}  // namespace noisyfair
