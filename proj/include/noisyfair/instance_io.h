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

// JSON formats. Instances: {m, n, p, structure, w | W, P, truth?}.
// Rankings: {"slots": [...]}, items 1-based.

#ifndef NOISYFAIR_INSTANCE_IO_H_
#define NOISYFAIR_INSTANCE_IO_H_

#include <string>
#include <string_view>

#include "noisyfair/core.h"
#include "noisyfair/metrics.h"

namespace noisyfair {

Instance ParseInstance(std::string_view text);
std::string SerializeInstance(const Instance& inst);

Ranking ParseRanking(std::string_view text);
std::string SerializeRanking(const Ranking& r);

std::string SerializeMetricReport(const MetricReport& report);

// File helpers; failures raise kIoError.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace noisyfair

#endif  // NOISYFAIR_INSTANCE_IO_H_
