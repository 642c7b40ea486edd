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

#ifndef NOISYFAIR_DECOMPOSE_H_
#define NOISYFAIR_DECOMPOSE_H_

#include "noisyfair/core.h"

namespace noisyfair {

// Birkhoff-von Neumann decomposition of an m x n fractional assignment.
//
// Items with zero row mass are dropped, the rest is padded to a square
// doubly stochastic matrix (item slack goes to dummy slots, northwest
// corner), and perfect matchings on the positive support are peeled off.
// Terms come back with distinct rankings, sorted by decreasing weight.
ConvexCombination BvnDecompose(const Matrix& X);

}  // namespace noisyfair

#endif  // NOISYFAIR_DECOMPOSE_H_
