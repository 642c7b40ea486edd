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

#ifndef NOISYFAIR_RNG_H_
#define NOISYFAIR_RNG_H_

#include <cstddef>
#include <cstdint>
#include <span>

namespace noisyfair {

// Mixes a 64-bit word (SplitMix64 finalizer).
uint64_t Mix64(uint64_t x);

// Combines a base seed with stream coordinates into an independent seed.
uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0);

// Counter-based generator: the i-th draw is Mix64(key + i * golden), so a
// stream is fully determined by its key and can be split without sharing
// state. All transforms to floating point are implemented here rather than
// via <random> distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal via Box-Muller (one value per call, the pair is cached).
  double Normal();
  bool Bernoulli(double p);
  // Uniform integer in [0, n); n must be positive.
  size_t UniformIndex(size_t n);
  // Index drawn proportionally to weights (nonnegative, positive total).
  size_t Categorical(std::span<const double> weights);

  // A child generator whose stream is independent of this one's.
  Rng Split(uint64_t stream) const;

  uint64_t key() const { return key_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace noisyfair

#endif  // NOISYFAIR_RNG_H_
