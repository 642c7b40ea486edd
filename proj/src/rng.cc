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

#include "noisyfair/rng.h"

#include <cmath>
#include <numbers>

#include "noisyfair/status.h"

namespace noisyfair {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = Mix64(base + kGolden);
  h = Mix64(h ^ (a + 0x632BE59BD9B4E019ULL));
  h = Mix64(h ^ (b + 0x8CB92BA72F3D8DD7ULL));
  h = Mix64(h ^ (c + 0xD6E8FEB86659FD93ULL));
  return h;
}

Rng::Rng(uint64_t seed, uint64_t stream)
    : key_(Mix64(Mix64(seed) ^ Mix64(stream + kGolden))) {}

uint64_t Rng::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

double Rng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double Rng::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

bool Rng::Bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return Uniform() < p;
}

size_t Rng::UniformIndex(size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "UniformIndex(0)");
  // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
  const unsigned __int128 product =
      static_cast<unsigned __int128>(NextU64()) * static_cast<unsigned __int128>(n);
  return static_cast<size_t>(product >> 64);
}

size_t Rng::Categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "categorical weights sum to zero");
  }
  const double target = Uniform() * total;
  double running = 0.0;
  size_t last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    running += weights[i];
    if (target < running) return i;
  }
  return last_positive;
}

Rng Rng::Split(uint64_t stream) const { return Rng(key_, stream + 1); }

}  // namespace noisyfair
