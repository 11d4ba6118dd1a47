// Copyright 2026 The qfe Authors
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

#ifndef QFE_RNG_H_
#define QFE_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace qfe {

// SplitMix64 finalizer. Used to derive independent seeds and as the
// counter-based per-shot measurement stream.
std::uint64_t mix64(std::uint64_t x);

// Derives a child seed from (parent, tag, index). Streams derived from
// distinct tags do not share state, so adding draws to one component never
// perturbs another.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag,
                          std::uint64_t index = 0);

// Sebastiano Vigna's SplitMix64 generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

 private:
  std::uint64_t state_;
};

// Program-generation stream: std::mt19937_64 with hand-written conversions so
// that draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Inclusive range.
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform01() < p; }
  // Index drawn proportionally to weights; at least one weight must be > 0.
  std::size_t weighted(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qfe

#endif  // QFE_RNG_H_
