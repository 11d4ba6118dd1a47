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

#ifndef QFE_SIMULATOR_H_
#define QFE_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfe/ir.h"
#include "qfe/outcome.h"

namespace qfe {

using Distribution = std::map<std::string, double>;

// Execution counts per instruction; instructions that never ran are absent.
using CoverageMap = std::map<NodePath, std::uint64_t>;

std::uint64_t coverage_of(const CoverageMap& coverage, const NodePath& node);

struct ExecLimits {
  // Iterations allowed per loop instruction per shot.
  std::uint64_t loop_fuel = 10000;
  // Measurement branches at or below this probability are impossible.
  double prune_eps = 1e-12;
};

namespace internal {
struct SamplerTree;
}

// Shot-based executor for one program. Shot k draws its measurement
// randomness from a stream derived from (seed, k) only, so results do not
// depend on how shots are batched. Distinct measurement histories are
// simulated once and cached; later shots that follow a cached history replay
// the recorded branch probabilities with their own random draws.
class ShotSampler : public CountsSampler {
 public:
  ShotSampler(Program program, std::uint64_t seed, ExecLimits limits = {});
  ~ShotSampler() override;
  ShotSampler(ShotSampler&&) noexcept;
  ShotSampler& operator=(ShotSampler&&) noexcept;

  // Counts for the next `shots` shots, or the error of the first failing
  // shot (the sampler stays failed afterwards).
  ExecOutcome draw(std::uint64_t shots) override;

  CoverageMap coverage() const;
  std::uint64_t shots_drawn() const { return next_shot_; }
  const Program& program() const { return program_; }

 private:
  Program program_;
  std::uint64_t seed_;
  ExecLimits limits_;
  std::uint64_t next_shot_ = 0;
  std::unique_ptr<internal::SamplerTree> tree_;
};

struct RunResult {
  ExecOutcome outcome;
  CoverageMap coverage;
};

RunResult run(const Program& program, std::uint64_t shots, std::uint64_t seed,
              const ExecLimits& limits = {});

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationCaps {
  unsigned max_qubits = 20;
  std::uint64_t max_paths = 1u << 16;
  std::uint64_t fuel = 10000;
  double prune_eps = 1e-12;
};

struct Enumeration {
  Distribution distribution;
  // Executions summed over explored paths of probability > prune_eps.
  CoverageMap coverage;
  // For every Measure that ran: the largest probability of the less likely
  // outcome seen at any execution. Zero (up to prune_eps) means the outcome
  // was deterministic on every path.
  std::map<NodePath, double> measure_min_branch;
  std::uint64_t paths = 0;
};

// Exact output distribution by branching at every measurement and reset.
// Throws EnumerationError when a cap is exceeded, including loop fuel.
Enumeration enumerate_distribution(const Program& program,
                                   const EnumerationCaps& caps = {});

// Bitstring of `width` bits, most significant first.
std::string bitstring(std::uint64_t value, std::uint32_t width);

}  // namespace qfe

#endif  // QFE_SIMULATOR_H_
