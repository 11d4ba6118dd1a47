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

#ifndef QFE_CHECKER_H_
#define QFE_CHECKER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qfe/outcome.h"
#include "qfe/simulator.h"

namespace qfe {

class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hellinger distance, 1/sqrt(2) * ||sqrt(P) - sqrt(Q)||_2 over the union of
// keys. Throws NormalizationError if either side sums outside 1 +- 1e-6.
double hellinger(const Distribution& p, const Distribution& q);

Distribution normalize(const Counts& counts);

// A distance between two empirical distributions: symmetric, in [0, 1] and
// zero exactly when the normalized histograms agree.
using Metric = std::function<double(const Counts&, const Counts&)>;

double hellinger_counts(const Counts& a, const Counts& b);

// min(N^(2/3) / delta^(8/3), N^(3/4) / delta^2)
double sample_bound(double delta, double n_outcomes);

struct Budget {
  double delta = 0;
  std::uint32_t n_qubits = 0;
  double n_outcomes = 0;  // 2^n
  std::uint64_t s_round = 0;
  std::uint64_t s_std = 0;
  std::uint64_t s_max = 0;

  // Rounds that fit under s_max.
  std::uint64_t max_rounds() const { return s_max / s_round; }
};

// Throws DomainError unless 0 < delta < 1 and 1 <= n_qubits <= 63.
Budget budget(double delta, std::uint32_t n_qubits);

// Smallest integer >= x, ignoring float noise below 1e-9 relative.
std::uint64_t ceil_shots(double x);

struct ConsistencyResult {
  bool equivalent = false;
  std::uint64_t total_shots = 0;  // per side
  std::uint64_t rounds = 0;
  double final_h = 0;
  std::vector<double> trace;
  Counts counts_a;
  Counts counts_b;
  // Set when a sampler failed mid-protocol; the result is then incomplete.
  std::optional<ErrorRecord> error_a;
  std::optional<ErrorRecord> error_b;
};

// Draws budget.s_round shots per side per round and compares the merged
// histograms. Equivalent once the distance stays below delta for two
// consecutive rounds; not equivalent once another round would pass s_max.
// `first_round`, when given, stands in for the first draw on each side.
ConsistencyResult early_stop_compare(CountsSampler& a, CountsSampler& b, const Budget& budget,
                                     const Metric& metric = hellinger_counts,
                                     const std::optional<std::pair<Counts, Counts>>& first_round =
                                         std::nullopt);

enum class ErrorComparison { kBothOk, kSameError, kCrashDivergence };

std::string_view to_string(ErrorComparison c);

ErrorComparison compare_errors(const ExecOutcome& a, const ExecOutcome& b);

// 1 - sum(early) / (T * s_std). Throws DomainError on an empty list or a zero
// s_std.
double speedup_ratio(std::span<const std::uint64_t> early_shots, std::uint64_t s_std);

}  // namespace qfe

#endif  // QFE_CHECKER_H_
