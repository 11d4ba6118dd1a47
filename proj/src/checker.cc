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

#include "qfe/checker.h"

#include <cmath>
#include <string>

namespace qfe {

namespace {

double total(const Distribution& d) {
  double s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

void check_normalized(const Distribution& d, const char* side) {
  const double s = total(d);
  if (!(std::abs(s - 1.0) <= 1e-6)) {
    throw NormalizationError(std::string(side) + " distribution sums to " + std::to_string(s));
  }
}

}  // namespace

double hellinger(const Distribution& p, const Distribution& q) {
  check_normalized(p, "first");
  check_normalized(q, "second");
  double sum = 0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    const double d = std::sqrt(v) - std::sqrt(it == q.end() ? 0.0 : it->second);
    sum += d * d;
  }
  for (const auto& [k, v] : q) {
    if (!p.count(k)) sum += v;
  }
  return std::min(1.0, std::sqrt(sum / 2));
}

Distribution normalize(const Counts& counts) {
  Distribution d;
  if (counts.total == 0) throw NormalizationError("empty histogram");
  const double t = static_cast<double>(counts.total);
  for (const auto& [k, n] : counts.histogram) d[k] = static_cast<double>(n) / t;
  return d;
}

double hellinger_counts(const Counts& a, const Counts& b) {
  return hellinger(normalize(a), normalize(b));
}

double sample_bound(double delta, double n_outcomes) {
  const double a = std::pow(n_outcomes, 2.0 / 3.0) / std::pow(delta, 8.0 / 3.0);
  const double b = std::pow(n_outcomes, 0.75) / (delta * delta);
  return std::min(a, b);
}

std::uint64_t ceil_shots(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

Budget budget(double delta, std::uint32_t n_qubits) {
  if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
  if (n_qubits < 1 || n_qubits > 63) throw DomainError("n_qubits must lie in [1, 63]");
  Budget b;
  b.delta = delta;
  b.n_qubits = n_qubits;
  b.n_outcomes = std::ldexp(1.0, static_cast<int>(n_qubits));
  b.s_std = std::max<std::uint64_t>(1, ceil_shots(sample_bound(delta, b.n_outcomes)));
  b.s_round = std::max<std::uint64_t>(1, ceil_shots(sample_bound(delta, std::sqrt(b.n_outcomes))));
  b.s_max = 2 * b.s_std;
  return b;
}

ConsistencyResult early_stop_compare(CountsSampler& a, CountsSampler& b, const Budget& budget,
                                     const Metric& metric,
                                     const std::optional<std::pair<Counts, Counts>>& first_round) {
  ConsistencyResult r;
  int below = 0;
  while ((r.rounds + 1) * budget.s_round <= budget.s_max) {
    if (r.rounds == 0 && first_round) {
      r.counts_a.merge(first_round->first);
      r.counts_b.merge(first_round->second);
    } else {
      ExecOutcome oa = a.draw(budget.s_round);
      ExecOutcome ob = b.draw(budget.s_round);
      if (!is_ok(oa)) r.error_a = error_of(oa);
      if (!is_ok(ob)) r.error_b = error_of(ob);
      if (r.error_a || r.error_b) return r;
      r.counts_a.merge(counts_of(oa));
      r.counts_b.merge(counts_of(ob));
    }
    ++r.rounds;
    r.total_shots += budget.s_round;
    r.final_h = metric(r.counts_a, r.counts_b);
    r.trace.push_back(r.final_h);
    below = r.final_h < budget.delta ? below + 1 : 0;
    if (below == 2) {
      r.equivalent = true;
      return r;
    }
  }
  return r;
}

std::string_view to_string(ErrorComparison c) {
  switch (c) {
    case ErrorComparison::kBothOk: return "both-ok";
    case ErrorComparison::kSameError: return "same-error";
    case ErrorComparison::kCrashDivergence: return "crash-divergence";
  }
  return "?";
}

ErrorComparison compare_errors(const ExecOutcome& a, const ExecOutcome& b) {
  if (is_ok(a) && is_ok(b)) return ErrorComparison::kBothOk;
  if (!is_ok(a) && !is_ok(b) &&
      error_of(a).normalized_signature == error_of(b).normalized_signature) {
    return ErrorComparison::kSameError;
  }
  return ErrorComparison::kCrashDivergence;
}

double speedup_ratio(std::span<const std::uint64_t> early_shots, std::uint64_t s_std) {
  if (early_shots.empty()) throw DomainError("speedup ratio of an empty list");
  if (s_std == 0) throw DomainError("s_std must be positive");
  long double sum = 0;
  for (auto s : early_shots) sum += s;
  return static_cast<double>(1.0L - sum / (static_cast<long double>(early_shots.size()) * s_std));
}

}  // namespace qfe
