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

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace qfe {
namespace {

// Independent closed form of the shot bound, written out with long double.
long double oracle_bound(long double delta, long double n) {
  const long double a = std::pow(n, 2.0L / 3) / std::pow(delta, 8.0L / 3);
  const long double b = std::pow(n, 3.0L / 4) / (delta * delta);
  return std::min(a, b);
}

std::uint64_t oracle_ceil(long double x) {
  const long double r = std::round(x);
  if (std::abs(x - r) < 1e-9L * r) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

// Every draw lands on one fixed key.
class FixedSampler : public CountsSampler {
 public:
  explicit FixedSampler(std::string key) : key_(std::move(key)) {}
  ExecOutcome draw(std::uint64_t shots) override {
    ++draws;
    Counts c;
    c.add(key_, shots);
    return c;
  }
  int draws = 0;

 private:
  std::string key_;
};

class FailingSampler : public CountsSampler {
 public:
  ExecOutcome draw(std::uint64_t) override {
    return ErrorRecord::make(ErrorKind::kPass, "boom 12");
  }
};

Distribution random_distribution(std::mt19937_64& eng, int k) {
  std::uniform_real_distribution<double> u(0, 1);
  Distribution d;
  double sum = 0;
  for (int i = 0; i < k; ++i) sum += d[std::to_string(i)] = u(eng);
  for (auto& [_, v] : d) v /= sum;
  return d;
}

TEST(HellingerTest, KnownValues) {
  EXPECT_DOUBLE_EQ(hellinger({{"0", 1.0}}, {{"0", 1.0}}), 0.0);
  EXPECT_DOUBLE_EQ(hellinger({{"0", 1.0}}, {{"1", 1.0}}), 1.0);
  const double h = hellinger({{"0", 0.5}, {"1", 0.5}}, {{"0", 1.0}});
  EXPECT_NEAR(h, std::sqrt(1 - std::sqrt(0.5)), 1e-12);
  EXPECT_NEAR(h, 0.541196, 1e-6);
}

TEST(HellingerTest, RejectsUnnormalizedInput) {
  EXPECT_THROW(hellinger({{"0", 0.9}}, {{"0", 1.0}}), NormalizationError);
  EXPECT_THROW(hellinger({{"0", 1.0}}, {{"0", 0.5}, {"1", 0.6}}), NormalizationError);
  EXPECT_NO_THROW(hellinger({{"0", 1.0 + 5e-7}}, {{"0", 1.0}}));
  EXPECT_THROW(normalize(Counts{}), NormalizationError);
}

TEST(HellingerTest, MetricProperties) {
  std::mt19937_64 eng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + trial % 8;
    const auto p = random_distribution(eng, k);
    const auto q = random_distribution(eng, k);
    const auto r = random_distribution(eng, k);
    const double pq = hellinger(p, q);
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0);
    EXPECT_NEAR(pq, hellinger(q, p), 1e-15);
    EXPECT_NEAR(hellinger(p, p), 0.0, 1e-7);
    EXPECT_LE(pq, hellinger(p, r) + hellinger(r, q) + 1e-12);
    // Relabel outcomes with the same permutation on both sides.
    Distribution pp, qq;
    for (const auto& [key, v] : p) pp["x" + key] = v;
    for (const auto& [key, v] : q) qq["x" + key] = v;
    EXPECT_NEAR(hellinger(pp, qq), pq, 1e-15);
  }
}

TEST(HellingerTest, CountsAreNormalizedFirst) {
  Counts a, b;
  a.add("0", 30);
  a.add("1", 10);
  b.add("0", 3);
  b.add("1", 1);
  EXPECT_NEAR(hellinger_counts(a, b), 0.0, 1e-7);
}

TEST(BudgetTest, FrozenValues) {
  // Frozen from oracle_bound; checked below against it.
  struct Row {
    std::uint32_t n;
    std::uint64_t s_round, s_std, s_max;
  };
  for (const Row& row : {Row{5, 367, 1346, 2692}, Row{6, 476, 2263, 4526}, Row{8, 800, 6400, 12800}}) {
    const auto b = budget(0.1, row.n);
    EXPECT_EQ(b.s_round, row.s_round) << row.n;
    EXPECT_EQ(b.s_std, row.s_std) << row.n;
    EXPECT_EQ(b.s_max, row.s_max) << row.n;
    EXPECT_EQ(oracle_ceil(oracle_bound(0.1L, std::pow(2.0L, row.n))), row.s_std);
    EXPECT_EQ(oracle_ceil(oracle_bound(0.1L, std::pow(2.0L, row.n / 2.0L))), row.s_round);
  }
}

TEST(BudgetTest, MatchesOracleAcrossGrid) {
  for (double delta : {0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.9}) {
    for (std::uint32_t n = 1; n <= 30; ++n) {
      const auto b = budget(delta, n);
      EXPECT_EQ(b.s_std, oracle_ceil(oracle_bound(delta, std::pow(2.0L, n)))) << delta << " " << n;
      EXPECT_EQ(b.s_round, oracle_ceil(oracle_bound(delta, std::pow(2.0L, n / 2.0L))));
      EXPECT_EQ(b.s_max, 2 * b.s_std);
      EXPECT_LE(b.s_round, b.s_std);
      EXPECT_GE(b.max_rounds(), 2u);
    }
  }
}

TEST(BudgetTest, BothBranchesOfTheMinimum) {
  // The first term wins once N^(1/12) > delta^(-2/3).
  EXPECT_NEAR(sample_bound(0.9, 4), std::pow(4.0, 2.0 / 3) / std::pow(0.9, 8.0 / 3), 1e-9);
  EXPECT_NEAR(sample_bound(0.9, 2), std::pow(2.0, 0.75) / 0.81, 1e-9);
  EXPECT_NEAR(sample_bound(0.1, 1024), std::pow(1024.0, 0.75) / 0.01, 1e-9);
}

TEST(BudgetTest, Monotone) {
  for (std::uint32_t n = 1; n < 40; ++n) {
    EXPECT_LE(budget(0.1, n).s_std, budget(0.1, n + 1).s_std);
  }
  for (double d = 0.05; d < 0.9; d += 0.05) {
    EXPECT_GE(budget(d, 6).s_std, budget(d + 0.05, 6).s_std);
  }
}

TEST(BudgetTest, DomainErrors) {
  EXPECT_THROW(budget(0.0, 5), DomainError);
  EXPECT_THROW(budget(1.0, 5), DomainError);
  EXPECT_THROW(budget(-0.1, 5), DomainError);
  EXPECT_THROW(budget(0.1, 0), DomainError);
  EXPECT_THROW(budget(0.1, 64), DomainError);
  EXPECT_THROW(budget(std::nan(""), 5), DomainError);
}

TEST(CeilShotsTest, AbsorbsFloatNoise) {
  EXPECT_EQ(ceil_shots(6400.000000000001), 6400u);
  EXPECT_EQ(ceil_shots(6399.999999999999), 6400u);
  EXPECT_EQ(ceil_shots(6400.01), 6401u);
  EXPECT_EQ(ceil_shots(2262.74), 2263u);
}

TEST(EarlyStopTest, IdenticalStopsAfterTwoRounds) {
  const auto b = budget(0.1, 6);
  FixedSampler x("000000"), y("000000");
  const auto r = early_stop_compare(x, y, b);
  EXPECT_TRUE(r.equivalent);
  EXPECT_EQ(r.rounds, 2u);
  EXPECT_EQ(r.total_shots, 952u);
  EXPECT_EQ(r.trace, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(r.counts_a.total, 952u);
  EXPECT_EQ(x.draws, 2);
}

TEST(EarlyStopTest, DisjointRunsToTheCap) {
  const auto b = budget(0.1, 6);
  FixedSampler x("000000"), y("111111");
  const auto r = early_stop_compare(x, y, b);
  EXPECT_FALSE(r.equivalent);
  EXPECT_EQ(r.rounds, 9u);
  EXPECT_EQ(r.total_shots, 4284u);
  EXPECT_LE(r.total_shots, b.s_max);
  EXPECT_DOUBLE_EQ(r.final_h, 1.0);
  EXPECT_EQ(r.trace.size(), r.rounds);
}

TEST(EarlyStopTest, NeedsTwoConsecutiveRoundsBelowDelta) {
  const auto b = budget(0.1, 6);
  FixedSampler x("0"), y("0");
  int calls = 0;
  const Metric alternating = [&](const Counts&, const Counts&) { return (calls++ % 2) ? 0.0 : 0.5; };
  const auto r = early_stop_compare(x, y, b, alternating);
  EXPECT_FALSE(r.equivalent);
  EXPECT_EQ(r.rounds, b.max_rounds());

  calls = 0;
  std::vector<double> seq{0.5, 0.05, 0.3, 0.05, 0.02};
  const Metric scripted = [&](const Counts&, const Counts&) { return seq[calls++]; };
  const auto s = early_stop_compare(x, y, b, scripted);
  EXPECT_TRUE(s.equivalent);
  EXPECT_EQ(s.rounds, 5u);
  EXPECT_EQ(s.trace, seq);
  EXPECT_DOUBLE_EQ(s.final_h, 0.02);
}

TEST(EarlyStopTest, FirstRoundCountsAreReused) {
  const auto b = budget(0.1, 6);
  FixedSampler x("0"), y("0");
  Counts first;
  first.add("0", b.s_round);
  const auto r = early_stop_compare(x, y, b, hellinger_counts, std::pair{first, first});
  EXPECT_TRUE(r.equivalent);
  EXPECT_EQ(x.draws, 1);
  EXPECT_EQ(r.total_shots, 2 * b.s_round);
}

TEST(EarlyStopTest, SamplerFailureIsReported) {
  const auto b = budget(0.1, 3);
  FixedSampler x("000");
  FailingSampler y;
  const auto r = early_stop_compare(x, y, b);
  EXPECT_FALSE(r.equivalent);
  ASSERT_TRUE(r.error_b.has_value());
  EXPECT_FALSE(r.error_a.has_value());
  EXPECT_EQ(r.error_b->normalized_signature, "PassError:boom <n>");
}

TEST(EarlyStopTest, FairCoinOnOneQubit) {
  Program p = testing::blank(1);
  p.body.push_back(testing::gate(GateKind::kH, {testing::qb(0)}));
  testing::measure_all(p, 1);
  const auto b = budget(0.1, 1);
  EXPECT_EQ(b.s_round, 130u);
  EXPECT_EQ(b.s_std, 169u);
  EXPECT_EQ(b.max_rounds(), 2u);
  ShotSampler x(p, 1), y(p, 2);
  const auto r = early_stop_compare(x, y, b);
  EXPECT_TRUE(r.equivalent);
  EXPECT_EQ(r.rounds, 2u);
  EXPECT_EQ(r.total_shots, 260u);
  EXPECT_LT(r.final_h, 0.1);
}

TEST(EarlyStopTest, InvariantsOverManyPairs) {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const auto b = budget(0.1, n);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Program p = testing::blank(n);
      for (std::uint32_t q = 0; q < n; ++q) p.body.push_back(testing::gate(GateKind::kH, {testing::qb(q)}));
      testing::measure_all(p, n);
      ShotSampler x(p, seed), y(p, seed + 1000);
      const auto r = early_stop_compare(x, y, b);
      EXPECT_EQ(r.trace.size(), r.rounds);
      EXPECT_EQ(r.total_shots, r.rounds * b.s_round);
      EXPECT_LE(r.total_shots, b.s_max);
      EXPECT_EQ(r.counts_a.total, r.total_shots);
      EXPECT_EQ(r.counts_b.total, r.total_shots);
      EXPECT_DOUBLE_EQ(r.final_h, r.trace.back());
      if (r.equivalent) {
        EXPECT_LT(r.trace[r.rounds - 1], 0.1);
        EXPECT_LT(r.trace[r.rounds - 2], 0.1);
      } else {
        EXPECT_GT((r.rounds + 1) * b.s_round, b.s_max);
      }
    }
  }
}

TEST(CompareErrorsTest, Labels) {
  const ExecOutcome ok = Counts{};
  const ExecOutcome e1 = ErrorRecord::make(ErrorKind::kPass, "failed at 0x1f in /a/b.py line 3");
  const ExecOutcome e2 = ErrorRecord::make(ErrorKind::kPass, "failed at 0x2e in /c/d.py line 9");
  const ExecOutcome e3 = ErrorRecord::make(ErrorKind::kInfiniteLoop, "failed at 0x2e in /c/d.py line 9");
  EXPECT_EQ(compare_errors(ok, ok), ErrorComparison::kBothOk);
  EXPECT_EQ(compare_errors(e1, e2), ErrorComparison::kSameError);
  EXPECT_EQ(compare_errors(e1, e3), ErrorComparison::kCrashDivergence);
  EXPECT_EQ(compare_errors(ok, e1), ErrorComparison::kCrashDivergence);
  EXPECT_EQ(compare_errors(e1, ok), ErrorComparison::kCrashDivergence);
  EXPECT_EQ(to_string(ErrorComparison::kSameError), "same-error");
}

TEST(SpeedupTest, Values) {
  const std::vector<std::uint64_t> early{952};
  EXPECT_NEAR(speedup_ratio(early, 2263), 1 - 952.0 / 2263, 1e-15);
  const std::vector<std::uint64_t> mixed{952, 952, 4284};
  EXPECT_NEAR(speedup_ratio(mixed, 2263), 1 - 6188.0 / (3 * 2263), 1e-15);
  EXPECT_THROW(speedup_ratio({}, 2263), DomainError);
  EXPECT_THROW(speedup_ratio(early, 0), DomainError);
}

}  // namespace
}  // namespace qfe
