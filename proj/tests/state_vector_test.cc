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

#include "qfe/state_vector.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qfe/rng.h"

namespace qfe {
namespace {

double max_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

StateVector scrambled(unsigned n, std::uint64_t seed) {
  StateVector s(n);
  Rng r(seed);
  for (unsigned q = 0; q < n; ++q) {
    s.apply_1q(gates::ry(r.uniform(0, 6.28)), q);
    s.apply_1q(gates::rz(r.uniform(0, 6.28)), q);
  }
  return s;
}

TEST(StateVectorTest, StartsInAllZeros) {
  StateVector s(3);
  EXPECT_EQ(s.amplitudes().size(), 8u);
  EXPECT_EQ(s.amplitudes()[0], Amplitude(1));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(StateVectorTest, QubitZeroIsLeastSignificant) {
  StateVector s(3);
  s.apply_1q(gates::x(), 0);
  EXPECT_EQ(s.amplitudes()[1], Amplitude(1));
  s.apply_1q(gates::x(), 2);
  EXPECT_EQ(s.amplitudes()[5], Amplitude(1));
}

TEST(StateVectorTest, SelfInverseGatesRestoreState) {
  StateVector s = scrambled(4, 1);
  const std::vector<Amplitude> before(s.amplitudes().begin(), s.amplitudes().end());
  s.apply_1q(gates::x(), 1);
  s.apply_1q(gates::x(), 1);
  EXPECT_LE(max_diff(s.amplitudes(), before), 1e-12);
  s.apply_1q(gates::h(), 2);
  s.apply_1q(gates::h(), 2);
  EXPECT_LE(max_diff(s.amplitudes(), before), 1e-12);
  s.apply_1q(gates::x(), 3, 1u << 0, 1u << 0);  // CX 0 -> 3
  s.apply_1q(gates::x(), 3, 1u << 0, 1u << 0);
  EXPECT_LE(max_diff(s.amplitudes(), before), 1e-12);
  s.apply_1q(gates::rz(1.234), 0);
  s.apply_1q(gates::rz(-1.234), 0);
  EXPECT_LE(max_diff(s.amplitudes(), before), 1e-12);
  s.apply_zz(0.7, 0, 2);
  s.apply_zz(-0.7, 0, 2);
  EXPECT_LE(max_diff(s.amplitudes(), before), 1e-12);
  s.apply_swap(1, 3);
  s.apply_swap(1, 3);
  EXPECT_LE(max_diff(s.amplitudes(), before), 1e-12);
}

TEST(StateVectorTest, NormDriftOverThousandsOfGates) {
  StateVector s(5);
  Rng r(8);
  for (int i = 0; i < 3000; ++i) {
    const unsigned q = static_cast<unsigned>(r.below(5));
    switch (r.below(4)) {
      case 0: s.apply_1q(gates::h(), q); break;
      case 1: s.apply_1q(gates::rx(r.uniform(0, 6.28)), q); break;
      case 2: s.apply_zz(r.uniform(0, 6.28), q, (q + 1) % 5); break;
      default: s.apply_1q(gates::t(), q, 1u << ((q + 2) % 5), 1u << ((q + 2) % 5)); break;
    }
  }
  EXPECT_NEAR(s.norm_squared(), 1.0, 3e-9);
}

TEST(StateVectorTest, RotationMatchesClosedForm) {
  StateVector s(1);
  s.apply_1q(gates::ry(std::numbers::pi / 3), 0);
  const auto p = s.outcome_probabilities(0);
  EXPECT_NEAR(p[1], std::pow(std::sin(std::numbers::pi / 6), 2), 1e-15);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
}

TEST(StateVectorTest, CollapseRenormalizes) {
  StateVector s(2);
  s.apply_1q(gates::h(), 0);
  s.apply_1q(gates::x(), 1, 1, 1);
  s.collapse(0, 1);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()[3]), 1.0, 1e-15);
  s.flip(1);
  EXPECT_NEAR(std::abs(s.amplitudes()[1]), 1.0, 1e-15);
}

TEST(StateVectorTest, ControlledGateOnlyTouchesSubspace) {
  StateVector s(3);
  s.apply_1q(gates::h(), 0);
  // Controlled on qubits 1,2 reading 0b11: never satisfied here.
  s.apply_1q(gates::x(), 0, 0b110, 0b110);
  EXPECT_DOUBLE_EQ(s.subspace_weight(0b110, 0b110), 0.0);
  EXPECT_NEAR(s.subspace_weight(0b001, 0b001), 0.5, 1e-15);
}

}  // namespace
}  // namespace qfe
