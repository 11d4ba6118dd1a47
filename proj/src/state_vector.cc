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
#include <stdexcept>

namespace qfe {

StateVector::StateVector(unsigned num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  if (num_qubits > 30) throw std::invalid_argument("StateVector: too many qubits");
  amps_[0] = 1.0;
}

void StateVector::apply_1q(const Mat2& m, unsigned target, std::uint64_t ctrl_mask,
                           std::uint64_t ctrl_value) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  const std::uint64_t n = amps_.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i & bit) continue;
    if ((i & ctrl_mask) != ctrl_value) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_swap(unsigned a, unsigned b, std::uint64_t ctrl_mask,
                             std::uint64_t ctrl_value) {
  const std::uint64_t ba = std::uint64_t{1} << a;
  const std::uint64_t bb = std::uint64_t{1} << b;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    // Visit each |..1_a..0_b..> once and swap with |..0_a..1_b..>.
    if (!(i & ba) || (i & bb)) continue;
    if ((i & ctrl_mask) != ctrl_value) continue;
    const std::uint64_t j = (i & ~ba) | bb;
    std::swap(amps_[i], amps_[j]);
  }
}

void StateVector::apply_zz(double theta, unsigned a, unsigned b, std::uint64_t ctrl_mask,
                           std::uint64_t ctrl_value) {
  const Amplitude even = std::polar(1.0, -theta / 2);
  const Amplitude odd = std::polar(1.0, theta / 2);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & ctrl_mask) != ctrl_value) continue;
    const bool parity = ((i >> a) ^ (i >> b)) & 1;
    amps_[i] *= parity ? odd : even;
  }
}

std::array<double, 2> StateVector::outcome_probabilities(unsigned q) const {
  const std::uint64_t bit = std::uint64_t{1} << q;
  double p0 = 0, p1 = 0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    const double w = std::norm(amps_[i]);
    if (i & bit) p1 += w; else p0 += w;
  }
  const double total = p0 + p1;
  return {p0 / total, p1 / total};
}

void StateVector::collapse(unsigned q, int outcome) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  double kept = 0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (((i & bit) != 0) != (outcome != 0)) {
      amps_[i] = 0;
    } else {
      kept += std::norm(amps_[i]);
    }
  }
  if (!(kept > 0)) throw std::logic_error("collapse onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amps_) a *= scale;
}

void StateVector::flip(unsigned q) { apply_1q(gates::x(), q); }

double StateVector::norm_squared() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::subspace_weight(std::uint64_t mask, std::uint64_t value) const {
  double s = 0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == value) s += std::norm(amps_[i]);
  }
  return s;
}

namespace gates {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
const Amplitude kI(0, 1);
}  // namespace

Mat2 h() { return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}; }
Mat2 x() { return {0, 1, 1, 0}; }
Mat2 y() { return {0, -kI, kI, 0}; }
Mat2 z() { return {1, 0, 0, -1}; }
Mat2 s() { return {1, 0, 0, kI}; }
Mat2 sdg() { return {1, 0, 0, -kI}; }
Mat2 t() { return {1, 0, 0, std::polar(1.0, M_PI / 4)}; }
Mat2 tdg() { return {1, 0, 0, std::polar(1.0, -M_PI / 4)}; }

Mat2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -kI * s, -kI * s, c};
}

Mat2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -s, s, c};
}

Mat2 rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
}

}  // namespace gates
}  // namespace qfe
