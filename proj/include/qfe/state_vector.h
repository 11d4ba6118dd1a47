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

#ifndef QFE_STATE_VECTOR_H_
#define QFE_STATE_VECTOR_H_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qfe {

using Amplitude = std::complex<double>;
using Mat2 = std::array<Amplitude, 4>;  // row-major

// Dense n-qubit state; qubit 0 is the least significant index bit. Every
// operation accepts an optional control condition: it acts only on basis
// states whose bits under `ctrl_mask` equal `ctrl_value`.
class StateVector {
 public:
  explicit StateVector(unsigned num_qubits);

  unsigned num_qubits() const { return num_qubits_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }

  void apply_1q(const Mat2& m, unsigned target, std::uint64_t ctrl_mask = 0,
                std::uint64_t ctrl_value = 0);
  void apply_swap(unsigned a, unsigned b, std::uint64_t ctrl_mask = 0,
                  std::uint64_t ctrl_value = 0);
  // exp(-i theta/2 Z_a Z_b)
  void apply_zz(double theta, unsigned a, unsigned b, std::uint64_t ctrl_mask = 0,
                std::uint64_t ctrl_value = 0);

  // Probabilities of reading 0 and 1 on `q`, normalized by the state norm.
  std::array<double, 2> outcome_probabilities(unsigned q) const;
  // Projects `q` onto `outcome` and renormalizes.
  void collapse(unsigned q, int outcome);
  void flip(unsigned q);

  double norm_squared() const;
  // Squared norm of the component whose bits under mask equal value.
  double subspace_weight(std::uint64_t mask, std::uint64_t value) const;

 private:
  unsigned num_qubits_;
  std::vector<Amplitude> amps_;
};

namespace gates {
Mat2 h();
Mat2 x();
Mat2 y();
Mat2 z();
Mat2 s();
Mat2 sdg();
Mat2 t();
Mat2 tdg();
Mat2 rx(double theta);
Mat2 ry(double theta);
Mat2 rz(double theta);
}  // namespace gates

}  // namespace qfe

#endif  // QFE_STATE_VECTOR_H_
