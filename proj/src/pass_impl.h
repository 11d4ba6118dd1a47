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

#ifndef QFE_SRC_PASS_IMPL_H_
#define QFE_SRC_PASS_IMPL_H_

#include <string>
#include <vector>

#include "qfe/ir.h"
#include "qfe/outcome.h"

namespace qfe::passes {

struct PassFailure {
  ErrorKind kind;
  std::string message;
};

using PassFn = void (*)(Program&);

// Applies `fn` to every body in the tree, children before parents.
template <typename Fn>
void for_each_body(Body& body, Fn&& fn, bool in_coi = false) {
  for (auto& instr : body) {
    const bool coi = in_coi || instr.is<ControlledOnInt>();
    for (std::size_t s = 0; s < num_child_bodies(instr); ++s) {
      for_each_body(*child_body(instr, s), fn, coi);
    }
  }
  fn(body, in_coi);
}

bool commutes(const Footprint& a, const Footprint& b, bool respect_clbits);
bool qubits_overlap(const Footprint& a, const Footprint& b);
bool clbit_hazard(const Footprint& a, const Footprint& b);

void cancel_inverses(Program& p);
void elide_empty_control(Program& p);
void commute_sort_impl(Program& p, bool respect_clbits);
void schedule_alap_impl(Program& p, bool reverse_within_layer);

// Seeded bugs.
void commute_skip_classical(Program& p);
void alap_moment_order(Program& p);
void inverse_for_loop(Program& p);
void final_measure_loop(Program& p);
void elide_empty_control_unaware(Program& p);

}  // namespace qfe::passes

#endif  // QFE_SRC_PASS_IMPL_H_
