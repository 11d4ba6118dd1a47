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

#ifndef QFE_DEADCODE_H_
#define QFE_DEADCODE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qfe/ir.h"
#include "qfe/rng.h"

namespace qfe {

class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PatternInfo {
  PatternKind kind;
  PatternCategory category;
  // Whether another pattern may be nested inside the dead span.
  bool admits_nesting;
};

// All pattern kinds, in enum order.
std::vector<PatternInfo> catalog();

// A detached instruction list plus the dead regions inside it. Region spans
// are relative to `body`.
struct Fragment {
  Body body;
  std::vector<DeadRegion> regions;
};

// Registers for ancillas are appended to `program`; the live qubit hosts
// the executed side of guard patterns (the else branch, the other switch
// case, the loop prologue).
struct PatternContext {
  Program& program;
  QubitRef live;
  std::uint32_t next_region_id = 0;
};

struct PatternOptions {
  std::uint32_t loop_trip = 5;   // ForContinue / ForBreak
  std::uint32_t ctrl_width = 3;  // ControlledOnIntDead
  std::optional<std::uint64_t> ctrl_value;
};

// Wraps `filler` in the template for `kind`. The returned fragment lists the
// new region last, after the filler's own regions.
Fragment instantiate(PatternKind kind, Fragment filler, PatternContext& ctx, Rng& rng,
                     const PatternOptions& options = {});

// Moves `inner` into `outer` at index `at` of the fragment's top-level body,
// rebasing inner region spans.
void splice(Fragment& outer, Fragment inner, std::uint32_t at);

// Shifts region spans of a fragment placed under `prefix`, with its first
// instruction at index `offset` of that body.
DeadRegion rebase(DeadRegion region, const BodyPath& prefix, std::uint32_t offset);

}  // namespace qfe

#endif  // QFE_DEADCODE_H_
