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

// Deliberately broken passes. They are only reachable through a pipeline
// built with seeded bugs enabled.

#include <algorithm>

#include "pass_impl.h"

namespace qfe::passes {

// Commutation check that only looks at qubits.
void commute_skip_classical(Program& p) { commute_sort_impl(p, false); }

// Layers come out of the reverse traversal in reverse order and are never
// flipped back.
void alap_moment_order(Program& p) { schedule_alap_impl(p, true); }

namespace {

bool has_structured_control(const Instruction& instr) {
  if (instr.is<IfTest>() || instr.is<WhileLoop>() || instr.is<Switch>() ||
      instr.is<ControlledOnInt>()) {
    return true;
  }
  for (std::size_t s = 0; s < num_child_bodies(instr); ++s) {
    for (const auto& inner : *child_body(instr, s)) {
      if (has_structured_control(inner)) return true;
    }
  }
  return false;
}

}  // namespace

// Cancels a gate against its inverse inside each measurement-free block of
// the top level. Blocks holding branches are skipped without a word; a
// for-loop in any other block needs an inverse nobody wrote.
void inverse_for_loop(Program& p) {
  auto& body = p.body;
  std::size_t begin = 0;
  while (begin < body.size()) {
    if (body[begin].is<Measure>() || body[begin].is<Reset>()) {
      ++begin;
      continue;
    }
    std::size_t end = begin;
    while (end < body.size() && !body[end].is<Measure>() && !body[end].is<Reset>()) ++end;
    const bool skip = std::any_of(body.begin() + begin, body.begin() + end,
                                  [](const Instruction& i) { return has_structured_control(i); });
    if (!skip) {
      for (std::size_t i = begin; i < end; ++i) {
        if (body[i].is<ForRange>()) {
          throw PassFailure{ErrorKind::kPass, "inverse() not implemented for for_loop"};
        }
      }
      Body block(body.begin() + begin, body.begin() + end);
      Program tmp;
      tmp.body = std::move(block);
      cancel_inverses(tmp);
      const auto kept = tmp.body.size();
      body.erase(body.begin() + begin, body.begin() + end);
      body.insert(body.begin() + begin, tmp.body.begin(), tmp.body.end());
      end = begin + kept;
    }
    begin = end;
  }
}

namespace {

constexpr int kMaxSweeps = 10000;

bool touches_qubit(const Program& p, const Instruction& instr, std::uint32_t q) {
  const auto fp = footprint(p, instr);
  return std::binary_search(fp.qubits.begin(), fp.qubits.end(), q);
}

bool touches_clbit(const Program& p, const Instruction& instr, const ClbitRef& c) {
  const auto fp = footprint(p, instr);
  return std::binary_search(fp.reads.begin(), fp.reads.end(), c) ||
         std::binary_search(fp.writes.begin(), fp.writes.end(), c);
}

bool sink_measures(const Program& p, Body& body, bool in_loop) {
  bool changed = false;
  for (auto& instr : body) {
    const bool loop = in_loop || instr.is<WhileLoop>() || instr.is<ForRange>();
    for (std::size_t s = 0; s < num_child_bodies(instr); ++s) {
      changed |= sink_measures(p, *child_body(instr, s), loop);
    }
  }
  std::size_t tail = body.size();
  while (tail > 0 && body[tail - 1].is<Measure>()) --tail;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto* m = body[i].get_if<Measure>();
    if (!m) continue;
    // Outside loops only measurements ahead of the trailing run move.
    if (!in_loop && i >= tail) break;
    const auto q = p.global_index(m->qubit);
    bool free = true;
    for (std::size_t j = i + 1; j < body.size() && free; ++j) {
      free = !touches_qubit(p, body[j], q) && (in_loop || !touches_clbit(p, body[j], m->clbit));
    }
    if (!free) continue;
    Instruction moved = std::move(body[i]);
    body.erase(body.begin() + static_cast<std::ptrdiff_t>(i));
    body.push_back(std::move(moved));
    changed = true;
    if (!in_loop) --tail;
    break;
  }
  return changed;
}

}  // namespace

// Sinks measurements toward the end of their body until nothing moves.
void final_measure_loop(Program& p) {
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (!sink_measures(p, p.body, false)) return;
  }
  throw PassFailure{ErrorKind::kInfiniteLoop,
                    "final-measure removal did not settle after 10000 sweeps"};
}

void elide_empty_control_unaware(Program& p) {
  for_each_body(p.body, [](Body& body, bool) {
    for (const auto& instr : body) {
      if (instr.is<ControlledOnInt>()) {
        throw PassFailure{ErrorKind::kPass, "cannot elide unknown node controlled_on_int"};
      }
    }
  });
  elide_empty_control(p);
}

}  // namespace qfe::passes
