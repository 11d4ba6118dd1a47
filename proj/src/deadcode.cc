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

#include "qfe/deadcode.h"

#include <string>

namespace qfe {

std::vector<PatternInfo> catalog() {
  std::vector<PatternInfo> out;
  for (int k = 0; k < kNumPatternKinds; ++k) {
    const auto kind = static_cast<PatternKind>(k);
    out.push_back({kind, pattern_category(kind), kind != PatternKind::kControlledOnIntDead});
  }
  return out;
}

DeadRegion rebase(DeadRegion region, const BodyPath& prefix, std::uint32_t offset) {
  auto& span = region.span;
  if (span.body.empty()) {
    span.begin += offset;
    span.end += offset;
  } else {
    span.body.front().index += offset;
  }
  span.body.insert(span.body.begin(), prefix.begin(), prefix.end());
  return region;
}

void splice(Fragment& outer, Fragment inner, std::uint32_t at) {
  const auto n = static_cast<std::uint32_t>(inner.body.size());
  for (auto& r : outer.regions) {
    auto& span = r.span;
    if (span.body.empty()) {
      if (span.begin >= at) {
        span.begin += n;
        span.end += n;
      }
    } else if (span.body.front().index >= at) {
      span.body.front().index += n;
    }
  }
  outer.body.insert(outer.body.begin() + at, std::make_move_iterator(inner.body.begin()),
                    std::make_move_iterator(inner.body.end()));
  for (auto& r : inner.regions) outer.regions.push_back(rebase(std::move(r), {}, at));
}

namespace {

bool escapes_loop(const Body& body) {
  for (const auto& instr : body) {
    if (instr.is<BreakLoop>() || instr.is<ContinueLoop>()) return true;
    if (instr.is<WhileLoop>() || instr.is<ForRange>()) continue;
    for (std::size_t s = 0; s < num_child_bodies(instr); ++s) {
      if (escapes_loop(*child_body(instr, s))) return true;
    }
  }
  return false;
}

struct Guard {
  QubitRef anc;
  ClbitRef cond;
};

Guard add_guard(PatternContext& ctx, Body& body) {
  const auto qr = ctx.program.add_qreg(1);
  const auto cr = ctx.program.add_creg(1);
  Guard g{{qr, 0}, {cr, 0}};
  body.emplace_back(GateOp{GateKind::kX, {}, {g.anc}});
  body.emplace_back(Measure{g.anc, g.cond});
  return g;
}

Instruction live_h(const PatternContext& ctx) { return GateOp{GateKind::kH, {}, {ctx.live}}; }

}  // namespace

Fragment instantiate(PatternKind kind, Fragment filler, PatternContext& ctx, Rng& rng,
                     const PatternOptions& options) {
  if (escapes_loop(filler.body)) {
    throw PatternError("filler contains a break or continue outside any loop");
  }
  const auto filler_size = static_cast<std::uint32_t>(filler.body.size());
  Fragment out;
  DeadRegion region;
  region.id = ctx.next_region_id++;
  region.kind = kind;
  std::uint32_t host = 0;       // index of the instruction owning the dead body
  std::uint32_t offset = 0;     // index of the first filler instruction there
  std::uint32_t slot = 0;

  switch (kind) {
    case PatternKind::kIfTestDead: {
      const Guard g = add_guard(ctx, out.body);
      IfTest it;
      it.cond = {{g.cond.reg, g.cond.offset}, 0};
      it.then_body = std::move(filler.body);
      it.else_body.push_back(live_h(ctx));
      host = static_cast<std::uint32_t>(out.body.size());
      out.body.emplace_back(std::move(it));
      region.ancilla_qubits = {g.anc};
      region.ancilla_clbits = {g.cond};
      break;
    }
    case PatternKind::kWhileDead: {
      const Guard g = add_guard(ctx, out.body);
      WhileLoop w;
      w.cond = {{g.cond.reg, g.cond.offset}, 0};
      w.body = std::move(filler.body);
      host = static_cast<std::uint32_t>(out.body.size());
      out.body.emplace_back(std::move(w));
      region.ancilla_qubits = {g.anc};
      region.ancilla_clbits = {g.cond};
      break;
    }
    case PatternKind::kSwitchDead: {
      const Guard g = add_guard(ctx, out.body);
      Switch sw;
      sw.subject = {g.cond.reg, std::nullopt};
      sw.cases.push_back({0, std::move(filler.body)});
      sw.cases.push_back({1, Body{live_h(ctx)}});
      host = static_cast<std::uint32_t>(out.body.size());
      out.body.emplace_back(std::move(sw));
      region.ancilla_qubits = {g.anc};
      region.ancilla_clbits = {g.cond};
      break;
    }
    case PatternKind::kForZero:
      out.body.emplace_back(ForRange{0, std::move(filler.body)});
      break;
    case PatternKind::kForContinue:
    case PatternKind::kForBreak: {
      if (options.loop_trip == 0) throw PatternError("loop trip count must be positive");
      ForRange f{options.loop_trip, {}};
      f.body.push_back(live_h(ctx));
      if (kind == PatternKind::kForContinue) {
        f.body.emplace_back(ContinueLoop{});
      } else {
        f.body.emplace_back(BreakLoop{});
      }
      offset = 2;
      for (auto& instr : filler.body) f.body.push_back(std::move(instr));
      out.body.emplace_back(std::move(f));
      break;
    }
    case PatternKind::kControlledOnIntDead: {
      if (!filler.regions.empty()) throw PatternError("controlled-on-int body cannot nest regions");
      for (const auto& instr : filler.body) {
        if (!instr.is<GateOp>()) throw PatternError("controlled-on-int body must be gates only");
      }
      const std::uint32_t w = options.ctrl_width;
      if (w == 0 || w > 16) throw PatternError("bad control width " + std::to_string(w));
      const std::uint64_t top = (std::uint64_t{1} << w) - 1;
      std::uint64_t v;
      if (options.ctrl_value) {
        v = *options.ctrl_value;
        if (v == 0 || v > top) throw PatternError("control value must be in [1, 2^w - 1]");
      } else {
        v = 1 + rng.below(top);
      }
      const auto qr = ctx.program.add_qreg(w);
      ControlledOnInt coi;
      coi.value = v;
      for (std::uint32_t k = 0; k < w; ++k) coi.ctrl.push_back({qr, k});
      coi.body = std::move(filler.body);
      region.ancilla_qubits = coi.ctrl;
      out.body.emplace_back(std::move(coi));
      break;
    }
  }

  const BodyPath prefix{{host, slot}};
  for (auto& r : filler.regions) out.regions.push_back(rebase(std::move(r), prefix, offset));
  region.span = {prefix, offset, offset + filler_size};
  out.regions.push_back(std::move(region));
  return out;
}

}  // namespace qfe
