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

#include "qfe/passes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "pass_impl.h"

namespace qfe {

namespace passes {

namespace {

template <typename T>
bool intersects(const std::vector<T>& a, const std::vector<T>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace

bool qubits_overlap(const Footprint& a, const Footprint& b) {
  return intersects(a.qubits, b.qubits);
}

bool clbit_hazard(const Footprint& a, const Footprint& b) {
  return intersects(a.writes, b.writes) || intersects(a.writes, b.reads) ||
         intersects(a.reads, b.writes);
}

bool commutes(const Footprint& a, const Footprint& b, bool respect_clbits) {
  if (a.loop_control || b.loop_control) return false;
  if (qubits_overlap(a, b)) return false;
  return !respect_clbits || !clbit_hazard(a, b);
}

void cancel_inverses(Program& p) {
  for_each_body(p.body, [](Body& body, bool) {
    Body out;
    for (auto& instr : body) {
      if (!out.empty() && instr.is<GateOp>() && out.back().is<GateOp>() &&
          inverse(out.back().as<GateOp>()) == instr.as<GateOp>()) {
        out.pop_back();
        continue;
      }
      out.push_back(std::move(instr));
    }
    body = std::move(out);
  });
}

namespace {

bool same_rotation_site(const GateOp& a, const GateOp& b) {
  if (a.kind != b.kind || !is_rotation(a.kind)) return false;
  if (a.targets == b.targets) return true;
  return a.kind == GateKind::kRzz && a.targets[0] == b.targets[1] && a.targets[1] == b.targets[0];
}

void merge_rotations(Program& p) {
  constexpr double kTwoPi = 2 * std::numbers::pi;
  for_each_body(p.body, [](Body& body, bool in_coi) {
    // Wrapping modulo 2*pi changes a global phase, which a controlled body
    // would turn into a relative one.
    if (in_coi) return;
    Body out;
    for (auto& instr : body) {
      if (const auto* g = instr.get_if<GateOp>(); g && is_rotation(g->kind)) {
        if (g->params[0] == 0.0) continue;
        if (!out.empty() && out.back().is<GateOp>() &&
            same_rotation_site(out.back().as<GateOp>(), *g)) {
          auto& prev = std::get<GateOp>(out.back().node);
          double a = std::fmod(prev.params[0] + g->params[0], kTwoPi);
          if (a < 0) a += kTwoPi;
          prev.params[0] = a;
          if (a == 0.0) out.pop_back();
          continue;
        }
      }
      out.push_back(std::move(instr));
    }
    body = std::move(out);
  });
}

}  // namespace

void elide_empty_control(Program& p) {
  for_each_body(p.body, [](Body& body, bool) {
    std::erase_if(body, [](const Instruction& instr) {
      if (const auto* it = instr.get_if<IfTest>()) {
        return it->then_body.empty() && it->else_body.empty();
      }
      if (const auto* f = instr.get_if<ForRange>()) return f->body.empty();
      if (const auto* s = instr.get_if<Switch>()) {
        return s->default_body.empty() &&
               std::all_of(s->cases.begin(), s->cases.end(),
                           [](const SwitchCase& c) { return c.body.empty(); });
      }
      if (const auto* c = instr.get_if<ControlledOnInt>()) return c->body.empty();
      return false;
    });
  });
}

namespace {

void canonicalize_final_measures(Program& p) {
  auto& body = p.body;
  std::size_t t = body.size();
  while (t > 0 && body[t - 1].is<Measure>()) --t;
  std::vector<Measure> tail;
  for (std::size_t i = t; i < body.size(); ++i) tail.push_back(body[i].as<Measure>());
  std::vector<std::uint32_t> qs;
  std::vector<ClbitRef> cs;
  for (const auto& m : tail) {
    qs.push_back(p.global_index(m.qubit));
    cs.push_back(m.clbit);
  }
  std::sort(qs.begin(), qs.end());
  std::sort(cs.begin(), cs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) return;
  if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) return;
  std::sort(tail.begin(), tail.end(), [](const Measure& a, const Measure& b) {
    return std::tie(a.clbit, a.qubit) < std::tie(b.clbit, b.qubit);
  });
  for (std::size_t i = 0; i < tail.size(); ++i) body[t + i] = tail[i];
}

std::uint32_t sort_key(const Footprint& f) {
  return f.qubits.empty() ? std::numeric_limits<std::uint32_t>::max() : f.qubits.front();
}

}  // namespace

void commute_sort_impl(Program& p, bool respect_clbits) {
  const Program& ref = p;
  for_each_body(p.body, [&](Body& body, bool) {
    std::vector<Footprint> fp;
    for (const auto& instr : body) fp.push_back(footprint(ref, instr));
    for (std::size_t i = 1; i < body.size(); ++i) {
      for (std::size_t j = i; j > 0; --j) {
        if (sort_key(fp[j - 1]) <= sort_key(fp[j])) break;
        if (!commutes(fp[j - 1], fp[j], respect_clbits)) break;
        std::swap(body[j - 1], body[j]);
        std::swap(fp[j - 1], fp[j]);
      }
    }
  });
}

void schedule_alap_impl(Program& p, bool reverse_within_layer) {
  const Program& ref = p;
  for_each_body(p.body, [&](Body& body, bool) {
    const std::size_t n = body.size();
    std::vector<Footprint> fp;
    for (const auto& instr : body) fp.push_back(footprint(ref, instr));
    // Layers counted back from the end of the body.
    std::vector<std::uint32_t> layer(n, 0);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool strict =
            fp[i].loop_control || fp[j].loop_control || qubits_overlap(fp[i], fp[j]);
        if (strict) {
          layer[i] = std::max(layer[i], layer[j] + 1);
        } else if (clbit_hazard(fp[i], fp[j])) {
          layer[i] = std::max(layer[i], layer[j]);
        }
      }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (layer[a] != layer[b]) return layer[a] > layer[b];
      return reverse_within_layer ? a > b : false;
    });
    Body out;
    out.reserve(n);
    for (auto i : order) out.push_back(std::move(body[i]));
    body = std::move(out);
  });
}

namespace {

void commute_sort(Program& p) { commute_sort_impl(p, true); }
void schedule_alap(Program& p) { schedule_alap_impl(p, false); }

struct Entry {
  PassInfo info;
  PassFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> kEntries = {
      {{"cancel-inverses", false, "drop adjacent gate/inverse pairs"}, cancel_inverses},
      {{"merge-rotations", false, "fuse adjacent rotations on the same qubits"},
       merge_rotations},
      {{"elide-empty-control", false, "remove control flow whose bodies are all empty"},
       elide_empty_control},
      {{"canonicalize-final-measures", false, "sort the trailing measurements"},
       canonicalize_final_measures},
      {{"commute-sort", false, "order commuting instructions by lowest qubit"}, commute_sort},
      {{"schedule-alap", false, "as-late-as-possible layering"}, schedule_alap},
      {{"commute-skip-classical", true, "commute-sort that ignores classical dependencies"},
       commute_skip_classical},
      {{"alap-moment-order", true, "ALAP layering that leaves each layer reversed"},
       alap_moment_order},
      {{"inverse-for-loop", true, "block cancellation that cannot invert for-loops"},
       inverse_for_loop},
      {{"final-measure-loop", true, "measurement sinking that never settles inside loops"},
       final_measure_loop},
      {{"elide-empty-control-unaware", true, "control elision unaware of controlled-on-int"},
       elide_empty_control_unaware},
  };
  return kEntries;
}

const Entry* find_entry(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return &e;
  }
  return nullptr;
}

}  // namespace

}  // namespace passes

const std::vector<PassInfo>& pass_registry() {
  static const std::vector<PassInfo> kInfos = [] {
    std::vector<PassInfo> out;
    for (const auto& e : passes::entries()) out.push_back(e.info);
    return out;
  }();
  return kInfos;
}

std::vector<std::string> correct_pass_ids() {
  std::vector<std::string> out;
  for (const auto& info : pass_registry()) {
    if (!info.seeded_bug) out.push_back(info.id);
  }
  return out;
}

bool is_seeded_bug(std::string_view id) {
  const auto* e = passes::find_entry(id);
  return e && e->info.seeded_bug;
}

Pipeline parse_pipeline(std::string_view list, bool include_seeded_bugs) {
  Pipeline out;
  out.include_seeded_bugs = include_seeded_bugs;
  if (list.empty() || list == "none") return out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    const std::string id(list.substr(pos, comma - pos));
    const auto* e = passes::find_entry(id);
    if (!e) throw PipelineError("unknown pass: '" + id + "'");
    if (e->info.seeded_bug && !include_seeded_bugs) {
      throw PipelineError("pass " + id + " is a seeded bug; enable seeded bugs to use it");
    }
    out.passes.push_back(id);
    pos = comma + 1;
  }
  return out;
}

std::string to_string(const Pipeline& pipeline) {
  if (pipeline.passes.empty()) return "none";
  std::string out;
  for (const auto& id : pipeline.passes) {
    if (!out.empty()) out += ',';
    out += id;
  }
  return out;
}

PassOutcome apply(const Pipeline& pipeline, const Program& program) {
  try {
    validate(program);
  } catch (const ValidationError& e) {
    return ErrorRecord::make(ErrorKind::kValidation, e.what());
  }
  Program p = program;
  p.dead_regions.clear();
  for (const auto& id : pipeline.passes) {
    const auto* e = passes::find_entry(id);
    if (!e) return ErrorRecord::make(ErrorKind::kInternal, "unknown pass " + id);
    if (e->info.seeded_bug && !pipeline.include_seeded_bugs) {
      return ErrorRecord::make(ErrorKind::kInternal, "seeded-bug pass " + id + " not enabled");
    }
    try {
      e->fn(p);
    } catch (const passes::PassFailure& f) {
      return ErrorRecord::make(f.kind, id + ": " + f.message);
    } catch (const std::exception& ex) {
      return ErrorRecord::make(ErrorKind::kInternal, id + ": " + ex.what());
    }
    try {
      validate(p);
    } catch (const ValidationError& ex) {
      return ErrorRecord::make(ErrorKind::kPass, id + " produced an invalid program: " + ex.what());
    }
  }
  return p;
}

}  // namespace qfe
