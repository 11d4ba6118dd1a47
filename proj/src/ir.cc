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

#include "qfe/ir.h"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace qfe {
namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr std::array<GateInfo, kNumGateKinds> kGates = {{
    {GateKind::kH, "h", 1, 0},      {GateKind::kX, "x", 1, 0},
    {GateKind::kY, "y", 1, 0},      {GateKind::kZ, "z", 1, 0},
    {GateKind::kS, "s", 1, 0},      {GateKind::kSdg, "sdg", 1, 0},
    {GateKind::kT, "t", 1, 0},      {GateKind::kTdg, "tdg", 1, 0},
    {GateKind::kRx, "rx", 1, 1},    {GateKind::kRy, "ry", 1, 1},
    {GateKind::kRz, "rz", 1, 1},    {GateKind::kRzz, "rzz", 2, 1},
    {GateKind::kCx, "cx", 2, 0},    {GateKind::kCz, "cz", 2, 0},
    {GateKind::kCcx, "ccx", 3, 0},  {GateKind::kSwap, "swap", 2, 0},
}};

constexpr std::array<std::string_view, kNumPatternKinds> kPatternNames = {
    "if_test_dead", "while_dead", "switch_dead", "for_zero",
    "for_continue", "for_break",  "controlled_on_int_dead",
};

const GateInfo& info(GateKind kind) {
  return kGates[static_cast<std::size_t>(kind)];
}

template <typename Fn>
void for_each_body(const Instruction& instr, Fn&& fn) {
  for (std::size_t s = 0; s < num_child_bodies(instr); ++s) {
    fn(s, *child_body(instr, s));
  }
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& g : kGates) {
    if (g.name == name) return g.kind;
  }
  return std::nullopt;
}

int gate_arity(GateKind kind) { return info(kind).arity; }
int gate_num_params(GateKind kind) { return info(kind).params; }
bool is_rotation(GateKind kind) { return info(kind).params == 1; }

GateOp inverse(const GateOp& gate) {
  GateOp out = gate;
  switch (gate.kind) {
    case GateKind::kS: out.kind = GateKind::kSdg; break;
    case GateKind::kSdg: out.kind = GateKind::kS; break;
    case GateKind::kT: out.kind = GateKind::kTdg; break;
    case GateKind::kTdg: out.kind = GateKind::kT; break;
    case GateKind::kRx:
    case GateKind::kRy:
    case GateKind::kRz:
    case GateKind::kRzz:
      out.params[0] = -gate.params[0];
      break;
    default:
      break;  // self-inverse
  }
  return out;
}

bool IfTest::operator==(const IfTest& o) const {
  return cond == o.cond && then_body == o.then_body && else_body == o.else_body;
}
bool WhileLoop::operator==(const WhileLoop& o) const {
  return cond == o.cond && body == o.body;
}
bool ForRange::operator==(const ForRange& o) const {
  return count == o.count && body == o.body;
}
bool SwitchCase::operator==(const SwitchCase& o) const {
  return value == o.value && body == o.body;
}
bool Switch::operator==(const Switch& o) const {
  return subject == o.subject && cases == o.cases &&
         default_body == o.default_body;
}
bool ControlledOnInt::operator==(const ControlledOnInt& o) const {
  return value == o.value && ctrl == o.ctrl && body == o.body;
}

std::size_t num_child_bodies(const Instruction& instr) {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IfTest>) return 2;
        else if constexpr (std::is_same_v<T, Switch>) return n.cases.size() + 1;
        else if constexpr (std::is_same_v<T, WhileLoop> ||
                           std::is_same_v<T, ForRange> ||
                           std::is_same_v<T, ControlledOnInt>)
          return 1;
        else return 0;
      },
      instr.node);
}

Body* child_body(Instruction& instr, std::size_t slot) {
  return std::visit(
      [slot](auto& n) -> Body* {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IfTest>) {
          if (slot == 0) return &n.then_body;
          if (slot == 1) return &n.else_body;
          return nullptr;
        } else if constexpr (std::is_same_v<T, Switch>) {
          if (slot < n.cases.size()) return &n.cases[slot].body;
          if (slot == n.cases.size()) return &n.default_body;
          return nullptr;
        } else if constexpr (std::is_same_v<T, WhileLoop> ||
                             std::is_same_v<T, ForRange> ||
                             std::is_same_v<T, ControlledOnInt>) {
          return slot == 0 ? &n.body : nullptr;
        } else {
          return nullptr;
        }
      },
      instr.node);
}

const Body* child_body(const Instruction& instr, std::size_t slot) {
  return child_body(const_cast<Instruction&>(instr), slot);
}

std::size_t count_instructions(const Body& body) {
  std::size_t n = 0;
  for (const auto& instr : body) {
    ++n;
    for_each_body(instr, [&](std::size_t, const Body& b) {
      n += count_instructions(b);
    });
  }
  return n;
}

std::string to_string(const BodyPath& path) {
  std::ostringstream os;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << '/';
    os << path[i].index << '.' << path[i].slot;
  }
  return os.str();
}

std::string to_string(const NodePath& path) {
  std::ostringstream os;
  os << '[';
  for (const auto& step : path.body) os << step.index << '.' << step.slot << '/';
  os << path.index << ']';
  return os.str();
}

const Body* resolve_body(const Body& root, const BodyPath& path) {
  const Body* cur = &root;
  for (const auto& step : path) {
    if (step.index >= cur->size()) return nullptr;
    cur = child_body((*cur)[step.index], step.slot);
    if (!cur) return nullptr;
  }
  return cur;
}

Body* resolve_body(Body& root, const BodyPath& path) {
  return const_cast<Body*>(resolve_body(static_cast<const Body&>(root), path));
}

bool Span::contains(const NodePath& node) const {
  if (node.body.size() < body.size()) return false;
  if (!std::equal(body.begin(), body.end(), node.body.begin())) return false;
  const std::uint32_t idx =
      node.body.size() == body.size() ? node.index : node.body[body.size()].index;
  return idx >= begin && idx < end;
}

std::string_view pattern_name(PatternKind kind) {
  return kPatternNames[static_cast<std::size_t>(kind)];
}

std::optional<PatternKind> pattern_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPatternNames.size(); ++i) {
    if (kPatternNames[i] == name) return static_cast<PatternKind>(i);
  }
  return std::nullopt;
}

PatternCategory pattern_category(PatternKind kind) {
  switch (kind) {
    case PatternKind::kForZero:
    case PatternKind::kForContinue:
    case PatternKind::kForBreak:
      return PatternCategory::kInputIndependent;
    default:
      return PatternCategory::kInputDependent;
  }
}

// ---------------------------------------------------------------------------

std::uint32_t Program::num_qubits() const {
  std::uint32_t n = 0;
  for (auto w : qregs) n += w;
  return n;
}

std::uint32_t Program::global_index(const QubitRef& q) const {
  std::uint32_t base = 0;
  for (std::uint32_t r = 0; r < q.reg; ++r) base += qregs[r];
  return base + q.offset;
}

std::uint32_t Program::add_qreg(std::uint32_t width) {
  qregs.push_back(width);
  return static_cast<std::uint32_t>(qregs.size() - 1);
}

std::uint32_t Program::add_creg(std::uint32_t width, bool output) {
  cregs.push_back({width, output});
  return static_cast<std::uint32_t>(cregs.size() - 1);
}

std::vector<std::uint32_t> Program::output_cregs() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 0; r < cregs.size(); ++r) {
    if (cregs[r].output) out.push_back(r);
  }
  if (out.empty()) {
    for (std::uint32_t r = 0; r < cregs.size(); ++r) out.push_back(r);
  }
  return out;
}

std::uint32_t Program::output_width() const {
  std::uint32_t w = 0;
  for (auto r : output_cregs()) w += cregs[r].width;
  return w;
}

bool Program::operator==(const Program& o) const {
  return qregs == o.qregs && cregs == o.cregs && body == o.body &&
         dead_regions == o.dead_regions && meta == o.meta;
}

ValidationError::ValidationError(NodePath path, const std::string& message)
    : std::runtime_error("validation error at " + to_string(path) + ": " +
                         message),
      path_(std::move(path)) {}

// ---------------------------------------------------------------------------
// Validation.

namespace {

class Validator {
 public:
  explicit Validator(const Program& p) : p_(p) {}

  void run() {
    for (std::size_t r = 0; r < p_.qregs.size(); ++r) {
      if (p_.qregs[r] == 0) fail({}, "quantum register " + std::to_string(r) + " has width 0");
    }
    for (std::size_t r = 0; r < p_.cregs.size(); ++r) {
      if (p_.cregs[r].width == 0 || p_.cregs[r].width > 63) {
        fail({}, "classical register " + std::to_string(r) + " width must be in [1, 63]");
      }
    }
    BodyPath root;
    body(p_.body, root, /*in_loop=*/false);
    regions();
  }

 private:
  [[noreturn]] void fail(NodePath path, const std::string& msg) {
    throw ValidationError(std::move(path), msg);
  }

  void qubit(const QubitRef& q, const NodePath& at) {
    if (q.reg >= p_.qregs.size()) fail(at, "undeclared quantum register q" + std::to_string(q.reg));
    if (q.offset >= p_.qregs[q.reg]) fail(at, "qubit offset out of range");
  }

  void clbit(const ClbitRef& c, const NodePath& at) {
    if (c.reg >= p_.cregs.size()) fail(at, "undeclared classical register c" + std::to_string(c.reg));
    if (c.offset >= p_.cregs[c.reg].width) fail(at, "clbit offset out of range");
  }

  std::uint32_t subject_width(const CondSubject& s, const NodePath& at) {
    if (s.reg >= p_.cregs.size()) fail(at, "undeclared classical register c" + std::to_string(s.reg));
    if (s.bit) {
      if (*s.bit >= p_.cregs[s.reg].width) fail(at, "clbit offset out of range");
      return 1;
    }
    return p_.cregs[s.reg].width;
  }

  void value_fits(std::uint64_t value, std::uint32_t width, const NodePath& at) {
    if (width < 64 && value >= (std::uint64_t{1} << width)) {
      fail(at, "condition value " + std::to_string(value) + " does not fit in " +
                   std::to_string(width) + " bits");
    }
  }

  void gate(const GateOp& g, const NodePath& at) {
    if (static_cast<int>(g.targets.size()) != gate_arity(g.kind)) {
      fail(at, std::string("wrong arity for ") + std::string(gate_name(g.kind)));
    }
    if (static_cast<int>(g.params.size()) != gate_num_params(g.kind)) {
      fail(at, std::string("wrong parameter count for ") + std::string(gate_name(g.kind)));
    }
    for (const auto& q : g.targets) qubit(q, at);
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      for (std::size_t j = i + 1; j < g.targets.size(); ++j) {
        if (g.targets[i] == g.targets[j]) fail(at, "gate targets are not distinct");
      }
    }
  }

  void body(const Body& b, const BodyPath& path, bool in_loop) {
    for (std::uint32_t i = 0; i < b.size(); ++i) {
      NodePath at{path, i};
      instruction(b[i], at, in_loop);
    }
  }

  BodyPath child(const NodePath& at, std::uint32_t slot) {
    BodyPath p = at.body;
    p.push_back({at.index, slot});
    return p;
  }

  void instruction(const Instruction& instr, const NodePath& at, bool in_loop) {
    if (auto* g = instr.get_if<GateOp>()) {
      gate(*g, at);
    } else if (auto* m = instr.get_if<Measure>()) {
      qubit(m->qubit, at);
      clbit(m->clbit, at);
    } else if (auto* r = instr.get_if<Reset>()) {
      qubit(r->qubit, at);
    } else if (auto* it = instr.get_if<IfTest>()) {
      value_fits(it->cond.value, subject_width(it->cond.subject, at), at);
      body(it->then_body, child(at, 0), in_loop);
      body(it->else_body, child(at, 1), in_loop);
    } else if (auto* w = instr.get_if<WhileLoop>()) {
      value_fits(w->cond.value, subject_width(w->cond.subject, at), at);
      body(w->body, child(at, 0), true);
    } else if (auto* f = instr.get_if<ForRange>()) {
      body(f->body, child(at, 0), true);
    } else if (auto* s = instr.get_if<Switch>()) {
      const auto width = subject_width(s->subject, at);
      std::set<std::uint64_t> seen;
      for (std::uint32_t k = 0; k < s->cases.size(); ++k) {
        value_fits(s->cases[k].value, width, at);
        if (!seen.insert(s->cases[k].value).second) fail(at, "duplicate switch case value");
        body(s->cases[k].body, child(at, k), in_loop);
      }
      body(s->default_body, child(at, static_cast<std::uint32_t>(s->cases.size())), in_loop);
    } else if (instr.is<BreakLoop>() || instr.is<ContinueLoop>()) {
      if (!in_loop) fail(at, "loop control outside of a loop body");
    } else if (auto* c = instr.get_if<ControlledOnInt>()) {
      if (c->ctrl.empty() || c->ctrl.size() > 63) fail(at, "control register size must be in [1, 63]");
      for (const auto& q : c->ctrl) qubit(q, at);
      value_fits(c->value, static_cast<std::uint32_t>(c->ctrl.size()), at);
      std::set<QubitRef> ctrl(c->ctrl.begin(), c->ctrl.end());
      if (ctrl.size() != c->ctrl.size()) fail(at, "control qubits are not distinct");
      const BodyPath inner = child(at, 0);
      for (std::uint32_t k = 0; k < c->body.size(); ++k) {
        NodePath gat{inner, k};
        const auto* g = c->body[k].get_if<GateOp>();
        if (!g) fail(gat, "controlled-on-int body may only contain gates");
        gate(*g, gat);
        for (const auto& q : g->targets) {
          if (ctrl.count(q)) fail(gat, "gate target overlaps control register");
        }
      }
    }
  }

  void regions() {
    std::set<std::uint32_t> ids;
    for (const auto& r : p_.dead_regions) {
      NodePath at{r.span.body, r.span.begin};
      if (!ids.insert(r.id).second) fail(at, "duplicate dead region id");
      const Body* b = resolve_body(p_.body, r.span.body);
      if (!b) fail(at, "dead region addresses a missing body");
      if (r.span.begin > r.span.end || r.span.end > b->size()) {
        fail(at, "dead region range out of bounds");
      }
      for (const auto& q : r.ancilla_qubits) qubit(q, at);
      for (const auto& c : r.ancilla_clbits) clbit(c, at);
    }
    for (std::size_t i = 0; i < p_.dead_regions.size(); ++i) {
      for (std::size_t j = i + 1; j < p_.dead_regions.size(); ++j) {
        if (!forest_compatible(p_.dead_regions[i].span, p_.dead_regions[j].span)) {
          fail({p_.dead_regions[j].span.body, p_.dead_regions[j].span.begin},
               "dead regions overlap without nesting");
        }
      }
    }
  }

  // True when a is strictly inside b (b's range covers the instruction that
  // a's body hangs from).
  static bool nested_in(const Span& a, const Span& b) {
    if (a.body.size() <= b.body.size()) return false;
    if (!std::equal(b.body.begin(), b.body.end(), a.body.begin())) return false;
    const auto idx = a.body[b.body.size()].index;
    return idx >= b.begin && idx < b.end;
  }

  static bool forest_compatible(const Span& a, const Span& b) {
    if (a.body == b.body) {
      if (a == b) return false;
      if (a.end <= b.begin || b.end <= a.begin) return true;
      return (a.begin <= b.begin && b.end <= a.end) || (b.begin <= a.begin && a.end <= b.end);
    }
    if (nested_in(a, b) || nested_in(b, a)) return true;
    // Different bodies neither of which hangs from the other's range.
    return true;
  }

  const Program& p_;
};

void add_sorted(std::vector<std::uint32_t>& v, std::uint32_t x) { v.push_back(x); }

void collect(const Program& p, const Instruction& instr, Footprint& fp,
             int loop_depth) {
  if (const auto* g = instr.get_if<GateOp>()) {
    for (const auto& q : g->targets) add_sorted(fp.qubits, p.global_index(q));
  } else if (const auto* m = instr.get_if<Measure>()) {
    fp.qubits.push_back(p.global_index(m->qubit));
    fp.writes.push_back(m->clbit);
  } else if (const auto* r = instr.get_if<Reset>()) {
    fp.qubits.push_back(p.global_index(r->qubit));
  } else if (instr.is<BreakLoop>() || instr.is<ContinueLoop>()) {
    if (loop_depth == 0) fp.loop_control = true;
  } else {
    auto add_subject = [&](const CondSubject& s) {
      if (s.bit) {
        fp.reads.push_back({s.reg, *s.bit});
      } else if (s.reg < p.cregs.size()) {
        for (std::uint32_t b = 0; b < p.cregs[s.reg].width; ++b) fp.reads.push_back({s.reg, b});
      }
    };
    int inner_depth = loop_depth;
    if (const auto* it = instr.get_if<IfTest>()) add_subject(it->cond.subject);
    if (const auto* w = instr.get_if<WhileLoop>()) {
      add_subject(w->cond.subject);
      ++inner_depth;
    }
    if (instr.is<ForRange>()) ++inner_depth;
    if (const auto* s = instr.get_if<Switch>()) add_subject(s->subject);
    if (const auto* c = instr.get_if<ControlledOnInt>()) {
      for (const auto& q : c->ctrl) fp.qubits.push_back(p.global_index(q));
    }
    for_each_body(instr, [&](std::size_t, const Body& b) {
      for (const auto& child : b) collect(p, child, fp, inner_depth);
    });
  }
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void validate(const Program& program) { Validator(program).run(); }

Footprint footprint(const Program& program, const Instruction& instr) {
  Footprint fp;
  collect(program, instr, fp, 0);
  sort_unique(fp.qubits);
  sort_unique(fp.reads);
  sort_unique(fp.writes);
  return fp;
}

}  // namespace qfe
