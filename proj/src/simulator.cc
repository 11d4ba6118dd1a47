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

#include "qfe/simulator.h"

#include <optional>
#include <unordered_map>

#include "qfe/rng.h"
#include "qfe/state_vector.h"

namespace qfe {

std::uint64_t coverage_of(const CoverageMap& coverage, const NodePath& node) {
  auto it = coverage.find(node);
  return it == coverage.end() ? 0 : it->second;
}

std::string bitstring(std::uint64_t value, std::uint32_t width) {
  std::string s(width, '0');
  for (std::uint32_t b = 0; b < width; ++b) {
    if ((value >> b) & 1) s[width - 1 - b] = '1';
  }
  return s;
}

namespace {

// Dense instruction numbering plus precomputed register layout.
class Compiled {
 public:
  explicit Compiled(const Program& p) : program(p) {
    std::uint32_t base = 0;
    for (auto w : p.qregs) {
      qreg_base.push_back(base);
      base += w;
    }
    number(p.body, {});
    for (auto r : p.output_cregs()) {
      outputs.push_back(r);
      output_width += p.cregs[r].width;
    }
  }

  std::uint32_t qubit(const QubitRef& q) const { return qreg_base[q.reg] + q.offset; }
  std::uint32_t id(const Instruction& instr) const { return ids.at(&instr); }

  const Program& program;
  std::vector<std::uint32_t> qreg_base;
  std::unordered_map<const Instruction*, std::uint32_t> ids;
  std::vector<NodePath> paths;
  std::vector<std::uint32_t> outputs;
  std::uint32_t output_width = 0;

 private:
  void number(const Body& body, const BodyPath& path) {
    for (std::uint32_t i = 0; i < body.size(); ++i) {
      ids.emplace(&body[i], static_cast<std::uint32_t>(paths.size()));
      paths.push_back({path, i});
      for (std::size_t s = 0; s < num_child_bodies(body[i]); ++s) {
        BodyPath child = path;
        child.push_back({i, static_cast<std::uint32_t>(s)});
        number(*child_body(body[i], s), child);
      }
    }
  }
};

class Chooser {
 public:
  virtual ~Chooser() = default;
  // Returns the outcome (0 or 1) for a branch with the given probabilities.
  virtual int choose(double p0, double p1) = 0;
};

struct FuelExceeded {
  std::uint32_t id;
};

struct PathResult {
  std::optional<ErrorRecord> error;
  std::uint64_t outcome = 0;
  std::vector<std::uint32_t> coverage;  // per instruction id
  std::vector<std::pair<std::uint32_t, double>> measures;  // (id, min branch)
};

class Interpreter {
 public:
  Interpreter(const Compiled& c, Chooser& chooser, std::uint64_t fuel, double eps)
      : c_(c),
        chooser_(chooser),
        fuel_(fuel),
        eps_(eps),
        state_(c.program.num_qubits()),
        cregs_(c.program.cregs.size(), 0),
        loop_iters_(c.paths.size(), 0) {
    result_.coverage.assign(c.paths.size(), 0);
  }

  PathResult run() {
    try {
      exec(c_.program.body);
    } catch (const FuelExceeded& f) {
      result_.error = ErrorRecord::make(
          ErrorKind::kInfiniteLoop, "loop at " + to_string(c_.paths[f.id]) +
                                        " exceeded fuel of " + std::to_string(fuel_) +
                                        " iterations");
      return std::move(result_);
    }
    std::uint64_t value = 0;
    std::uint32_t shift = 0;
    for (auto r : c_.outputs) {
      value |= cregs_[r] << shift;
      shift += c_.program.cregs[r].width;
    }
    result_.outcome = value;
    return std::move(result_);
  }

 private:
  enum class Flow { kNormal, kBreak, kContinue };

  bool holds(const ClassicalCond& cond) const { return read(cond.subject) == cond.value; }

  std::uint64_t read(const CondSubject& s) const {
    const std::uint64_t v = cregs_[s.reg];
    return s.bit ? (v >> *s.bit) & 1 : v;
  }

  void tick(std::uint32_t id) {
    if (++loop_iters_[id] > fuel_) throw FuelExceeded{id};
  }

  int measure_qubit(std::uint32_t q) {
    const auto p = state_.outcome_probabilities(q);
    const int o = chooser_.choose(p[0], p[1]);
    state_.collapse(q, o);
    return o;
  }

  void gate(const GateOp& g, std::uint64_t mask, std::uint64_t value) {
    auto q = [&](std::size_t k) { return c_.qubit(g.targets[k]); };
    auto bit = [&](std::size_t k) { return std::uint64_t{1} << q(k); };
    switch (g.kind) {
      case GateKind::kH: state_.apply_1q(gates::h(), q(0), mask, value); break;
      case GateKind::kX: state_.apply_1q(gates::x(), q(0), mask, value); break;
      case GateKind::kY: state_.apply_1q(gates::y(), q(0), mask, value); break;
      case GateKind::kZ: state_.apply_1q(gates::z(), q(0), mask, value); break;
      case GateKind::kS: state_.apply_1q(gates::s(), q(0), mask, value); break;
      case GateKind::kSdg: state_.apply_1q(gates::sdg(), q(0), mask, value); break;
      case GateKind::kT: state_.apply_1q(gates::t(), q(0), mask, value); break;
      case GateKind::kTdg: state_.apply_1q(gates::tdg(), q(0), mask, value); break;
      case GateKind::kRx: state_.apply_1q(gates::rx(g.params[0]), q(0), mask, value); break;
      case GateKind::kRy: state_.apply_1q(gates::ry(g.params[0]), q(0), mask, value); break;
      case GateKind::kRz: state_.apply_1q(gates::rz(g.params[0]), q(0), mask, value); break;
      case GateKind::kRzz: state_.apply_zz(g.params[0], q(0), q(1), mask, value); break;
      case GateKind::kCx:
        state_.apply_1q(gates::x(), q(1), mask | bit(0), value | bit(0));
        break;
      case GateKind::kCz:
        state_.apply_1q(gates::z(), q(1), mask | bit(0), value | bit(0));
        break;
      case GateKind::kCcx:
        state_.apply_1q(gates::x(), q(2), mask | bit(0) | bit(1), value | bit(0) | bit(1));
        break;
      case GateKind::kSwap: state_.apply_swap(q(0), q(1), mask, value); break;
    }
  }

  Flow exec(const Body& body) {
    for (const auto& instr : body) {
      const std::uint32_t id = c_.id(instr);
      ++result_.coverage[id];
      if (const auto* g = instr.get_if<GateOp>()) {
        gate(*g, 0, 0);
      } else if (const auto* m = instr.get_if<Measure>()) {
        const std::uint32_t q = c_.qubit(m->qubit);
        const auto p = state_.outcome_probabilities(q);
        result_.measures.emplace_back(id, std::min(p[0], p[1]));
        const int o = chooser_.choose(p[0], p[1]);
        state_.collapse(q, o);
        auto& reg = cregs_[m->clbit.reg];
        const std::uint64_t b = std::uint64_t{1} << m->clbit.offset;
        reg = o ? (reg | b) : (reg & ~b);
      } else if (const auto* r = instr.get_if<Reset>()) {
        const std::uint32_t q = c_.qubit(r->qubit);
        if (measure_qubit(q) == 1) state_.flip(q);
      } else if (const auto* it = instr.get_if<IfTest>()) {
        const Flow f = exec(holds(it->cond) ? it->then_body : it->else_body);
        if (f != Flow::kNormal) return f;
      } else if (const auto* w = instr.get_if<WhileLoop>()) {
        while (holds(w->cond)) {
          tick(id);
          if (exec(w->body) == Flow::kBreak) break;
        }
      } else if (const auto* f = instr.get_if<ForRange>()) {
        for (std::uint64_t k = 0; k < f->count; ++k) {
          tick(id);
          if (exec(f->body) == Flow::kBreak) break;
        }
      } else if (const auto* s = instr.get_if<Switch>()) {
        const std::uint64_t v = read(s->subject);
        const Body* chosen = &s->default_body;
        for (const auto& cs : s->cases) {
          if (cs.value == v) {
            chosen = &cs.body;
            break;
          }
        }
        const Flow fl = exec(*chosen);
        if (fl != Flow::kNormal) return fl;
      } else if (instr.is<BreakLoop>()) {
        return Flow::kBreak;
      } else if (instr.is<ContinueLoop>()) {
        return Flow::kContinue;
      } else if (const auto* coi = instr.get_if<ControlledOnInt>()) {
        std::uint64_t mask = 0, value = 0;
        for (std::size_t k = 0; k < coi->ctrl.size(); ++k) {
          const std::uint64_t b = std::uint64_t{1} << c_.qubit(coi->ctrl[k]);
          mask |= b;
          if ((coi->value >> k) & 1) value |= b;
        }
        // Body gates count as executed only when the controlled subspace
        // carries weight.
        const bool live = state_.subspace_weight(mask, value) > eps_;
        for (const auto& inner : coi->body) {
          if (live) ++result_.coverage[c_.id(inner)];
          gate(inner.as<GateOp>(), mask, value);
        }
      }
    }
    return Flow::kNormal;
  }

  const Compiled& c_;
  Chooser& chooser_;
  std::uint64_t fuel_;
  double eps_;
  StateVector state_;
  std::vector<std::uint64_t> cregs_;
  std::vector<std::uint64_t> loop_iters_;
  PathResult result_;
};

int pick(double p0, double p1, double u, double eps) {
  if (p0 <= eps) return 1;
  if (p1 <= eps) return 0;
  return u < p0 ? 0 : 1;
}

}  // namespace

namespace internal {

// Prefix tree over measurement histories. Interior nodes hold the branch
// probabilities observed at that point; leaves hold the finished path.
struct SamplerTree {
  struct Node {
    double p[2] = {0, 0};
    bool branch = false;
    int child[2] = {-1, -1};
    int leaf = -1;
  };
  struct Leaf {
    std::optional<ErrorRecord> error;
    std::string key;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> coverage;
    std::uint64_t hits = 0;
  };

  explicit SamplerTree(const Program& p) : compiled(p) { nodes.emplace_back(); }

  int child(int node, int o) {
    if (nodes[node].child[o] < 0) {
      nodes[node].child[o] = static_cast<int>(nodes.size());
      nodes.emplace_back();
    }
    return nodes[node].child[o];
  }

  Compiled compiled;
  std::vector<Node> nodes;
  std::vector<Leaf> leaves;
};

}  // namespace internal

namespace {

class TreeChooser : public Chooser {
 public:
  TreeChooser(internal::SamplerTree& tree, const std::vector<std::uint8_t>& prefix,
              int start, SplitMix64& rng, double eps)
      : tree_(tree), prefix_(prefix), cur_(start), rng_(rng), eps_(eps) {}

  int choose(double p0, double p1) override {
    if (k_ < prefix_.size()) return prefix_[k_++];
    auto& node = tree_.nodes[cur_];
    node.branch = true;
    node.p[0] = p0;
    node.p[1] = p1;
    const int o = pick(p0, p1, rng_.uniform01(), eps_);
    cur_ = tree_.child(cur_, o);
    return o;
  }

  int current() const { return cur_; }

 private:
  internal::SamplerTree& tree_;
  const std::vector<std::uint8_t>& prefix_;
  std::size_t k_ = 0;
  int cur_;
  SplitMix64& rng_;
  double eps_;
};

}  // namespace

ShotSampler::ShotSampler(Program program, std::uint64_t seed, ExecLimits limits)
    : program_(std::move(program)), seed_(seed), limits_(limits) {}

ShotSampler::~ShotSampler() = default;
ShotSampler::ShotSampler(ShotSampler&&) noexcept = default;
ShotSampler& ShotSampler::operator=(ShotSampler&&) noexcept = default;

ExecOutcome ShotSampler::draw(std::uint64_t shots) {
  if (!tree_) {
    try {
      validate(program_);
    } catch (const ValidationError& e) {
      return ErrorRecord::make(ErrorKind::kValidation, e.what());
    }
    tree_ = std::make_unique<internal::SamplerTree>(program_);
  }
  auto& tree = *tree_;
  const std::uint32_t width = tree.compiled.output_width;
  Counts counts;
  std::vector<std::uint8_t> prefix;
  for (std::uint64_t s = 0; s < shots; ++s) {
    SplitMix64 rng(derive_seed(seed_, "shot", next_shot_++));
    prefix.clear();
    int node = 0;
    int leaf = -1;
    while (true) {
      auto& n = tree.nodes[node];
      if (n.leaf >= 0) {
        leaf = n.leaf;
        break;
      }
      if (!n.branch) {
        TreeChooser chooser(tree, prefix, node, rng, limits_.prune_eps);
        Interpreter interp(tree.compiled, chooser, limits_.loop_fuel, limits_.prune_eps);
        PathResult r = interp.run();
        internal::SamplerTree::Leaf lf;
        lf.error = std::move(r.error);
        if (!lf.error) lf.key = bitstring(r.outcome, width);
        for (std::uint32_t id = 0; id < r.coverage.size(); ++id) {
          if (r.coverage[id]) lf.coverage.emplace_back(id, r.coverage[id]);
        }
        leaf = static_cast<int>(tree.leaves.size());
        tree.leaves.push_back(std::move(lf));
        tree.nodes[chooser.current()].leaf = leaf;
        break;
      }
      const int o = pick(n.p[0], n.p[1], rng.uniform01(), limits_.prune_eps);
      prefix.push_back(static_cast<std::uint8_t>(o));
      node = tree.child(node, o);
    }
    auto& lf = tree.leaves[leaf];
    ++lf.hits;
    if (lf.error) return *lf.error;
    counts.add(lf.key);
  }
  return counts;
}

CoverageMap ShotSampler::coverage() const {
  CoverageMap out;
  if (!tree_) return out;
  for (const auto& lf : tree_->leaves) {
    if (!lf.hits) continue;
    for (auto [id, n] : lf.coverage) out[tree_->compiled.paths[id]] += lf.hits * n;
  }
  return out;
}

RunResult run(const Program& program, std::uint64_t shots, std::uint64_t seed,
              const ExecLimits& limits) {
  ShotSampler sampler(program, seed, limits);
  RunResult r{sampler.draw(shots), {}};
  r.coverage = sampler.coverage();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

class EnumChooser : public Chooser {
 public:
  EnumChooser(std::vector<std::uint8_t> prefix,
              std::vector<std::vector<std::uint8_t>>& pending, double eps)
      : path_(std::move(prefix)), pending_(pending), eps_(eps) {}

  int choose(double p0, double p1) override {
    const double p[2] = {p0, p1};
    int o;
    if (k_ < path_.size()) {
      o = path_[k_];
    } else {
      o = p0 > eps_ ? 0 : 1;
      if (p[1 - o] > eps_) {
        auto alt = path_;
        alt.push_back(static_cast<std::uint8_t>(1 - o));
        pending_.push_back(std::move(alt));
      }
      path_.push_back(static_cast<std::uint8_t>(o));
    }
    ++k_;
    prob_ *= p[o];
    return o;
  }

  double probability() const { return prob_; }

 private:
  std::vector<std::uint8_t> path_;
  std::vector<std::vector<std::uint8_t>>& pending_;
  std::size_t k_ = 0;
  double prob_ = 1.0;
  double eps_;
};

}  // namespace

Enumeration enumerate_distribution(const Program& program, const EnumerationCaps& caps) {
  validate(program);
  if (program.num_qubits() > caps.max_qubits) {
    throw EnumerationError("program has " + std::to_string(program.num_qubits()) +
                           " qubits, cap is " + std::to_string(caps.max_qubits));
  }
  Compiled compiled(program);
  Enumeration out;
  std::vector<std::vector<std::uint8_t>> pending{{}};
  while (!pending.empty()) {
    if (out.paths >= caps.max_paths) {
      throw EnumerationError("more than " + std::to_string(caps.max_paths) + " paths");
    }
    auto prefix = std::move(pending.back());
    pending.pop_back();
    EnumChooser chooser(std::move(prefix), pending, caps.prune_eps);
    Interpreter interp(compiled, chooser, caps.fuel, caps.prune_eps);
    PathResult r = interp.run();
    if (r.error) throw EnumerationError(r.error->message);
    ++out.paths;
    const double prob = chooser.probability();
    out.distribution[bitstring(r.outcome, compiled.output_width)] += prob;
    if (prob > caps.prune_eps) {
      for (std::uint32_t id = 0; id < r.coverage.size(); ++id) {
        if (r.coverage[id]) out.coverage[compiled.paths[id]] += r.coverage[id];
      }
      for (auto [id, m] : r.measures) {
        auto& slot = out.measure_min_branch[compiled.paths[id]];
        slot = std::max(slot, m);
      }
    }
  }
  return out;
}

}  // namespace qfe
