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

#include "qfe/generator.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qfe/deadcode.h"
#include "qfe/passes.h"

namespace qfe {

void check_config(const GenConfig& c) {
  if (c.n_qubits < 1) throw GenError("n_qubits must be at least 1");
  if (c.depth < 1) throw GenError("depth must be at least 1");
  if (c.max_nesting < 1) throw GenError("max_nesting must be at least 1");
  double sum = 0;
  for (double w : c.pattern_weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw GenError("pattern weights must be finite and >= 0");
    sum += w;
  }
  if (sum <= 0) throw GenError("pattern weights are all zero");
  for (double p : {c.subcircuit_prob, c.pass_pipeline_prob, c.control_site_prob,
                   c.live_control_prob}) {
    if (!(p >= 0 && p <= 1)) throw GenError("probabilities must lie in [0, 1]");
  }
  if (c.for_trip_max < 1) throw GenError("for_trip_max must be at least 1");
  if (c.loop_trip < 1) throw GenError("loop_trip must be at least 1");
  if (c.ctrl_width < 1 || c.ctrl_width > 16) throw GenError("ctrl_width must be in [1, 16]");
  if (c.n_qubits > c.max_total_qubits) throw GenError("n_qubits exceeds max_total_qubits");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(v, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') {
    throw GenError("bad integer for " + key + ": " + v);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw GenError("bad number for " + key + ": " + v);
  return out;
}

std::uint32_t to_u32(const std::string& key, const std::string& v) {
  const auto x = to_u64(key, v);
  if (x > 0xffffffffu) throw GenError("value out of range for " + key);
  return static_cast<std::uint32_t>(x);
}

}  // namespace

GenConfig parse_gen_config(std::string_view text) {
  GenConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw GenError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string val = trim(std::string_view(t).substr(eq + 1));
    if (key == "n_qubits") c.n_qubits = to_u32(key, val);
    else if (key == "depth") c.depth = to_u32(key, val);
    else if (key == "seed") c.seed = to_u64(key, val);
    else if (key == "max_nesting") c.max_nesting = to_u32(key, val);
    else if (key == "subcircuit_prob") c.subcircuit_prob = to_double(key, val);
    else if (key == "pass_pipeline_prob") c.pass_pipeline_prob = to_double(key, val);
    else if (key == "for_trip_max") c.for_trip_max = to_u32(key, val);
    else if (key == "control_site_prob") c.control_site_prob = to_double(key, val);
    else if (key == "live_control_prob") c.live_control_prob = to_double(key, val);
    else if (key == "loop_trip") c.loop_trip = to_u32(key, val);
    else if (key == "ctrl_width") c.ctrl_width = to_u32(key, val);
    else if (key == "max_total_qubits") c.max_total_qubits = to_u32(key, val);
    else if (key.rfind("weight.", 0) == 0) {
      const auto kind = pattern_from_name(std::string_view(key).substr(7));
      if (!kind) throw GenError("unknown pattern in key " + key);
      c.pattern_weights[static_cast<std::size_t>(*kind)] = to_double(key, val);
    } else {
      throw GenError("line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  check_config(c);
  return c;
}

GenConfig load_gen_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GenError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gen_config(ss.str());
}

std::vector<PatternKind> choose_patterns(const GenConfig& config, Rng& rng) {
  const auto depth = rng.range(1, config.max_nesting);
  std::vector<PatternKind> plan;
  for (std::int64_t i = 0; i < depth; ++i) {
    const auto kind = static_cast<PatternKind>(rng.weighted(config.pattern_weights));
    plan.push_back(kind);
    if (kind == PatternKind::kControlledOnIntDead) break;
  }
  return plan;
}

namespace {

constexpr GateKind kAllGates[] = {
    GateKind::kH,   GateKind::kX,  GateKind::kY,   GateKind::kZ,   GateKind::kS,  GateKind::kSdg,
    GateKind::kT,   GateKind::kTdg, GateKind::kRx, GateKind::kRy,  GateKind::kRz, GateKind::kRzz,
    GateKind::kCx,  GateKind::kCz, GateKind::kCcx, GateKind::kSwap};

double random_angle(Rng& rng) {
  return std::round(rng.uniform(0, 2 * std::numbers::pi) * 1e5) / 1e5;
}

// Distinct data qubits, uniformly ordered.
std::vector<QubitRef> pick_qubits(Rng& rng, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<QubitRef> out;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back({0, pool[i]});
  }
  return out;
}

GateOp make_gate(GateKind kind, Rng& rng, std::uint32_t n) {
  GateOp g;
  g.kind = kind;
  if (gate_num_params(kind) == 1) g.params.push_back(random_angle(rng));
  g.targets = pick_qubits(rng, n, static_cast<std::uint32_t>(gate_arity(kind)));
  return g;
}

GateOp random_gate(Rng& rng, std::uint32_t n) {
  std::vector<GateKind> eligible;
  for (auto k : kAllGates) {
    if (static_cast<std::uint32_t>(gate_arity(k)) <= n) eligible.push_back(k);
  }
  return make_gate(eligible[rng.below(eligible.size())], rng, n);
}

Body random_gates(Rng& rng, std::uint32_t n, std::uint32_t count) {
  Body out;
  for (std::uint32_t i = 0; i < count; ++i) out.emplace_back(random_gate(rng, n));
  return out;
}

// Composite subcircuits lowered to the gate set.
Body subcircuit(Rng& rng, std::uint32_t n) {
  const auto width = static_cast<std::uint32_t>(rng.range(1, std::min<std::uint32_t>(n, 3)));
  const auto qs = pick_qubits(rng, n, width);
  Body out;
  switch (rng.below(3)) {
    case 0:  // GHZ preparation
      out.emplace_back(GateOp{GateKind::kH, {}, {qs[0]}});
      for (std::size_t i = 1; i < qs.size(); ++i) {
        out.emplace_back(GateOp{GateKind::kCx, {}, {qs[i - 1], qs[i]}});
      }
      break;
    case 1:  // QFT-like ladder
      for (std::size_t i = 0; i < qs.size(); ++i) {
        out.emplace_back(GateOp{GateKind::kH, {}, {qs[i]}});
        for (std::size_t j = i + 1; j < qs.size(); ++j) {
          out.emplace_back(GateOp{GateKind::kRzz, {random_angle(rng)}, {qs[i], qs[j]}});
        }
      }
      break;
    default: {  // random Clifford block
      constexpr GateKind kCliff1[] = {GateKind::kH, GateKind::kS, GateKind::kSdg,
                                      GateKind::kX, GateKind::kZ};
      constexpr GateKind kCliff2[] = {GateKind::kCx, GateKind::kCz, GateKind::kSwap};
      const auto len = rng.range(2, 4);
      for (std::int64_t i = 0; i < len; ++i) {
        if (qs.size() >= 2 && rng.bernoulli(0.4)) {
          const auto k = kCliff2[rng.below(3)];
          const auto a = rng.below(qs.size());
          auto b = rng.below(qs.size() - 1);
          if (b >= a) ++b;
          out.emplace_back(GateOp{k, {}, {qs[a], qs[b]}});
        } else {
          out.emplace_back(GateOp{kCliff1[rng.below(5)], {}, {qs[rng.below(qs.size())]}});
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

Program generate(const GenConfig& config) {
  check_config(config);
  const std::uint32_t n = config.n_qubits;
  Rng live_rng(derive_seed(config.seed, "gen.live"));
  Rng plan_rng(derive_seed(config.seed, "gen.plan"));
  Rng dead_rng(derive_seed(config.seed, "gen.dead"));
  Rng insert_rng(derive_seed(config.seed, "gen.insert"));
  Rng pipe_rng(derive_seed(config.seed, "gen.pipeline"));

  const auto plan = choose_patterns(config, plan_rng);
  std::uint32_t ancillas = 0;
  for (auto k : plan) {
    if (k == PatternKind::kControlledOnIntDead) {
      ancillas += config.ctrl_width;
    } else if (pattern_category(k) == PatternCategory::kInputDependent) {
      ancillas += 1;
    }
  }
  if (n + ancillas > config.max_total_qubits) {
    throw GenError("pattern plan needs " + std::to_string(ancillas) + " ancillas; " +
                   std::to_string(n) + " data qubits leave room for " +
                   std::to_string(config.max_total_qubits - n));
  }

  Program p;
  p.add_qreg(n);
  p.add_creg(n, true);

  // Live operations.
  Body live;
  std::uint32_t gates = 0;
  while (gates < config.depth) {
    if (live_rng.bernoulli(config.control_site_prob)) {
      const auto count = static_cast<std::uint32_t>(live_rng.range(1, 2));
      if (live_rng.bernoulli(config.live_control_prob)) {
        const auto mid = p.add_creg(1);
        const QubitRef q{0, static_cast<std::uint32_t>(live_rng.below(n))};
        live.emplace_back(Measure{q, {mid, 0}});
        IfTest it;
        it.cond = {{mid, 0}, 1};
        it.then_body = random_gates(live_rng, n, count);
        live.emplace_back(std::move(it));
      } else {
        const auto trip = static_cast<std::uint64_t>(live_rng.range(1, config.for_trip_max));
        live.emplace_back(ForRange{trip, random_gates(live_rng, n, count)});
      }
      gates += count;
    } else if (live_rng.bernoulli(config.subcircuit_prob)) {
      for (auto& g : subcircuit(live_rng, n)) {
        live.push_back(std::move(g));
        ++gates;
      }
    } else {
      live.emplace_back(random_gate(live_rng, n));
      ++gates;
    }
  }

  // Dead chain, innermost pattern first.
  PatternOptions options;
  options.loop_trip = config.loop_trip;
  options.ctrl_width = config.ctrl_width;
  PatternContext ctx{p, {0, 0}, 0};
  Fragment chain;
  bool have_chain = false;
  for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
    Fragment filler;
    filler.body = random_gates(dead_rng, n, static_cast<std::uint32_t>(dead_rng.range(1, 3)));
    if (have_chain) {
      const auto at = static_cast<std::uint32_t>(dead_rng.below(filler.body.size() + 1));
      splice(filler, std::move(chain), at);
    }
    ctx.live = {0, static_cast<std::uint32_t>(dead_rng.below(n))};
    chain = instantiate(*it, std::move(filler), ctx, dead_rng, options);
    have_chain = true;
  }

  Fragment top{std::move(live), {}};
  const auto at = static_cast<std::uint32_t>(insert_rng.below(top.body.size() + 1));
  splice(top, std::move(chain), at);
  p.body = std::move(top.body);
  p.dead_regions = std::move(top.regions);
  std::sort(p.dead_regions.begin(), p.dead_regions.end(),
            [](const DeadRegion& a, const DeadRegion& b) { return a.id < b.id; });
  for (std::uint32_t i = 0; i < n; ++i) p.body.emplace_back(Measure{{0, i}, {0, i}});

  p.meta.seed = config.seed;
  p.meta.data_qubits = n;
  p.meta.patterns = plan;
  if (pipe_rng.bernoulli(config.pass_pipeline_prob)) {
    auto pool = correct_pass_ids();
    const auto len = static_cast<std::size_t>(pipe_rng.range(1, std::min<std::int64_t>(3, pool.size())));
    for (std::size_t i = 0; i < len; ++i) {
      const auto j = i + pipe_rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      p.meta.pipeline.push_back(pool[i]);
    }
  }
  validate(p);
  return p;
}

}  // namespace qfe
