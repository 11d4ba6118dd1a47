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

#include <algorithm>

#include "gtest/gtest.h"
#include "qfe/emi.h"
#include "qfe/simulator.h"
#include "test_util.h"

namespace qfe {
namespace {

using testing::blank;
using testing::gate;
using testing::measure_all;
using testing::qb;

std::vector<PatternKind> all_kinds() {
  std::vector<PatternKind> out;
  for (int k = 0; k < kNumPatternKinds; ++k) out.push_back(static_cast<PatternKind>(k));
  return out;
}

// Places `frag` on a fresh 2-qubit program followed by terminal measures.
Program host(Program p, const Fragment& frag) {
  p.body = frag.body;
  p.dead_regions = frag.regions;
  measure_all(p, 2);
  return p;
}

void expect_never_runs(const Program& p, const Enumeration& e) {
  for (const auto& r : p.dead_regions) {
    for (auto i = r.span.begin; i < r.span.end; ++i) {
      EXPECT_EQ(coverage_of(e.coverage, {r.span.body, i}), 0u)
          << pattern_name(r.kind) << " at " << to_string(NodePath{r.span.body, i});
    }
  }
}

TEST(CatalogTest, SevenKindsSplitByCategory) {
  const auto cat = catalog();
  ASSERT_EQ(cat.size(), 7u);
  int dependent = 0;
  for (const auto& info : cat) {
    dependent += info.category == PatternCategory::kInputDependent;
    EXPECT_EQ(info.admits_nesting, info.kind != PatternKind::kControlledOnIntDead);
    EXPECT_EQ(pattern_from_name(pattern_name(info.kind)), info.kind);
  }
  EXPECT_EQ(dependent, 4);
  EXPECT_EQ(pattern_category(PatternKind::kForZero), PatternCategory::kInputIndependent);
  EXPECT_EQ(pattern_category(PatternKind::kForBreak), PatternCategory::kInputIndependent);
  EXPECT_EQ(pattern_category(PatternKind::kForContinue), PatternCategory::kInputIndependent);
}

TEST(InstantiateTest, ForZeroTemplate) {
  Program p = blank(2);
  Rng rng(1);
  PatternContext ctx{p, qb(1)};
  const auto frag = instantiate(PatternKind::kForZero, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
  ASSERT_EQ(frag.body.size(), 1u);
  const auto& f = frag.body[0].as<ForRange>();
  EXPECT_EQ(f.count, 0u);
  EXPECT_EQ(f.body, Body{gate(GateKind::kX, {qb(0)})});
  ASSERT_EQ(frag.regions.size(), 1u);
  EXPECT_EQ(frag.regions[0].span, (Span{{{0, 0}}, 0, 1}));
  EXPECT_TRUE(frag.regions[0].ancilla_qubits.empty());
  EXPECT_EQ(p.qregs.size(), 1u);
}

TEST(InstantiateTest, IfTestDeadTemplate) {
  Program p = blank(2);
  Rng rng(1);
  PatternContext ctx{p, qb(1)};
  const auto frag = instantiate(PatternKind::kIfTestDead, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
  ASSERT_EQ(frag.body.size(), 3u);
  EXPECT_EQ(frag.body[0], gate(GateKind::kX, {qb(0, 1)}));
  EXPECT_EQ(frag.body[1], (Instruction{Measure{qb(0, 1), {1, 0}}}));
  const auto& it = frag.body[2].as<IfTest>();
  EXPECT_EQ(it.cond.value, 0u);
  EXPECT_EQ(it.else_body, Body{gate(GateKind::kH, {qb(1)})});
  EXPECT_EQ(frag.regions[0].span, (Span{{{2, 0}}, 0, 1}));

  const Program prog = host(p, frag);
  const auto e = enumerate_distribution(prog);
  expect_never_runs(prog, e);
  EXPECT_EQ(coverage_of(e.coverage, {{{2, 1}}, 0}), 2u);  // once per measured path
  EXPECT_NEAR(e.distribution.at("10"), 0.5, 1e-15);
}

TEST(InstantiateTest, ControlledOnIntExample) {
  // A 3-qubit control register left in |000> guarding value 7.
  Program p = blank(2);
  Rng rng(1);
  PatternContext ctx{p, qb(1)};
  PatternOptions opts;
  opts.ctrl_value = 7;
  const Instruction rzz = gate(GateKind::kRzz, {qb(0), qb(1)}, {5.86706});
  const auto frag = instantiate(PatternKind::kControlledOnIntDead, {{rzz}, {}}, ctx, rng, opts);
  ASSERT_EQ(frag.body.size(), 1u);
  const auto& coi = frag.body[0].as<ControlledOnInt>();
  EXPECT_EQ(coi.value, 7u);
  EXPECT_EQ(coi.ctrl, (std::vector<QubitRef>{qb(0, 1), qb(1, 1), qb(2, 1)}));
  EXPECT_EQ(coi.body, Body{rzz});
  EXPECT_EQ(frag.regions[0].ancilla_qubits, coi.ctrl);

  Program prog = host(p, frag);
  prog.body.insert(prog.body.begin(), gate(GateKind::kH, {qb(0)}));
  for (auto& r : prog.dead_regions) r = rebase(r, {}, 1);
  validate(prog);
  const auto e = enumerate_distribution(prog);
  expect_never_runs(prog, e);
  EXPECT_NEAR(e.distribution.at("00"), 0.5, 1e-15);
  EXPECT_NEAR(e.distribution.at("01"), 0.5, 1e-15);
}

TEST(InstantiateTest, ControlledOnIntValueIsNonZero) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Program p = blank(2);
    Rng rng(seed);
    PatternContext ctx{p, qb(1)};
    PatternOptions opts;
    opts.ctrl_width = 2;
    const auto frag =
        instantiate(PatternKind::kControlledOnIntDead, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng, opts);
    const auto v = frag.body[0].as<ControlledOnInt>().value;
    EXPECT_GE(v, 1u);
    EXPECT_LE(v, 3u);
  }
}

TEST(InstantiateTest, EveryKindNeverRunsItsFiller) {
  for (auto kind : all_kinds()) {
    Program p = blank(2);
    Rng rng(5);
    PatternContext ctx{p, qb(1)};
    const Body filler{gate(GateKind::kX, {qb(0)}), gate(GateKind::kRx, {qb(0)}, {0.3})};
    const auto frag = instantiate(kind, {filler, {}}, ctx, rng);
    ASSERT_EQ(frag.regions.size(), 1u);
    EXPECT_EQ(frag.regions[0].kind, kind);
    EXPECT_EQ(frag.regions[0].span.end - frag.regions[0].span.begin, 2u);
    const Program prog = host(p, frag);
    ASSERT_NO_THROW(validate(prog)) << pattern_name(kind);
    const auto e = enumerate_distribution(prog);
    expect_never_runs(prog, e);
    EXPECT_LE(check_equivalence_exact(prog, derive_variant(prog)), 1e-12) << pattern_name(kind);
    // The filler would flip q0 if it ran.
    double q0_set = 0;
    for (const auto& [key, pr] : e.distribution) q0_set += key.back() == '1' ? pr : 0;
    EXPECT_LE(q0_set, 1e-12) << pattern_name(kind);
  }
}

TEST(InstantiateTest, GuardMeasurementsAreDeterministic) {
  for (auto kind : {PatternKind::kIfTestDead, PatternKind::kWhileDead, PatternKind::kSwitchDead}) {
    Program p = blank(2);
    Rng rng(5);
    PatternContext ctx{p, qb(1)};
    const auto frag = instantiate(kind, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
    Program prog = host(p, frag);
    prog.body.insert(prog.body.begin(), gate(GateKind::kH, {qb(0)}));
    for (auto& r : prog.dead_regions) r = rebase(r, {}, 1);
    const auto e = enumerate_distribution(prog);
    const double guard = e.measure_min_branch.at({{}, 2});
    EXPECT_LE(guard, 1e-12) << pattern_name(kind);
  }
}

TEST(InstantiateTest, NestingPreservesNonExecution) {
  for (auto outer : all_kinds()) {
    if (outer == PatternKind::kControlledOnIntDead) continue;
    for (auto inner : all_kinds()) {
      Program p = blank(2);
      Rng rng(11);
      PatternContext ctx{p, qb(1)};
      auto in = instantiate(inner, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
      Fragment filler{{gate(GateKind::kY, {qb(0)}), gate(GateKind::kZ, {qb(1)})}, {}};
      splice(filler, std::move(in), 1);
      const auto frag = instantiate(outer, std::move(filler), ctx, rng);
      ASSERT_EQ(frag.regions.size(), 2u);
      EXPECT_EQ(frag.regions[0].kind, inner);
      EXPECT_EQ(frag.regions[1].kind, outer);
      EXPECT_EQ(frag.regions[0].id, 0u);
      EXPECT_EQ(frag.regions[1].id, 1u);
      const Program prog = host(p, frag);
      ASSERT_NO_THROW(validate(prog)) << pattern_name(outer) << "/" << pattern_name(inner);
      const auto e = enumerate_distribution(prog);
      expect_never_runs(prog, e);
      EXPECT_LE(check_equivalence_exact(prog, derive_variant(prog)), 1e-12);
    }
  }
}

TEST(InstantiateTest, RejectsBadFillersAndOptions) {
  Program p = blank(2);
  Rng rng(1);
  PatternContext ctx{p, qb(1)};
  EXPECT_THROW(instantiate(PatternKind::kForZero, {{BreakLoop{}}, {}}, ctx, rng), PatternError);
  EXPECT_THROW(instantiate(PatternKind::kIfTestDead, {{IfTest{{{0, 0}, 0}, {ContinueLoop{}}, {}}}, {}},
                           ctx, rng),
               PatternError);
  EXPECT_THROW(
      instantiate(PatternKind::kControlledOnIntDead, {{Measure{qb(0), {0, 0}}}, {}}, ctx, rng),
      PatternError);
  auto inner = instantiate(PatternKind::kForZero, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
  EXPECT_THROW(instantiate(PatternKind::kControlledOnIntDead, inner, ctx, rng), PatternError);
  PatternOptions opts;
  opts.ctrl_value = 0;
  EXPECT_THROW(instantiate(PatternKind::kControlledOnIntDead, {{gate(GateKind::kX, {qb(0)})}, {}},
                           ctx, rng, opts),
               PatternError);
  opts.ctrl_value = 8;
  EXPECT_THROW(instantiate(PatternKind::kControlledOnIntDead, {{gate(GateKind::kX, {qb(0)})}, {}},
                           ctx, rng, opts),
               PatternError);
  opts = {};
  opts.loop_trip = 0;
  EXPECT_THROW(instantiate(PatternKind::kForBreak, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng, opts),
               PatternError);
  // Loops nested in the filler may use break freely.
  EXPECT_NO_THROW(instantiate(PatternKind::kIfTestDead,
                              {{ForRange{2, {BreakLoop{}}}}, {}}, ctx, rng));
}

TEST(SpliceTest, ShiftsRegionsAfterInsertionPoint) {
  Fragment outer{{gate(GateKind::kX, {qb(0)}), ForRange{0, {gate(GateKind::kX, {qb(0)})}}}, {}};
  outer.regions.push_back({0, PatternKind::kForZero, {{{1, 0}}, 0, 1}, {}, {}});
  Fragment inner{{ForRange{0, {}}, ForRange{0, {gate(GateKind::kY, {qb(0)})}}}, {}};
  inner.regions.push_back({1, PatternKind::kForZero, {{{1, 0}}, 0, 1}, {}, {}});
  splice(outer, inner, 1);
  ASSERT_EQ(outer.body.size(), 4u);
  EXPECT_EQ(outer.regions[0].span, (Span{{{3, 0}}, 0, 1}));
  EXPECT_EQ(outer.regions[1].span, (Span{{{2, 0}}, 0, 1}));
}

TEST(RebaseTest, TopLevelAndNestedSpans) {
  DeadRegion top{0, PatternKind::kForZero, {{}, 1, 3}, {}, {}};
  EXPECT_EQ(rebase(top, {{4, 1}}, 2).span, (Span{{{4, 1}}, 3, 5}));
  DeadRegion nested{0, PatternKind::kForZero, {{{1, 0}}, 0, 2}, {}, {}};
  EXPECT_EQ(rebase(nested, {{4, 1}}, 2).span, (Span{{{4, 1}, {3, 0}}, 0, 2}));
}

}  // namespace
}  // namespace qfe
