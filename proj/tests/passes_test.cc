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

#include <numbers>

#include "gtest/gtest.h"
#include "qfe/deadcode.h"
#include "qfe/emi.h"
#include "qfe/generator.h"
#include "qfe/simulator.h"
#include "qfe/text_format.h"
#include "test_util.h"

namespace qfe {
namespace {

using testing::blank;
using testing::cb;
using testing::gate;
using testing::measure_all;
using testing::qb;

Program run_ok(const std::string& ids, const Program& p, bool bugs = false) {
  auto out = apply(parse_pipeline(ids, bugs), p);
  if (auto* err = std::get_if<ErrorRecord>(&out)) {
    ADD_FAILURE() << ids << ": " << err->message;
    return p;
  }
  return std::get<Program>(out);
}

ErrorRecord run_err(const std::string& ids, const Program& p, bool bugs = true) {
  auto out = apply(parse_pipeline(ids, bugs), p);
  if (auto* err = std::get_if<ErrorRecord>(&out)) return *err;
  ADD_FAILURE() << ids << " unexpectedly succeeded";
  return {};
}

// Original program with one pattern wrapping an X on q0, measures appended.
Program with_pattern(PatternKind kind, std::uint32_t n = 2) {
  Program p = blank(n);
  Rng rng(7);
  PatternContext ctx{p, qb(1)};
  const auto frag = instantiate(kind, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
  p.body = frag.body;
  p.dead_regions = frag.regions;
  measure_all(p, n);
  validate(p);
  return p;
}

TEST(RegistryTest, CorrectAndSeededPasses) {
  EXPECT_EQ(correct_pass_ids(),
            (std::vector<std::string>{"cancel-inverses", "merge-rotations", "elide-empty-control",
                                      "canonicalize-final-measures", "commute-sort",
                                      "schedule-alap"}));
  int seeded = 0;
  for (const auto& info : pass_registry()) seeded += info.seeded_bug;
  EXPECT_EQ(seeded, 5);
  EXPECT_TRUE(is_seeded_bug("commute-skip-classical"));
  EXPECT_TRUE(is_seeded_bug("alap-moment-order"));
  EXPECT_TRUE(is_seeded_bug("inverse-for-loop"));
  EXPECT_TRUE(is_seeded_bug("final-measure-loop"));
  EXPECT_FALSE(is_seeded_bug("cancel-inverses"));
  EXPECT_FALSE(is_seeded_bug("nonexistent"));
}

TEST(PipelineTest, ParseAndPrint) {
  EXPECT_TRUE(parse_pipeline("").passes.empty());
  EXPECT_TRUE(parse_pipeline("none").passes.empty());
  const auto p = parse_pipeline("cancel-inverses,merge-rotations");
  EXPECT_EQ(p.passes, (std::vector<std::string>{"cancel-inverses", "merge-rotations"}));
  EXPECT_EQ(to_string(p), "cancel-inverses,merge-rotations");
  EXPECT_EQ(to_string(Pipeline{}), "none");
  EXPECT_THROW(parse_pipeline("cancel-inverses,,merge-rotations"), PipelineError);
  EXPECT_THROW(parse_pipeline("nope"), PipelineError);
  EXPECT_THROW(parse_pipeline("commute-skip-classical"), PipelineError);
  EXPECT_NO_THROW(parse_pipeline("commute-skip-classical", true));
}

TEST(ApplyTest, SeededPassNeedsTheFlag) {
  Program p = blank(1);
  measure_all(p, 1);
  const auto err = std::get<ErrorRecord>(apply(Pipeline{{"alap-moment-order"}, false}, p));
  EXPECT_EQ(err.kind, ErrorKind::kInternal);
}

TEST(ApplyTest, InvalidInputIsValidationError) {
  Program p = blank(1);
  p.body.emplace_back(ContinueLoop{});
  const auto err = std::get<ErrorRecord>(apply(Pipeline{}, p));
  EXPECT_EQ(err.kind, ErrorKind::kValidation);
}

TEST(ApplyTest, EmptyPipelineDropsRegionsOnly) {
  const Program p = with_pattern(PatternKind::kForZero);
  Program want = p;
  want.dead_regions.clear();
  EXPECT_EQ(run_ok("", p), want);
}

TEST(CancelInversesTest, AdjacentPairs) {
  Program p = blank(2);
  p.body = {gate(GateKind::kX, {qb(0)}), gate(GateKind::kX, {qb(0)}),
            gate(GateKind::kS, {qb(1)}), gate(GateKind::kSdg, {qb(1)}),
            gate(GateKind::kH, {qb(0)}), gate(GateKind::kX, {qb(0)}),
            gate(GateKind::kCx, {qb(0), qb(1)}), gate(GateKind::kCx, {qb(1), qb(0)})};
  p.body.emplace_back(ForRange{2, {gate(GateKind::kT, {qb(0)}), gate(GateKind::kTdg, {qb(0)})}});
  const auto out = run_ok("cancel-inverses", p);
  ASSERT_EQ(out.body.size(), 5u);
  EXPECT_EQ(out.body[0], gate(GateKind::kH, {qb(0)}));
  EXPECT_TRUE(out.body[4].as<ForRange>().body.empty());
}

TEST(CancelInversesTest, NestedPairsCollapse) {
  Program p = blank(1);
  p.body = {gate(GateKind::kH, {qb(0)}), gate(GateKind::kX, {qb(0)}), gate(GateKind::kX, {qb(0)}),
            gate(GateKind::kH, {qb(0)})};
  EXPECT_TRUE(run_ok("cancel-inverses", p).body.empty());
}

TEST(MergeRotationsTest, Fuses) {
  Program p = blank(2);
  p.body = {gate(GateKind::kRz, {qb(0)}, {0.25}), gate(GateKind::kRz, {qb(0)}, {0.5}),
            gate(GateKind::kRx, {qb(1)}, {0.0}),
            gate(GateKind::kRzz, {qb(0), qb(1)}, {1.0}), gate(GateKind::kRzz, {qb(1), qb(0)}, {2.0}),
            gate(GateKind::kRy, {qb(1)}, {std::numbers::pi}),
            gate(GateKind::kRy, {qb(1)}, {std::numbers::pi})};
  const auto out = run_ok("merge-rotations", p);
  ASSERT_EQ(out.body.size(), 2u);
  EXPECT_EQ(out.body[0], gate(GateKind::kRz, {qb(0)}, {0.75}));
  EXPECT_EQ(out.body[1], gate(GateKind::kRzz, {qb(0), qb(1)}, {3.0}));
}

TEST(MergeRotationsTest, LeavesControlledBodiesAlone) {
  Program p = blank(2);
  p.body.emplace_back(ControlledOnInt{1, {qb(1)},
                                      {gate(GateKind::kRz, {qb(0)}, {4.0}),
                                       gate(GateKind::kRz, {qb(0)}, {4.0})}});
  EXPECT_EQ(run_ok("merge-rotations", p).body, p.body);
}

TEST(ElideEmptyControlTest, RemovesEmptyConstructs) {
  Program p = blank(1);
  const auto c = p.add_creg(1);
  p.body.emplace_back(IfTest{{{c, 0}, 1}, {}, {}});
  p.body.emplace_back(ForRange{3, {}});
  Switch sw;
  sw.subject = {c, std::nullopt};
  sw.cases = {{0, {}}, {1, {}}};
  p.body.emplace_back(sw);
  p.body.emplace_back(ControlledOnInt{1, {qb(0)}, {}});
  p.body.emplace_back(WhileLoop{{{c, 0}, 1}, {}});
  p.body.emplace_back(IfTest{{{c, 0}, 1}, {}, {gate(GateKind::kX, {qb(0)})}});
  const auto out = run_ok("elide-empty-control", p);
  ASSERT_EQ(out.body.size(), 2u);
  EXPECT_TRUE(out.body[0].is<WhileLoop>());
  EXPECT_TRUE(out.body[1].is<IfTest>());
}

TEST(CanonicalizeFinalMeasuresTest, SortsTail) {
  Program p = blank(3);
  p.body = {gate(GateKind::kX, {qb(0)}), Measure{qb(2), cb(2)}, Measure{qb(0), cb(0)},
            Measure{qb(1), cb(1)}};
  const auto out = run_ok("canonicalize-final-measures", p);
  EXPECT_EQ(out.body[1], (Instruction{Measure{qb(0), cb(0)}}));
  EXPECT_EQ(out.body[3], (Instruction{Measure{qb(2), cb(2)}}));
}

TEST(CanonicalizeFinalMeasuresTest, KeepsRepeatedTargets) {
  Program p = blank(2);
  p.body = {Measure{qb(1), cb(0)}, gate(GateKind::kX, {qb(1)}), Measure{qb(1), cb(1)},
            Measure{qb(0), cb(1)}};
  EXPECT_EQ(run_ok("canonicalize-final-measures", p).body, p.body);
}

TEST(CommuteSortTest, OrdersByLowestQubit) {
  Program p = blank(3);
  p.body = {gate(GateKind::kX, {qb(2)}), gate(GateKind::kH, {qb(1)}), gate(GateKind::kX, {qb(0)}),
            gate(GateKind::kCx, {qb(0), qb(2)})};
  const auto out = run_ok("commute-sort", p);
  EXPECT_EQ(out.body, (Body{gate(GateKind::kX, {qb(0)}), gate(GateKind::kH, {qb(1)}),
                            gate(GateKind::kX, {qb(2)}), gate(GateKind::kCx, {qb(0), qb(2)})}));
}

TEST(CommuteSortTest, RespectsClassicalDependencies) {
  const Program p = with_pattern(PatternKind::kIfTestDead);
  const auto out = run_ok("commute-sort", p);
  EXPECT_TRUE(out.body[1].is<Measure>());
  EXPECT_TRUE(out.body[2].is<IfTest>());
}

TEST(ScheduleAlapTest, LayersFromTheEnd) {
  Program p = blank(3);
  p.body = {gate(GateKind::kX, {qb(1)}), gate(GateKind::kH, {qb(0)}), gate(GateKind::kCx, {qb(0), qb(2)})};
  const auto out = run_ok("schedule-alap", p);
  EXPECT_EQ(out.body, (Body{gate(GateKind::kH, {qb(0)}), gate(GateKind::kX, {qb(1)}),
                            gate(GateKind::kCx, {qb(0), qb(2)})}));
}

TEST(PassSoundnessTest, CorrectPassesPreserveDistributions) {
  std::vector<std::string> pipelines = correct_pass_ids();
  pipelines.push_back("cancel-inverses,merge-rotations,elide-empty-control,"
                      "canonicalize-final-measures,commute-sort,schedule-alap");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.control_site_prob = 0.25;
    const Program p = generate(cfg);
    const Program v = derive_variant(p);
    for (const Program* prog : {&p, &v}) {
      const auto want = enumerate_distribution(*prog).distribution;
      for (const auto& ids : pipelines) {
        const Program out = run_ok(ids, *prog);
        EXPECT_LE(linf_distance(enumerate_distribution(out).distribution, want), 1e-9)
            << ids << " seed " << seed;
      }
    }
  }
}

TEST(PassSoundnessTest, Deterministic) {
  GenConfig cfg;
  cfg.seed = 12;
  const Program p = generate(cfg);
  for (const auto& id : correct_pass_ids()) {
    EXPECT_EQ(serialize(run_ok(id, p)), serialize(run_ok(id, p))) << id;
  }
}

// Seeded bugs: each witness passes its pass over an EMI pair and shows the
// pair diverging.

TEST(SeededBugTest, CommuteSkipClassicalHoistsGuardedBranch) {
  const Program p = with_pattern(PatternKind::kIfTestDead);
  const Program v = derive_variant(p);
  const auto po = run_ok("commute-skip-classical", p, true);
  const auto vo = run_ok("commute-skip-classical", v, true);
  EXPECT_TRUE(po.body[0].is<IfTest>());
  // Original now runs its filler X; the variant skips the live H.
  EXPECT_EQ(enumerate_distribution(po).distribution, (Distribution{{"01", 1.0}}));
  EXPECT_EQ(enumerate_distribution(vo).distribution, (Distribution{{"00", 1.0}}));
  EXPECT_GT(check_equivalence_exact(p, po), 0.1);
}

TEST(SeededBugTest, AlapMomentOrderReversesLayers) {
  const Program p = with_pattern(PatternKind::kSwitchDead);
  const auto po = run_ok("alap-moment-order", p, true);
  const auto vo = run_ok("alap-moment-order", derive_variant(p), true);
  EXPECT_GT(linf_distance(enumerate_distribution(po).distribution,
                          enumerate_distribution(vo).distribution),
            0.1);
  // The same layering with layers kept in order is fine.
  EXPECT_LE(check_equivalence_exact(p, run_ok("schedule-alap", p)), 1e-12);
}

TEST(SeededBugTest, InverseForLoopFailsOnVariantOnly) {
  Program p = blank(2);
  Rng rng(1);
  PatternContext ctx{p, qb(1)};
  const auto frag =
      instantiate(PatternKind::kControlledOnIntDead, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
  p.body.emplace_back(ForRange{2, {gate(GateKind::kH, {qb(0)})}});
  for (const auto& r : frag.regions) p.dead_regions.push_back(rebase(r, {}, 1));
  for (const auto& i : frag.body) p.body.push_back(i);
  measure_all(p, 2);
  validate(p);
  EXPECT_NO_THROW(run_ok("inverse-for-loop", p, true));
  const auto err = run_err("inverse-for-loop", derive_variant(p));
  EXPECT_EQ(err.kind, ErrorKind::kPass);
  EXPECT_EQ(err.message, "inverse-for-loop: inverse() not implemented for for_loop");
  EXPECT_EQ(err.normalized_signature, "PassError:inverse-for-loop: inverse() not implemented for for_loop");
}

TEST(SeededBugTest, FinalMeasureLoopSpinsOnOriginalOnly) {
  Program p = blank(2);
  Rng rng(1);
  PatternContext ctx{p, qb(1)};
  auto inner = instantiate(PatternKind::kIfTestDead, {{gate(GateKind::kX, {qb(0)})}, {}}, ctx, rng);
  const auto frag = instantiate(PatternKind::kForZero, std::move(inner), ctx, rng);
  p.body = frag.body;
  p.dead_regions = frag.regions;
  measure_all(p, 2);
  validate(p);
  const auto err = run_err("final-measure-loop", p);
  EXPECT_EQ(err.kind, ErrorKind::kInfiniteLoop);
  EXPECT_EQ(err.normalized_signature,
            "InfiniteLoop:final-measure-loop: final-measure removal did not settle after <n> sweeps");
  EXPECT_NO_THROW(run_ok("final-measure-loop", derive_variant(p), true));
}

TEST(SeededBugTest, FinalMeasureLoopMovesEarlyMeasures) {
  Program p = blank(2);
  p.body = {Measure{qb(0), cb(0)}, gate(GateKind::kH, {qb(1)}), Measure{qb(1), cb(1)}};
  const auto out = run_ok("final-measure-loop", p, true);
  EXPECT_EQ(enumerate_distribution(out).distribution, enumerate_distribution(p).distribution);
}

TEST(SeededBugTest, UnawareElisionRejectsControlledOnInt) {
  const Program p = with_pattern(PatternKind::kControlledOnIntDead);
  const auto err = run_err("elide-empty-control-unaware", p);
  EXPECT_EQ(err.kind, ErrorKind::kPass);
  EXPECT_NO_THROW(run_ok("elide-empty-control-unaware", derive_variant(p), true));
}

}  // namespace
}  // namespace qfe
