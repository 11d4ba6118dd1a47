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

#include "qfe/harness.h"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qfe/bridge_client.h"
#include "qfe/emi.h"
#include "qfe/rng.h"
#include "qfe/simulator.h"
#include "qfe/text_format.h"

namespace qfe {

std::string_view to_string(Backend b) { return b == Backend::kBuiltin ? "builtin" : "bridge"; }

Backend backend_from_name(std::string_view name) {
  if (name == "builtin") return Backend::kBuiltin;
  if (name == "bridge") return Backend::kBridge;
  throw std::invalid_argument("unknown backend: " + std::string(name));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kSkip: return "skip";
    case Verdict::kCrash: return "crash";
    case Verdict::kWrong: return "wrong";
  }
  return "?";
}

Verdict verdict_from_name(std::string_view name) {
  for (auto v : {Verdict::kPass, Verdict::kSkip, Verdict::kCrash, Verdict::kWrong}) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown verdict: " + std::string(name));
}

SamplerFactory builtin_factory() {
  return [](const Program& p, std::uint64_t seed) -> std::unique_ptr<CountsSampler> {
    return std::make_unique<ShotSampler>(p, seed);
  };
}

SamplerFactory bridge_factory(BridgeClient& client, int pipeline_hint) {
  return [&client, pipeline_hint](const Program& p,
                                  std::uint64_t seed) -> std::unique_ptr<CountsSampler> {
    return std::make_unique<BridgeSampler>(client, serialize(p), seed, pipeline_hint);
  };
}

PairEvaluation evaluate_pair(const Program& original, const Program& variant,
                             const Pipeline& sigma, const Budget& budget, const PairSeeds& seeds,
                             const SamplerFactory& make_sampler) {
  PairEvaluation ev;
  const PassOutcome tp = apply(sigma, original);
  const PassOutcome tv = apply(sigma, variant);

  auto first_draw = [&](const PassOutcome& t, std::uint64_t seed,
                        std::unique_ptr<CountsSampler>& sampler) -> ExecOutcome {
    if (const auto* e = std::get_if<ErrorRecord>(&t)) return *e;
    sampler = make_sampler(std::get<Program>(t), seed);
    return sampler->draw(budget.s_round);
  };
  std::unique_ptr<CountsSampler> sp, sv;
  const ExecOutcome rp = first_draw(tp, seeds.original, sp);
  const ExecOutcome rv = first_draw(tv, seeds.variant, sv);

  auto record = [&](const ExecOutcome& a, const ExecOutcome& b) {
    ev.comparison = compare_errors(a, b);
    if (!is_ok(a)) ev.error_original = error_of(a);
    if (!is_ok(b)) ev.error_variant = error_of(b);
    ev.verdict = ev.comparison == ErrorComparison::kSameError ? Verdict::kSkip : Verdict::kCrash;
  };

  ev.comparison = compare_errors(rp, rv);
  if (ev.comparison != ErrorComparison::kBothOk) {
    record(rp, rv);
    return ev;
  }
  ev.consistency = early_stop_compare(*sp, *sv, budget, hellinger_counts,
                                      std::make_pair(counts_of(rp), counts_of(rv)));
  const auto& c = ev.consistency;
  if (c.error_a || c.error_b) {
    const ExecOutcome a = c.error_a ? ExecOutcome{*c.error_a} : ExecOutcome{c.counts_a};
    const ExecOutcome b = c.error_b ? ExecOutcome{*c.error_b} : ExecOutcome{c.counts_b};
    record(a, b);
    return ev;
  }
  ev.verdict = !c.equivalent && c.final_h >= budget.delta ? Verdict::kWrong : Verdict::kPass;
  return ev;
}

std::string BugReport::dir_name() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s-i%06llu-s%llu", std::string(to_string(label)).c_str(),
                static_cast<unsigned long long>(iteration),
                static_cast<unsigned long long>(sigma_index));
  return buf;
}

std::uint64_t iteration_seed(std::uint64_t master, std::uint64_t i) {
  return derive_seed(master, "iteration", i);
}

PairSeeds pair_seeds(std::uint64_t iter_seed, std::uint64_t sigma_index) {
  return {derive_seed(iter_seed, "sample.original", sigma_index),
          derive_seed(iter_seed, "sample.variant", sigma_index)};
}

namespace {

struct IterationOutput {
  std::vector<BugReport> reports;
  std::vector<PairRecord> records;
  bool generation_failed = false;
};

IterationOutput run_iteration(const CampaignConfig& cfg, const Budget& budget, std::uint64_t i,
                              const SamplerFactory& factory,
                              const std::optional<std::vector<std::string>>& capabilities) {
  IterationOutput out;
  const std::uint64_t seed = iteration_seed(cfg.master_seed, i);
  GenConfig gen = cfg.gen;
  gen.seed = seed;
  gen.n_qubits = cfg.n_qubits;
  if (capabilities) gen.pattern_weights = filter_weights(gen.pattern_weights, *capabilities);

  Program original;
  try {
    original = generate(gen);
  } catch (const GenError&) {
    out.generation_failed = true;
    return out;
  }
  const Program variant = derive_variant(original);

  std::vector<Pipeline> sigmas = cfg.pipelines;
  if (cfg.include_generated_pipeline && !original.meta.pipeline.empty()) {
    sigmas.push_back(Pipeline{original.meta.pipeline, false});
  }
  std::string original_text, variant_text;
  for (std::uint64_t s = 0; s < sigmas.size(); ++s) {
    const PairSeeds seeds = pair_seeds(seed, s);
    PairEvaluation ev = evaluate_pair(original, variant, sigmas[s], budget, seeds, factory);
    out.records.push_back({i, s, ev.verdict, ev.consistency.equivalent,
                           ev.consistency.total_shots, ev.consistency.final_h});
    if (ev.verdict != Verdict::kCrash && ev.verdict != Verdict::kWrong) continue;
    if (original_text.empty()) {
      original_text = serialize(original);
      variant_text = serialize(variant);
    }
    BugReport r;
    r.label = ev.verdict;
    r.backend = cfg.backend;
    r.iteration = i;
    r.sigma_index = s;
    r.master_seed = cfg.master_seed;
    r.iteration_seed = seed;
    r.seeds = seeds;
    r.pipeline = sigmas[s];
    r.budget = budget;
    r.original_text = original_text;
    r.variant_text = variant_text;
    r.evaluation = std::move(ev);
    out.reports.push_back(std::move(r));
  }
  return out;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (cfg.pipelines.empty() && !cfg.include_generated_pipeline) {
    throw std::invalid_argument("no pipelines configured");
  }
  if (cfg.parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  if (cfg.backend == Backend::kBridge && cfg.bridge.command.empty()) {
    throw std::invalid_argument("bridge backend needs an adapter command");
  }
  for (const auto& p : cfg.pipelines) {
    for (const auto& id : p.passes) {
      if (is_seeded_bug(id) && !p.include_seeded_bugs) {
        throw std::invalid_argument("seeded-bug pass " + id + " without the seeded-bug flag");
      }
    }
  }
  const Budget b = budget(cfg.delta, cfg.n_qubits);

  std::vector<IterationOutput> outputs(cfg.max_iter);
  std::vector<char> done(cfg.max_iter, 0);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> found{0};
  std::atomic<bool> stop{false};
  std::mutex error_mu;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      std::unique_ptr<BridgeClient> client;
      SamplerFactory factory;
      std::optional<std::vector<std::string>> caps;
      if (cfg.backend == Backend::kBridge) {
        client = std::make_unique<BridgeClient>(cfg.bridge.command, cfg.bridge.timeout);
        factory = bridge_factory(*client, cfg.bridge.pipeline_hint);
        caps = client->hello().capabilities;
      } else {
        factory = builtin_factory();
      }
      while (!stop) {
        const std::uint64_t i = next++;
        if (i >= cfg.max_iter) break;
        outputs[i] = run_iteration(cfg, b, i, factory, caps);
        done[i] = 1;
        const auto total = found += outputs[i].reports.size();
        if (cfg.stop_after_reports && total >= cfg.stop_after_reports) stop = true;
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };
  if (cfg.parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < cfg.parallelism; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  CampaignResult result;
  for (std::uint64_t i = 0; i < cfg.max_iter; ++i) {
    if (!done[i]) continue;
    ++result.iterations_run;
    auto& o = outputs[i];
    if (o.generation_failed) ++result.generation_failures;
    for (auto& r : o.records) result.records.push_back(r);
    for (auto& r : o.reports) result.reports.push_back(std::move(r));
    // Workers may run past the threshold; cut at the same place a serial
    // run would have stopped.
    if (cfg.stop_after_reports && result.reports.size() >= cfg.stop_after_reports) break;
  }
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    for (const auto& r : result.reports) write_report(cfg.output_dir, r);
  }
  return result;
}

}  // namespace qfe
