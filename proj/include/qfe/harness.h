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

#ifndef QFE_HARNESS_H_
#define QFE_HARNESS_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfe/checker.h"
#include "qfe/generator.h"
#include "qfe/passes.h"

namespace qfe {

class BridgeClient;

enum class Backend { kBuiltin, kBridge };
std::string_view to_string(Backend b);
Backend backend_from_name(std::string_view name);

// kSkip: both sides failed with the same signature, which is not a bug.
enum class Verdict { kPass, kSkip, kCrash, kWrong };
std::string_view to_string(Verdict v);
Verdict verdict_from_name(std::string_view name);

struct BridgeOptions {
  std::vector<std::string> command;
  std::chrono::milliseconds timeout = std::chrono::seconds(60);
  int pipeline_hint = 0;
};

struct CampaignConfig {
  Backend backend = Backend::kBuiltin;
  std::uint64_t max_iter = 100;
  double delta = 0.1;
  std::uint32_t n_qubits = 5;
  GenConfig gen;
  // The configuration set; every program runs under each entry.
  std::vector<Pipeline> pipelines{Pipeline{}};
  // Also run each program under the pipeline the generator attached to it.
  bool include_generated_pipeline = true;
  // Reports are written here when non-empty.
  std::filesystem::path output_dir;
  unsigned parallelism = 1;
  std::uint64_t master_seed = 0;
  // Stop after the iteration that brings the report count to this; 0 never.
  std::uint64_t stop_after_reports = 0;
  BridgeOptions bridge;
};

struct PairSeeds {
  std::uint64_t original = 0;
  std::uint64_t variant = 0;
};

struct PairEvaluation {
  Verdict verdict = Verdict::kPass;
  ErrorComparison comparison = ErrorComparison::kBothOk;
  std::optional<ErrorRecord> error_original;
  std::optional<ErrorRecord> error_variant;
  // Meaningful when comparison is kBothOk.
  ConsistencyResult consistency;
};

using SamplerFactory =
    std::function<std::unique_ptr<CountsSampler>(const Program&, std::uint64_t seed)>;

SamplerFactory builtin_factory();
SamplerFactory bridge_factory(BridgeClient& client, int pipeline_hint);

// Transforms both programs under `sigma`, draws a first round, compares
// errors and, when both ran, runs the early-stop comparison. The pair is
// `wrong` only when equivalence was not established and the final distance
// is at least delta.
PairEvaluation evaluate_pair(const Program& original, const Program& variant,
                             const Pipeline& sigma, const Budget& budget, const PairSeeds& seeds,
                             const SamplerFactory& make_sampler);

struct BugReport {
  Verdict label = Verdict::kCrash;
  Backend backend = Backend::kBuiltin;
  std::uint64_t iteration = 0;
  std::uint64_t sigma_index = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t iteration_seed = 0;
  PairSeeds seeds;
  Pipeline pipeline;
  Budget budget;
  std::string original_text;
  std::string variant_text;
  PairEvaluation evaluation;

  std::string dir_name() const;
};

struct PairRecord {
  std::uint64_t iteration = 0;
  std::uint64_t sigma_index = 0;
  Verdict verdict = Verdict::kPass;
  bool equivalent = false;
  std::uint64_t total_shots = 0;
  double final_h = 0;
};

struct CampaignResult {
  std::vector<BugReport> reports;
  std::vector<PairRecord> records;
  std::uint64_t iterations_run = 0;
  std::uint64_t generation_failures = 0;
};

// Throws std::invalid_argument for an invalid config and
// std::filesystem::filesystem_error for report I/O failures.
CampaignResult run_campaign(const CampaignConfig& config);

// Seed of iteration `i` under `master`.
std::uint64_t iteration_seed(std::uint64_t master, std::uint64_t i);
PairSeeds pair_seeds(std::uint64_t iteration_seed, std::uint64_t sigma_index);

// ---------------------------------------------------------------------------
// Report persistence.

class ReproError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// FNV-1a 64 of the text, as 16 hex digits.
std::string text_digest(std::string_view text);

std::string report_meta_json(const BugReport& report);

// Creates <out>/<report.dir_name()> atomically (written under a temporary
// name, then renamed) and returns its path.
std::filesystem::path write_report(const std::filesystem::path& out_dir,
                                   const BugReport& report);

struct Reproduction {
  Verdict stored = Verdict::kCrash;
  Verdict verdict = Verdict::kPass;
  bool matches = false;
  std::vector<std::string> warnings;
  PairEvaluation evaluation;
};

// Re-runs a stored report. Throws ReproError when the directory does not
// hold a readable report.
Reproduction reproduce(const std::filesystem::path& report_dir,
                       const BridgeOptions* bridge = nullptr);

}  // namespace qfe

#endif  // QFE_HARNESS_H_
