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

// qfe: command-line front end for campaigns, reports and single programs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qfe/bridge_client.h"
#include "qfe/emi.h"
#include "qfe/generator.h"
#include "qfe/harness.h"
#include "qfe/simulator.h"
#include "qfe/text_format.h"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitToolError = 1;
constexpr int kExitBugs = 2;

std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream in(cmd);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential testing of quantum circuit passes with dead-code variants"};
  app.require_subcommand(1);

  // campaign
  auto* campaign = app.add_subcommand("campaign", "run a testing campaign");
  std::string backend = "builtin";
  std::uint64_t iters = 100;
  std::uint32_t qubits = 5;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::vector<std::string> pipelines;
  bool seed_bugs = false;
  bool no_generated = false;
  std::string out_dir;
  std::string config_path;
  std::string adapter;
  double timeout_s = 60;
  int hint = 0;
  unsigned parallelism = 1;
  std::uint64_t stop_after = 0;
  campaign->add_option("--backend", backend, "builtin or bridge")
      ->check(CLI::IsMember({"builtin", "bridge"}));
  campaign->add_option("--iters", iters, "iterations")->check(CLI::PositiveNumber);
  campaign->add_option("--qubits", qubits, "data qubits per program")->check(CLI::Range(1, 20));
  campaign->add_option("--delta", delta, "Hellinger threshold");
  campaign->add_option("--seed", seed, "master seed");
  campaign->add_option("--pipeline", pipelines,
                       "comma-separated pass list; repeat for several configurations");
  campaign->add_flag("--seed-bugs", seed_bugs, "allow seeded-bug passes");
  campaign->add_flag("--no-generated-pipelines", no_generated,
                     "ignore pipelines attached by the generator");
  campaign->add_option("--out", out_dir, "report directory");
  campaign->add_option("--config", config_path, "generator config file (key = value)");
  campaign->add_option("--adapter", adapter, "adapter command line for the bridge backend");
  campaign->add_option("--timeout", timeout_s, "bridge request timeout in seconds");
  campaign->add_option("--pipeline-hint", hint, "optimization level sent to the adapter");
  campaign->add_option("--parallelism", parallelism, "worker threads")->check(CLI::PositiveNumber);
  campaign->add_option("--stop-after", stop_after, "stop once this many reports exist");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "re-run a stored report");
  std::string report_dir;
  repro->add_option("dir", report_dir, "report directory")->required();
  repro->add_option("--adapter", adapter, "adapter command line for bridge reports");
  repro->add_option("--timeout", timeout_s, "bridge request timeout in seconds");

  // budget
  auto* budget_cmd = app.add_subcommand("budget", "print the shot budget");
  budget_cmd->add_option("--delta", delta, "Hellinger threshold");
  budget_cmd->add_option("--qubits", qubits, "outcome bits")->required();

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "generate one program");
  std::uint32_t depth = 10;
  std::string out_file;
  gen_cmd->add_option("--seed", seed, "generator seed");
  gen_cmd->add_option("--qubits", qubits, "data qubits");
  gen_cmd->add_option("--depth", depth, "live gate count");
  gen_cmd->add_option("--config", config_path, "generator config file (key = value)");
  gen_cmd->add_option("-o,--out", out_file, "output file (default stdout)");

  // derive
  auto* derive_cmd = app.add_subcommand("derive", "print the variant of a program");
  std::string in_file;
  derive_cmd->add_option("file", in_file, "program text, - for stdin")->required();
  derive_cmd->add_option("-o,--out", out_file, "output file (default stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "sample a program");
  std::uint64_t shots = 1024;
  run_cmd->add_option("file", in_file, "program text, - for stdin")->required();
  run_cmd->add_option("--shots", shots, "shots");
  run_cmd->add_option("--seed", seed, "sampling seed");
  run_cmd->add_option("--pipeline", pipelines, "pass list applied first");
  run_cmd->add_flag("--seed-bugs", seed_bugs, "allow seeded-bug passes");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "exact output distribution");
  enum_cmd->add_option("file", in_file, "program text, - for stdin")->required();

  // passes
  auto* passes_cmd = app.add_subcommand("passes", "list passes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*campaign) {
      qfe::CampaignConfig cfg;
      cfg.backend = qfe::backend_from_name(backend);
      cfg.max_iter = iters;
      cfg.n_qubits = qubits;
      cfg.delta = delta;
      cfg.master_seed = seed;
      cfg.include_generated_pipeline = !no_generated;
      cfg.output_dir = out_dir;
      cfg.parallelism = parallelism;
      cfg.stop_after_reports = stop_after;
      if (!config_path.empty()) cfg.gen = qfe::load_gen_config(config_path);
      if (!pipelines.empty()) {
        cfg.pipelines.clear();
        for (const auto& p : pipelines) cfg.pipelines.push_back(qfe::parse_pipeline(p, seed_bugs));
      }
      cfg.bridge.command = split_command(adapter);
      cfg.bridge.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
      cfg.bridge.pipeline_hint = hint;
      const auto result = qfe::run_campaign(cfg);
      std::uint64_t crash = 0, wrong = 0;
      for (const auto& r : result.reports) (r.label == qfe::Verdict::kCrash ? crash : wrong)++;
      std::printf("iterations %llu  pairs %zu  crash %llu  wrong %llu\n",
                  static_cast<unsigned long long>(result.iterations_run), result.records.size(),
                  static_cast<unsigned long long>(crash), static_cast<unsigned long long>(wrong));
      for (const auto& r : result.reports) {
        std::printf("  %s  pipeline=%s\n", r.dir_name().c_str(),
                    qfe::to_string(r.pipeline).c_str());
      }
      return result.reports.empty() ? kExitClean : kExitBugs;
    }
    if (*repro) {
      qfe::BridgeOptions bridge;
      bridge.command = split_command(adapter);
      bridge.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
      const auto r = qfe::reproduce(report_dir, &bridge);
      for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("stored %s  reproduced %s\n", std::string(qfe::to_string(r.stored)).c_str(),
                  std::string(qfe::to_string(r.verdict)).c_str());
      if (r.evaluation.comparison == qfe::ErrorComparison::kBothOk) {
        std::printf("final_h %.6f  shots %llu\n", r.evaluation.consistency.final_h,
                    static_cast<unsigned long long>(r.evaluation.consistency.total_shots));
      }
      const bool bug = r.verdict == qfe::Verdict::kCrash || r.verdict == qfe::Verdict::kWrong;
      return bug ? kExitBugs : kExitClean;
    }
    if (*budget_cmd) {
      const auto b = qfe::budget(delta, qubits);
      std::printf("delta %g  n %u  N %.0f\n", b.delta, b.n_qubits, b.n_outcomes);
      std::printf("S_round %llu  S_std %llu  S_max %llu\n",
                  static_cast<unsigned long long>(b.s_round),
                  static_cast<unsigned long long>(b.s_std),
                  static_cast<unsigned long long>(b.s_max));
      std::printf("early-stop shot points:");
      for (std::uint64_t k = 2; k <= b.max_rounds(); ++k) {
        std::printf(" %llu", static_cast<unsigned long long>(k * b.s_round));
      }
      std::printf("\n");
      return kExitClean;
    }
    if (*gen_cmd) {
      qfe::GenConfig g;
      if (!config_path.empty()) g = qfe::load_gen_config(config_path);
      if (gen_cmd->count("--seed")) g.seed = seed;
      if (gen_cmd->count("--qubits")) g.n_qubits = qubits;
      if (gen_cmd->count("--depth")) g.depth = depth;
      write_text(out_file, qfe::serialize(qfe::generate(g)));
      return kExitClean;
    }
    if (*derive_cmd) {
      const auto p = qfe::deserialize(read_text(in_file));
      qfe::validate(p);
      write_text(out_file, qfe::serialize(qfe::derive_variant(p)));
      return kExitClean;
    }
    if (*run_cmd) {
      auto p = qfe::deserialize(read_text(in_file));
      for (const auto& spec : pipelines) {
        auto out = qfe::apply(qfe::parse_pipeline(spec, seed_bugs), p);
        if (const auto* e = std::get_if<qfe::ErrorRecord>(&out)) {
          std::printf("error %s: %s\n", std::string(qfe::error_kind_name(e->kind)).c_str(),
                      e->message.c_str());
          return kExitClean;
        }
        p = std::get<qfe::Program>(std::move(out));
      }
      const auto r = qfe::run(p, shots, seed);
      if (!qfe::is_ok(r.outcome)) {
        const auto& e = qfe::error_of(r.outcome);
        std::printf("error %s: %s\n", std::string(qfe::error_kind_name(e.kind)).c_str(),
                    e.message.c_str());
        return kExitClean;
      }
      for (const auto& [k, n] : qfe::counts_of(r.outcome).histogram) {
        std::printf("%s %llu\n", k.c_str(), static_cast<unsigned long long>(n));
      }
      return kExitClean;
    }
    if (*enum_cmd) {
      const auto e = qfe::enumerate_distribution(qfe::deserialize(read_text(in_file)));
      for (const auto& [k, p] : e.distribution) {
        if (p > 0) std::printf("%s %.12f\n", k.c_str(), p);
      }
      return kExitClean;
    }
    if (*passes_cmd) {
      for (const auto& info : qfe::pass_registry()) {
        std::printf("%-30s %s%s\n", info.id.c_str(), info.seeded_bug ? "[seeded bug] " : "",
                    info.summary.c_str());
      }
      return kExitClean;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qfe: %s\n", e.what());
    return kExitToolError;
  }
  return kExitToolError;
}
