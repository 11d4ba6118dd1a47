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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qfe/bridge_client.h"
#include "qfe/harness.h"
#include "qfe/text_format.h"

namespace qfe {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string text_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json error_json(const std::optional<ErrorRecord>& e) {
  if (!e) return nullptr;
  return {{"kind", std::string(error_kind_name(e->kind))},
          {"message", e->message},
          {"signature", e->normalized_signature}};
}

json counts_json(const Counts& c) {
  json j = json::object();
  for (const auto& [k, n] : c.histogram) j[k] = n;
  return j;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ReproError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out) {
    throw fs::filesystem_error("write failed", p, std::make_error_code(std::errc::io_error));
  }
}

}  // namespace

std::string report_meta_json(const BugReport& r) {
  const auto& ev = r.evaluation;
  json j;
  j["format"] = 1;
  j["label"] = std::string(to_string(r.label));
  j["backend"] = std::string(to_string(r.backend));
  j["iteration"] = r.iteration;
  j["sigma_index"] = r.sigma_index;
  j["seeds"] = {{"master", r.master_seed},
                {"iteration", r.iteration_seed},
                {"original", r.seeds.original},
                {"variant", r.seeds.variant}};
  j["pipeline"] = {{"passes", r.pipeline.passes},
                   {"include_seeded_bugs", r.pipeline.include_seeded_bugs}};
  j["delta"] = r.budget.delta;
  j["budget"] = {{"n_qubits", r.budget.n_qubits},
                 {"s_round", r.budget.s_round},
                 {"s_std", r.budget.s_std},
                 {"s_max", r.budget.s_max}};
  j["comparison"] = std::string(to_string(ev.comparison));
  if (ev.comparison == ErrorComparison::kBothOk) {
    const auto& c = ev.consistency;
    j["consistency"] = {{"equivalent", c.equivalent},
                        {"rounds", c.rounds},
                        {"shots", c.total_shots},
                        {"final_h", c.final_h},
                        {"h_trace", c.trace},
                        {"counts_original", counts_json(c.counts_a)},
                        {"counts_variant", counts_json(c.counts_b)}};
  } else {
    j["consistency"] = nullptr;
  }
  j["errors"] = {{"original", error_json(ev.error_original)},
                 {"variant", error_json(ev.error_variant)}};
  j["digests"] = {{"original", text_digest(r.original_text)},
                  {"variant", text_digest(r.variant_text)}};
  return j.dump(2) + "\n";
}

fs::path write_report(const fs::path& out_dir, const BugReport& report) {
  const fs::path final_dir = out_dir / report.dir_name();
  const fs::path tmp = out_dir / (".tmp-" + report.dir_name());
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  write_file(tmp / "original.qir-txt", report.original_text);
  write_file(tmp / "variant.qir-txt", report.variant_text);
  write_file(tmp / "meta.json", report_meta_json(report));
  fs::remove_all(final_dir);
  fs::rename(tmp, final_dir);
  return final_dir;
}

Reproduction reproduce(const fs::path& dir, const BridgeOptions* bridge) {
  json meta;
  try {
    meta = json::parse(read_file(dir / "meta.json"));
  } catch (const json::exception& e) {
    throw ReproError(std::string("meta.json: ") + e.what());
  }
  const std::string original_text = read_file(dir / "original.qir-txt");
  const std::string variant_text = read_file(dir / "variant.qir-txt");

  Reproduction out;
  Program original, variant;
  Pipeline sigma;
  Budget b;
  PairSeeds seeds;
  Backend backend;
  double stored_h = 0;
  bool stored_has_h = false;
  try {
    if (meta.at("format").get<int>() != 1) throw ReproError("unknown report format");
    out.stored = verdict_from_name(meta.at("label").get<std::string>());
    backend = backend_from_name(meta.at("backend").get<std::string>());
    seeds.original = meta.at("seeds").at("original").get<std::uint64_t>();
    seeds.variant = meta.at("seeds").at("variant").get<std::uint64_t>();
    const auto& pj = meta.at("pipeline");
    sigma.include_seeded_bugs = pj.at("include_seeded_bugs").get<bool>();
    sigma.passes = pj.at("passes").get<std::vector<std::string>>();
    for (const auto& id : sigma.passes) {
      // Validates ids against the registry.
      (void)parse_pipeline(id, sigma.include_seeded_bugs);
    }
    b = budget(meta.at("delta").get<double>(), meta.at("budget").at("n_qubits").get<std::uint32_t>());
    const auto& digests = meta.at("digests");
    if (digests.at("original").get<std::string>() != text_digest(original_text)) {
      out.warnings.push_back("original.qir-txt does not match the digest in meta.json");
    }
    if (digests.at("variant").get<std::string>() != text_digest(variant_text)) {
      out.warnings.push_back("variant.qir-txt does not match the digest in meta.json");
    }
    if (!meta.at("consistency").is_null()) {
      stored_h = meta.at("consistency").at("final_h").get<double>();
      stored_has_h = true;
    }
    original = deserialize(original_text);
    variant = deserialize(variant_text);
  } catch (const json::exception& e) {
    throw ReproError(std::string("meta.json: ") + e.what());
  } catch (const ParseError& e) {
    throw ReproError(std::string("program text: ") + e.what());
  } catch (const ReproError&) {
    throw;
  } catch (const std::exception& e) {
    throw ReproError(e.what());
  }

  std::unique_ptr<BridgeClient> client;
  SamplerFactory factory;
  if (backend == Backend::kBridge) {
    if (!bridge || bridge->command.empty()) {
      throw ReproError("report was produced by the bridge backend; pass an adapter command");
    }
    client = std::make_unique<BridgeClient>(bridge->command, bridge->timeout);
    factory = bridge_factory(*client, bridge->pipeline_hint);
  } else {
    factory = builtin_factory();
  }
  out.evaluation = evaluate_pair(original, variant, sigma, b, seeds, factory);
  out.verdict = out.evaluation.verdict;
  out.matches = out.verdict == out.stored;
  if (!out.matches) {
    out.warnings.push_back("verdict " + std::string(to_string(out.verdict)) +
                           " differs from stored label " + std::string(to_string(out.stored)));
  }
  if (stored_has_h && out.evaluation.comparison == ErrorComparison::kBothOk &&
      std::abs(out.evaluation.consistency.final_h - stored_h) > 0.02) {
    out.warnings.push_back("final distance moved by more than 0.02 from the stored value");
  }
  return out;
}

}  // namespace qfe
