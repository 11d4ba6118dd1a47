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

#ifndef QFE_GENERATOR_H_
#define QFE_GENERATOR_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfe/ir.h"
#include "qfe/rng.h"

namespace qfe {

class GenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenConfig {
  std::uint32_t n_qubits = 5;
  // Target number of live gates.
  std::uint32_t depth = 10;
  std::uint64_t seed = 0;
  // Indexed by PatternKind.
  std::array<double, kNumPatternKinds> pattern_weights{1, 1, 1, 1, 1, 1, 1};
  std::uint32_t max_nesting = 3;
  double subcircuit_prob = 0.1;
  double pass_pipeline_prob = 0.5;
  // Upper bound on live ForRange trip counts.
  std::uint32_t for_trip_max = 5;
  // Chance that a live slot becomes a control-flow site, and the chance that
  // such a site is a measurement-conditioned IfTest rather than a loop.
  double control_site_prob = 0.1;
  double live_control_prob = 0.25;
  std::uint32_t loop_trip = 5;
  std::uint32_t ctrl_width = 3;
  std::uint32_t max_total_qubits = 20;
};

// Throws GenError when the config violates its invariants.
void check_config(const GenConfig& config);

// Parses `key = value` lines ('#' starts a comment) over the defaults.
// Pattern weights use keys `weight.<pattern name>`.
GenConfig parse_gen_config(std::string_view text);
GenConfig load_gen_config(const std::filesystem::path& path);

// Nested pattern plan, outermost first. ControlledOnIntDead only ever
// appears last because its body cannot host another pattern.
std::vector<PatternKind> choose_patterns(const GenConfig& config, Rng& rng);

Program generate(const GenConfig& config);

}  // namespace qfe

#endif  // QFE_GENERATOR_H_
