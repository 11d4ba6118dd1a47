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

#ifndef QFE_PASSES_H_
#define QFE_PASSES_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfe/ir.h"
#include "qfe/outcome.h"

namespace qfe {

struct PassInfo {
  std::string id;
  bool seeded_bug = false;
  std::string summary;
};

const std::vector<PassInfo>& pass_registry();
std::vector<std::string> correct_pass_ids();
bool is_seeded_bug(std::string_view id);

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Pipeline {
  std::vector<std::string> passes;
  bool include_seeded_bugs = false;
  bool operator==(const Pipeline&) const = default;
};

// Comma-separated pass ids; "" and "none" mean the empty pipeline. Unknown
// ids, and seeded-bug ids without the flag, throw PipelineError.
Pipeline parse_pipeline(std::string_view list, bool include_seeded_bugs = false);
std::string to_string(const Pipeline& pipeline);

using PassOutcome = std::variant<Program, ErrorRecord>;

// Runs the passes in order. Failures come back as error records (kind Pass,
// or InfiniteLoop for a pass that does not converge), never as exceptions.
// The output carries no dead regions: passes do not maintain them.
PassOutcome apply(const Pipeline& pipeline, const Program& program);

}  // namespace qfe

#endif  // QFE_PASSES_H_
