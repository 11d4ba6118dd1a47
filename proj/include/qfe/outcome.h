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

#ifndef QFE_OUTCOME_H_
#define QFE_OUTCOME_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace qfe {

enum class ErrorKind : std::uint8_t {
  kValidation,
  kPass,
  kInfiniteLoop,
  kEnumeration,
  kInternal,
};

std::string_view error_kind_name(ErrorKind kind);
ErrorKind error_kind_from_name(std::string_view name);

// Strips hex literals, file paths and decimal digits so that messages from
// the same template compare equal.
std::string normalize_message(std::string_view message);

struct ErrorRecord {
  ErrorKind kind = ErrorKind::kInternal;
  std::string message;
  std::string normalized_signature;

  static ErrorRecord make(ErrorKind kind, std::string message);
  bool operator==(const ErrorRecord&) const = default;
};

// Histogram over output bitstrings (most significant bit first).
struct Counts {
  std::map<std::string, std::uint64_t> histogram;
  std::uint64_t total = 0;

  void add(const std::string& key, std::uint64_t n = 1);
  void merge(const Counts& other);
  bool operator==(const Counts&) const = default;
};

using ExecOutcome = std::variant<Counts, ErrorRecord>;

inline bool is_ok(const ExecOutcome& o) { return std::holds_alternative<Counts>(o); }
inline const Counts& counts_of(const ExecOutcome& o) { return std::get<Counts>(o); }
inline const ErrorRecord& error_of(const ExecOutcome& o) { return std::get<ErrorRecord>(o); }

// Interface the checker pulls shots from. Each call continues the same
// underlying stream; draws are cumulative from the caller's perspective.
class CountsSampler {
 public:
  virtual ~CountsSampler() = default;
  virtual ExecOutcome draw(std::uint64_t shots) = 0;
};

}  // namespace qfe

#endif  // QFE_OUTCOME_H_
