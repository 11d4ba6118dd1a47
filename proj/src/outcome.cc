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

#include "qfe/outcome.h"

#include <array>
#include <regex>
#include <stdexcept>

namespace qfe {

namespace {
constexpr std::array<std::string_view, 5> kKindNames = {
    "ValidationError", "PassError", "InfiniteLoop", "EnumerationError", "InternalError"};
}

std::string_view error_kind_name(ErrorKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

ErrorKind error_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<ErrorKind>(i);
  }
  throw std::invalid_argument("unknown error kind: " + std::string(name));
}

std::string normalize_message(std::string_view message) {
  static const std::regex hex("0[xX][0-9a-fA-F]+");
  // Absolute or dotted paths, or relative ones starting with a letter, each
  // at a word boundary so "[2.0/3]"-style tree addresses are left alone.
  static const std::regex path(
      R"((^|[\s'"(=:])((?:~|\.{1,2})?/[\w.-]+(?:/[\w.-]+)*|[A-Za-z_][\w.-]*(?:/[\w.-]+)+))");
  static const std::regex digits("[0-9]+");
  std::string s(message);
  s = std::regex_replace(s, hex, "<hex>");
  s = std::regex_replace(s, path, "$1<path>");
  s = std::regex_replace(s, digits, "<n>");
  return s;
}

ErrorRecord ErrorRecord::make(ErrorKind kind, std::string message) {
  ErrorRecord r;
  r.kind = kind;
  r.normalized_signature =
      std::string(error_kind_name(kind)) + ":" + normalize_message(message);
  r.message = std::move(message);
  return r;
}

void Counts::add(const std::string& key, std::uint64_t n) {
  histogram[key] += n;
  total += n;
}

void Counts::merge(const Counts& other) {
  for (const auto& [k, n] : other.histogram) histogram[k] += n;
  total += other.total;
}

}  // namespace qfe
