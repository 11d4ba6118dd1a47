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

#ifndef QFE_TEXT_FORMAT_H_
#define QFE_TEXT_FORMAT_H_

// Canonical line-oriented `.qir-txt` serialization. See docs/qir-txt.md.

#include <stdexcept>
#include <string>
#include <string_view>

#include "qfe/ir.h"

namespace qfe {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Deterministic: equal programs produce byte-identical text.
std::string serialize(const Program& program);

// Inverse of serialize. Checks syntax and register references; full IR
// invariants are left to validate().
Program deserialize(std::string_view text);

// Shortest of "%.5f" and "%.17g" that reads back as exactly `angle`.
std::string format_angle(double angle);

std::string to_string(const QubitRef& q);
std::string to_string(const ClbitRef& c);

}  // namespace qfe

#endif  // QFE_TEXT_FORMAT_H_
