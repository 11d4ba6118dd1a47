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

#ifndef QFE_BRIDGE_CLIENT_H_
#define QFE_BRIDGE_CLIENT_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <sys/types.h>
#include <vector>

#include "qfe/ir.h"
#include "qfe/outcome.h"

namespace qfe {

class BridgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kBridgeProtocolVersion = 1;

struct BridgeHello {
  int version = 0;
  std::string dialect;
  std::vector<std::string> capabilities;
};

// Capability names an adapter may advertise.
std::string_view capability_for(PatternKind kind);

// Zeroes the weight of every pattern whose construct the adapter lacks.
std::array<double, kNumPatternKinds> filter_weights(
    std::array<double, kNumPatternKinds> weights, const std::vector<std::string>& capabilities);

// Maps a wire error {type, message} onto an ErrorRecord.
ErrorRecord normalize_wire_error(const std::string& type, const std::string& message);

// Drives one adapter process over stdin/stdout. Requests are strictly
// sequential. A request that gets no answer within the timeout yields an
// InfiniteLoop error and the adapter is restarted.
class BridgeClient {
 public:
  explicit BridgeClient(std::vector<std::string> argv,
                        std::chrono::milliseconds timeout = std::chrono::seconds(60));
  ~BridgeClient();
  BridgeClient(const BridgeClient&) = delete;
  BridgeClient& operator=(const BridgeClient&) = delete;

  const BridgeHello& hello() const { return hello_; }

  ExecOutcome execute(const std::string& program_text, std::uint64_t shots, std::uint64_t seed,
                      int pipeline_hint = 0);

  // Restarts performed so far (timeouts and adapter deaths).
  int restarts() const { return restarts_; }

 private:
  void start();
  void stop();
  // One line without its newline, or nullopt on timeout or EOF.
  std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline,
                                       bool& timed_out);
  bool write_all(const std::string& data);

  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  BridgeHello hello_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
  int restarts_ = 0;
};

// Counts sampler backed by an adapter. Each draw is one request whose seed
// is derived from the sampler seed and the draw index.
class BridgeSampler : public CountsSampler {
 public:
  BridgeSampler(BridgeClient& client, std::string program_text, std::uint64_t seed,
                int pipeline_hint = 0)
      : client_(client), text_(std::move(program_text)), seed_(seed), hint_(pipeline_hint) {}

  ExecOutcome draw(std::uint64_t shots) override;

 private:
  BridgeClient& client_;
  std::string text_;
  std::uint64_t seed_;
  int hint_;
  std::uint64_t calls_ = 0;
};

}  // namespace qfe

#endif  // QFE_BRIDGE_CLIENT_H_
