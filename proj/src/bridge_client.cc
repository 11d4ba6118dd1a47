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

#include "qfe/bridge_client.h"

#include <csignal>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "json.hpp"
#include "qfe/rng.h"

namespace qfe {

using json = nlohmann::json;

std::string_view capability_for(PatternKind kind) {
  switch (kind) {
    case PatternKind::kIfTestDead: return "if_test";
    case PatternKind::kWhileDead: return "while_loop";
    case PatternKind::kSwitchDead: return "switch";
    case PatternKind::kForZero:
    case PatternKind::kForContinue:
    case PatternKind::kForBreak: return "for_loop";
    case PatternKind::kControlledOnIntDead: return "controlled_on_int";
  }
  return "";
}

std::array<double, kNumPatternKinds> filter_weights(
    std::array<double, kNumPatternKinds> weights, const std::vector<std::string>& capabilities) {
  for (int k = 0; k < kNumPatternKinds; ++k) {
    const auto cap = capability_for(static_cast<PatternKind>(k));
    if (std::find(capabilities.begin(), capabilities.end(), cap) == capabilities.end()) {
      weights[k] = 0;
    }
  }
  return weights;
}

ErrorRecord normalize_wire_error(const std::string& type, const std::string& message) {
  if (type == "protocol") return ErrorRecord::make(ErrorKind::kInternal, "protocol: " + message);
  try {
    return ErrorRecord::make(error_kind_from_name(type), message);
  } catch (const std::invalid_argument&) {
    // SDK exception class names: a failure inside the stack under test.
    return ErrorRecord::make(ErrorKind::kPass, type + ": " + message);
  }
}

BridgeClient::BridgeClient(std::vector<std::string> argv, std::chrono::milliseconds timeout)
    : argv_(std::move(argv)), timeout_(timeout) {
  if (argv_.empty()) throw BridgeError("empty adapter command");
  start();
}

BridgeClient::~BridgeClient() { stop(); }

void BridgeClient::start() {
  // A dead adapter must surface as an error record, not kill the harness.
  std::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw BridgeError(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw BridgeError(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) throw BridgeError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> args;
    for (auto& a : argv_) args.push_back(a.data());
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  fcntl(from_child_, F_SETFD, FD_CLOEXEC);
  buffer_.clear();

  bool timed_out = false;
  const auto line = read_line(std::chrono::steady_clock::now() + timeout_, timed_out);
  if (!line) {
    stop();
    throw BridgeError(timed_out ? "adapter sent no hello before the timeout"
                                : "adapter exited before its hello");
  }
  try {
    const json h = json::parse(*line);
    if (h.at("type").get<std::string>() != "hello") throw BridgeError("first line is not a hello");
    hello_.version = h.at("v").get<int>();
    hello_.dialect = h.at("dialect").get<std::string>();
    hello_.capabilities = h.at("capabilities").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    stop();
    throw BridgeError(std::string("malformed hello: ") + e.what());
  } catch (const BridgeError&) {
    stop();
    throw;
  }
  if (hello_.version != kBridgeProtocolVersion) {
    stop();
    throw BridgeError("unsupported protocol version " + std::to_string(hello_.version));
  }
}

void BridgeClient::stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
  }
  pid_ = -1;
}

bool BridgeClient::write_all(const std::string& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<std::string> BridgeClient::read_line(
    std::chrono::steady_clock::time_point deadline, bool& timed_out) {
  timed_out = false;
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      return std::nullopt;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1 << 30)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      return std::nullopt;
    }
    if (rc == 0) continue;
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return std::nullopt;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

ExecOutcome BridgeClient::execute(const std::string& program_text, std::uint64_t shots,
                                  std::uint64_t seed, int pipeline_hint) {
  if (pid_ < 0) {
    ++restarts_;
    start();
  }
  const std::uint64_t id = next_id_++;
  json req = {{"v", kBridgeProtocolVersion}, {"id", id},       {"dialect", hello_.dialect},
              {"program", program_text},      {"shots", shots}, {"seed", seed},
              {"pipeline_hint", pipeline_hint}};
  if (!write_all(req.dump() + "\n")) {
    stop();
    return ErrorRecord::make(ErrorKind::kInternal, "adapter closed its input");
  }
  bool timed_out = false;
  const auto line = read_line(std::chrono::steady_clock::now() + timeout_, timed_out);
  if (!line) {
    stop();
    if (timed_out) {
      return ErrorRecord::make(ErrorKind::kInfiniteLoop,
                               "adapter request timed out after " +
                                   std::to_string(timeout_.count()) + " ms");
    }
    return ErrorRecord::make(ErrorKind::kInternal, "adapter exited during a request");
  }
  try {
    const json resp = json::parse(*line);
    if (resp.at("id").get<std::uint64_t>() != id) {
      stop();
      return ErrorRecord::make(ErrorKind::kInternal, "protocol: response id does not match");
    }
    const auto status = resp.at("status").get<std::string>();
    if (status == "error") {
      const auto& err = resp.at("error");
      return normalize_wire_error(err.value("type", std::string("unknown")),
                                  err.value("message", std::string()));
    }
    if (status != "ok") {
      return ErrorRecord::make(ErrorKind::kInternal, "protocol: bad status " + status);
    }
    Counts counts;
    for (const auto& [key, n] : resp.at("counts").items()) counts.add(key, n.get<std::uint64_t>());
    if (counts.total != shots) {
      return ErrorRecord::make(ErrorKind::kInternal, "protocol: counts do not sum to shots");
    }
    return counts;
  } catch (const json::exception& e) {
    stop();
    return ErrorRecord::make(ErrorKind::kInternal, std::string("protocol: ") + e.what());
  }
}

ExecOutcome BridgeSampler::draw(std::uint64_t shots) {
  return client_.execute(text_, shots, derive_seed(seed_, "bridge", calls_++), hint_);
}

}  // namespace qfe
