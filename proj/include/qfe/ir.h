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

#ifndef QFE_IR_H_
#define QFE_IR_H_

// Quantum IR with classical- and quantum-conditioned control flow.
//
// Conventions used everywhere in the project:
//  * Qubits are numbered globally by concatenating quantum registers in
//    declaration order; global qubit 0 is the least significant bit of a
//    state-vector amplitude index.
//  * Bit c[0] of a classical register is the least significant bit of the
//    register's integer value.
//  * A measured outcome concatenates the output classical registers in
//    declaration order, the most recently declared being most significant.
//    Bitstrings are printed most significant bit first.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qfe {

struct QubitRef {
  std::uint32_t reg = 0;
  std::uint32_t offset = 0;
  auto operator<=>(const QubitRef&) const = default;
};

struct ClbitRef {
  std::uint32_t reg = 0;
  std::uint32_t offset = 0;
  auto operator<=>(const ClbitRef&) const = default;
};

enum class GateKind : std::uint8_t {
  kH, kX, kY, kZ, kS, kSdg, kT, kTdg,
  kRx, kRy, kRz, kRzz,
  kCx, kCz, kCcx, kSwap,
};

inline constexpr int kNumGateKinds = 16;

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);
int gate_arity(GateKind kind);
int gate_num_params(GateKind kind);
bool is_rotation(GateKind kind);

struct GateOp {
  GateKind kind = GateKind::kH;
  std::vector<double> params;
  std::vector<QubitRef> targets;
  bool operator==(const GateOp&) const = default;
};

// The adjoint gate on the same targets.
GateOp inverse(const GateOp& gate);

struct Measure {
  QubitRef qubit;
  ClbitRef clbit;
  bool operator==(const Measure&) const = default;
};

struct Reset {
  QubitRef qubit;
  bool operator==(const Reset&) const = default;
};

// Either a single classical bit (bit set) or a whole classical register.
struct CondSubject {
  std::uint32_t reg = 0;
  std::optional<std::uint32_t> bit;
  bool operator==(const CondSubject&) const = default;
};

struct ClassicalCond {
  CondSubject subject;
  std::uint64_t value = 0;
  bool operator==(const ClassicalCond&) const = default;
};

struct Instruction;
using Body = std::vector<Instruction>;

struct IfTest {
  ClassicalCond cond;
  Body then_body;
  Body else_body;
  bool operator==(const IfTest&) const;
};

struct WhileLoop {
  ClassicalCond cond;
  Body body;
  bool operator==(const WhileLoop&) const;
};

struct ForRange {
  std::uint64_t count = 0;
  Body body;
  bool operator==(const ForRange&) const;
};

struct SwitchCase {
  std::uint64_t value = 0;
  Body body;
  bool operator==(const SwitchCase&) const;
};

struct Switch {
  CondSubject subject;
  std::vector<SwitchCase> cases;
  Body default_body;
  bool operator==(const Switch&) const;
};

struct BreakLoop {
  bool operator==(const BreakLoop&) const = default;
};

struct ContinueLoop {
  bool operator==(const ContinueLoop&) const = default;
};

// Applies `body` (gates only) on the subspace where the control register
// reads `value`; ctrl[0] is the least significant bit of the value.
struct ControlledOnInt {
  std::uint64_t value = 0;
  std::vector<QubitRef> ctrl;
  Body body;
  bool operator==(const ControlledOnInt&) const;
};

struct Instruction {
  using Node = std::variant<GateOp, Measure, Reset, IfTest, WhileLoop, ForRange,
                            Switch, BreakLoop, ContinueLoop, ControlledOnInt>;
  Node node;

  Instruction() = default;
  template <typename T>
    requires std::is_constructible_v<Node, T&&> &&
             (!std::is_same_v<std::remove_cvref_t<T>, Instruction>)
  Instruction(T&& n) : node(std::forward<T>(n)) {}  // NOLINT implicit

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  const T& as() const { return std::get<T>(node); }
  template <typename T>
  T& as() { return std::get<T>(node); }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&node); }
  template <typename T>
  T* get_if() { return std::get_if<T>(&node); }

  bool operator==(const Instruction& other) const { return node == other.node; }
};

// Number of child bodies an instruction owns; slot numbering is
// IfTest {then=0, else=1}, Switch {case k=k, default=cases.size()}, and 0 for
// the single body of loops and ControlledOnInt.
std::size_t num_child_bodies(const Instruction& instr);
const Body* child_body(const Instruction& instr, std::size_t slot);
Body* child_body(Instruction& instr, std::size_t slot);

// Total number of instructions in the tree rooted at `body`.
std::size_t count_instructions(const Body& body);

// ---------------------------------------------------------------------------
// Tree addressing.

struct BodyStep {
  std::uint32_t index = 0;  // instruction index within the enclosing body
  std::uint32_t slot = 0;   // child body slot of that instruction
  auto operator<=>(const BodyStep&) const = default;
};

// Path from the program's top-level body to a nested body; empty means the
// top-level body itself.
using BodyPath = std::vector<BodyStep>;

// Address of one instruction: the body containing it plus its index.
struct NodePath {
  BodyPath body;
  std::uint32_t index = 0;
  auto operator<=>(const NodePath&) const = default;
};

std::string to_string(const NodePath& path);
std::string to_string(const BodyPath& path);

const Body* resolve_body(const Body& root, const BodyPath& path);
Body* resolve_body(Body& root, const BodyPath& path);

// Contiguous instruction range [begin, end) of one body.
struct Span {
  BodyPath body;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  bool operator==(const Span&) const = default;
  bool contains(const NodePath& node) const;
};

// ---------------------------------------------------------------------------
// Dead-code bookkeeping.

enum class PatternKind : std::uint8_t {
  kIfTestDead,
  kWhileDead,
  kSwitchDead,
  kForZero,
  kForContinue,
  kForBreak,
  kControlledOnIntDead,
};

inline constexpr int kNumPatternKinds = 7;

enum class PatternCategory : std::uint8_t { kInputDependent, kInputIndependent };

std::string_view pattern_name(PatternKind kind);
std::optional<PatternKind> pattern_from_name(std::string_view name);
PatternCategory pattern_category(PatternKind kind);

struct DeadRegion {
  std::uint32_t id = 0;
  PatternKind kind = PatternKind::kForZero;
  Span span;
  std::vector<QubitRef> ancilla_qubits;
  std::vector<ClbitRef> ancilla_clbits;
  PatternCategory category() const { return pattern_category(kind); }
  bool operator==(const DeadRegion&) const = default;
};

// ---------------------------------------------------------------------------

struct CregDecl {
  std::uint32_t width = 0;
  bool output = false;
  bool operator==(const CregDecl&) const = default;
};

struct ProgramMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> data_qubits;
  std::vector<PatternKind> patterns;
  std::vector<std::string> pipeline;
  bool operator==(const ProgramMeta&) const = default;
};

struct Program {
  std::vector<std::uint32_t> qregs;  // widths
  std::vector<CregDecl> cregs;
  Body body;
  std::vector<DeadRegion> dead_regions;
  ProgramMeta meta;

  std::uint32_t num_qubits() const;
  // Global index of a qubit reference; the reference must be valid.
  std::uint32_t global_index(const QubitRef& q) const;
  std::uint32_t add_qreg(std::uint32_t width);
  std::uint32_t add_creg(std::uint32_t width, bool output = false);
  // Registers contributing to measured outcomes: those flagged as output, or
  // every classical register when none is flagged.
  std::vector<std::uint32_t> output_cregs() const;
  std::uint32_t output_width() const;

  bool operator==(const Program&) const;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(NodePath path, const std::string& message);
  const NodePath& path() const { return path_; }

 private:
  NodePath path_;
};

// Throws ValidationError for the first (pre-order) node that violates an IR
// invariant. Dead-region bookkeeping is checked after the instruction tree;
// such failures carry the region's span start as their path.
void validate(const Program& program);

// Qubit/classical-bit footprint of an instruction, including everything
// nested in its bodies. Classical reads are condition subjects; writes are
// measurement targets.
struct Footprint {
  std::vector<std::uint32_t> qubits;  // global indices, sorted, unique
  std::vector<ClbitRef> reads;        // sorted, unique
  std::vector<ClbitRef> writes;       // sorted, unique
  // True for Break/Continue and any instruction containing a Break/Continue
  // that escapes it.
  bool loop_control = false;
};

Footprint footprint(const Program& program, const Instruction& instr);

}  // namespace qfe

#endif  // QFE_IR_H_
