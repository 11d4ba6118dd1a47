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

#include "qfe/text_format.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace qfe {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string format_angle(double angle) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", angle);
  if (std::strtod(buf, nullptr) == angle) return buf;
  std::snprintf(buf, sizeof(buf), "%.17g", angle);
  return buf;
}

std::string to_string(const QubitRef& q) {
  return "q" + std::to_string(q.reg) + "[" + std::to_string(q.offset) + "]";
}

std::string to_string(const ClbitRef& c) {
  return "c" + std::to_string(c.reg) + "[" + std::to_string(c.offset) + "]";
}

namespace {

std::string subject_text(const CondSubject& s) {
  std::string out = "c" + std::to_string(s.reg);
  if (s.bit) out += "[" + std::to_string(*s.bit) + "]";
  return out;
}

template <typename T>
std::string join_refs(const std::vector<T>& refs) {
  std::string out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i) out += ",";
    out += to_string(refs[i]);
  }
  return out;
}

class Writer {
 public:
  explicit Writer(const Program& p) : p_(p) {
    for (const auto& r : p.dead_regions) by_body_[r.span.body].push_back(&r);
  }

  std::string run() {
    os_ << "qir 1\n";
    const auto& m = p_.meta;
    if (m.seed) os_ << "meta seed " << *m.seed << "\n";
    if (m.data_qubits) os_ << "meta data_qubits " << *m.data_qubits << "\n";
    if (!m.patterns.empty()) {
      os_ << "meta patterns ";
      for (std::size_t i = 0; i < m.patterns.size(); ++i) {
        os_ << (i ? "," : "") << pattern_name(m.patterns[i]);
      }
      os_ << "\n";
    }
    if (!m.pipeline.empty()) {
      os_ << "meta pipeline ";
      for (std::size_t i = 0; i < m.pipeline.size(); ++i) {
        os_ << (i ? "," : "") << m.pipeline[i];
      }
      os_ << "\n";
    }
    for (auto w : p_.qregs) os_ << "qreg " << w << "\n";
    for (const auto& c : p_.cregs) os_ << "creg " << c.width << (c.output ? " out" : "") << "\n";
    body(p_.body, {}, 0);
    os_ << "end\n";
    return os_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) os_ << "  ";
  }

  void markers_at(const std::vector<const DeadRegion*>& regions, std::uint32_t pos,
                  int depth) {
    std::vector<const DeadRegion*> ends, starts;
    for (const auto* r : regions) {
      if (r->span.end == pos && r->span.begin < pos) ends.push_back(r);
      if (r->span.begin == pos) starts.push_back(r);
    }
    // Innermost regions close first and outermost regions open first.
    std::sort(ends.begin(), ends.end(), [](auto* a, auto* b) {
      return std::tie(b->span.begin, a->id) < std::tie(a->span.begin, b->id);
    });
    std::sort(starts.begin(), starts.end(), [](auto* a, auto* b) {
      return std::tie(b->span.end, a->id) < std::tie(a->span.end, b->id);
    });
    for (const auto* r : ends) {
      indent(depth);
      os_ << "#dead end " << r->id << "\n";
    }
    for (const auto* r : starts) {
      indent(depth);
      os_ << "#dead start " << r->id << " " << pattern_name(r->kind);
      if (!r->ancilla_qubits.empty()) os_ << " anc=" << join_refs(r->ancilla_qubits);
      if (!r->ancilla_clbits.empty()) os_ << " cbits=" << join_refs(r->ancilla_clbits);
      os_ << "\n";
      if (r->span.end == pos) {
        indent(depth);
        os_ << "#dead end " << r->id << "\n";
      }
    }
  }

  void body(const Body& b, const BodyPath& path, int depth) {
    static const std::vector<const DeadRegion*> kNone;
    auto it = by_body_.find(path);
    const auto& regions = it == by_body_.end() ? kNone : it->second;
    for (std::uint32_t i = 0; i <= b.size(); ++i) {
      if (!regions.empty()) markers_at(regions, i, depth);
      if (i == b.size()) break;
      BodyPath child_path = path;
      child_path.push_back({i, 0});
      instruction(b[i], child_path, depth);
    }
  }

  // `path` addresses child slot 0 of this instruction; other slots adjust it.
  void instruction(const Instruction& instr, BodyPath path, int depth) {
    auto slot = [&](std::uint32_t s) {
      path.back().slot = s;
      return path;
    };
    indent(depth);
    if (const auto* g = instr.get_if<GateOp>()) {
      os_ << gate_name(g->kind);
      if (!g->params.empty()) os_ << "(" << format_angle(g->params[0]) << ")";
      os_ << " ";
      for (std::size_t i = 0; i < g->targets.size(); ++i) {
        os_ << (i ? ", " : "") << to_string(g->targets[i]);
      }
      os_ << "\n";
    } else if (const auto* m = instr.get_if<Measure>()) {
      os_ << "measure " << to_string(m->qubit) << " -> " << to_string(m->clbit) << "\n";
    } else if (const auto* r = instr.get_if<Reset>()) {
      os_ << "reset " << to_string(r->qubit) << "\n";
    } else if (const auto* it = instr.get_if<IfTest>()) {
      os_ << "if " << subject_text(it->cond.subject) << " == " << it->cond.value << " {\n";
      body(it->then_body, slot(0), depth + 1);
      indent(depth);
      if (!it->else_body.empty() || has_regions(slot(1))) {
        os_ << "} else {\n";
        body(it->else_body, slot(1), depth + 1);
        indent(depth);
      }
      os_ << "}\n";
    } else if (const auto* w = instr.get_if<WhileLoop>()) {
      os_ << "while " << subject_text(w->cond.subject) << " == " << w->cond.value << " {\n";
      body(w->body, slot(0), depth + 1);
      indent(depth);
      os_ << "}\n";
    } else if (const auto* f = instr.get_if<ForRange>()) {
      os_ << "for " << f->count << " {\n";
      body(f->body, slot(0), depth + 1);
      indent(depth);
      os_ << "}\n";
    } else if (const auto* s = instr.get_if<Switch>()) {
      os_ << "switch " << subject_text(s->subject) << " {\n";
      for (std::uint32_t k = 0; k < s->cases.size(); ++k) {
        indent(depth + 1);
        os_ << "case " << s->cases[k].value << " {\n";
        body(s->cases[k].body, slot(k), depth + 2);
        indent(depth + 1);
        os_ << "}\n";
      }
      const auto def = static_cast<std::uint32_t>(s->cases.size());
      if (!s->default_body.empty() || has_regions(slot(def))) {
        indent(depth + 1);
        os_ << "default {\n";
        body(s->default_body, slot(def), depth + 2);
        indent(depth + 1);
        os_ << "}\n";
      }
      indent(depth);
      os_ << "}\n";
    } else if (instr.is<BreakLoop>()) {
      os_ << "break\n";
    } else if (instr.is<ContinueLoop>()) {
      os_ << "continue\n";
    } else if (const auto* c = instr.get_if<ControlledOnInt>()) {
      os_ << "ctrl_on_int " << c->value << " ";
      for (std::size_t i = 0; i < c->ctrl.size(); ++i) {
        os_ << (i ? ", " : "") << to_string(c->ctrl[i]);
      }
      os_ << " {\n";
      body(c->body, slot(0), depth + 1);
      indent(depth);
      os_ << "}\n";
    }
  }

  bool has_regions(const BodyPath& path) const { return by_body_.count(path) > 0; }

  const Program& p_;
  std::map<BodyPath, std::vector<const DeadRegion*>> by_body_;
  std::ostringstream os_;
};

// ---------------------------------------------------------------------------

struct Token {
  std::string_view text;
  int column = 1;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return lines;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(split_lines(text)) {}

  Program run() {
    if (lines_.empty()) throw ParseError(1, 1, "empty input");
    const Line& head = next();
    if (head.tokens.size() != 2 || head.tokens[0].text != "qir" || head.tokens[1].text != "1") {
      throw ParseError(head.number, 1, "expected header 'qir 1'");
    }
    while (!done()) {
      const Line& l = peek();
      const auto kw = l.tokens[0].text;
      if (kw == "meta") {
        meta(next());
      } else if (kw == "qreg") {
        const Line& d = next();
        expect_count(d, 2);
        p_.qregs.push_back(static_cast<std::uint32_t>(number(d, 1)));
      } else if (kw == "creg") {
        const Line& d = next();
        if (d.tokens.size() != 2 && d.tokens.size() != 3) error(d, 0, "malformed creg declaration");
        CregDecl decl{static_cast<std::uint32_t>(number(d, 1)), false};
        if (d.tokens.size() == 3) {
          if (d.tokens[2].text != "out") error(d, 2, "expected 'out'");
          decl.output = true;
        }
        p_.cregs.push_back(decl);
      } else {
        break;
      }
    }
    const Line* closer = body(p_.body, {});
    if (!closer || closer->tokens[0].text != "end" || closer->tokens.size() != 1) {
      const int ln = closer ? closer->number : last_line();
      throw ParseError(ln, 1, "expected 'end'");
    }
    if (!done()) error(peek(), 0, "content after 'end'");
    std::sort(p_.dead_regions.begin(), p_.dead_regions.end(),
              [](const DeadRegion& a, const DeadRegion& b) { return a.id < b.id; });
    return std::move(p_);
  }

 private:
  struct OpenRegion {
    DeadRegion region;
    int line;
  };

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

  [[noreturn]] void error(const Line& l, std::size_t tok, const std::string& msg) const {
    const int col = tok < l.tokens.size() ? l.tokens[tok].column : 1;
    throw ParseError(l.number, col, msg);
  }

  void expect_count(const Line& l, std::size_t n) const {
    if (l.tokens.size() != n) error(l, std::min(n, l.tokens.size()), "unexpected token count");
  }

  std::uint64_t parse_u64(const Line& l, std::size_t tok, std::string_view s) const {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) error(l, tok, "expected an integer");
    return v;
  }

  std::uint64_t number(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) error(l, tok, "missing integer");
    return parse_u64(l, tok, l.tokens[tok].text);
  }

  static std::string_view strip_comma(std::string_view s) {
    if (!s.empty() && s.back() == ',') s.remove_suffix(1);
    return s;
  }

  // Parses "<prefix><reg>[<offset>]" or, when allow_whole, "<prefix><reg>".
  std::pair<std::uint32_t, std::optional<std::uint32_t>> ref(
      const Line& l, std::size_t tok, std::string_view s, char prefix,
      bool allow_whole) const {
    s = strip_comma(s);
    if (s.empty() || s[0] != prefix) error(l, tok, std::string("expected a ") + prefix + " reference");
    s.remove_prefix(1);
    const auto br = s.find('[');
    std::string_view reg_text = br == std::string_view::npos ? s : s.substr(0, br);
    const auto reg = static_cast<std::uint32_t>(parse_u64(l, tok, reg_text));
    const std::size_t nregs = prefix == 'q' ? p_.qregs.size() : p_.cregs.size();
    if (reg >= nregs) {
      error(l, tok, std::string("undeclared register ") + prefix + std::to_string(reg));
    }
    if (br == std::string_view::npos) {
      if (!allow_whole) error(l, tok, "expected an indexed reference");
      return {reg, std::nullopt};
    }
    if (s.back() != ']') error(l, tok, "unterminated index");
    const auto off = static_cast<std::uint32_t>(
        parse_u64(l, tok, s.substr(br + 1, s.size() - br - 2)));
    const std::uint32_t width = prefix == 'q' ? p_.qregs[reg] : p_.cregs[reg].width;
    if (off >= width) error(l, tok, "index out of range");
    return {reg, off};
  }

  QubitRef qubit(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) error(l, tok, "missing qubit");
    auto [r, o] = ref(l, tok, l.tokens[tok].text, 'q', false);
    return {r, *o};
  }

  ClbitRef clbit(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) error(l, tok, "missing clbit");
    auto [r, o] = ref(l, tok, l.tokens[tok].text, 'c', false);
    return {r, *o};
  }

  CondSubject subject(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) error(l, tok, "missing condition subject");
    auto [r, o] = ref(l, tok, l.tokens[tok].text, 'c', true);
    return {r, o};
  }

  void meta(const Line& l) {
    expect_count(l, 3);
    const auto key = l.tokens[1].text;
    const auto val = l.tokens[2].text;
    if (key == "seed") {
      p_.meta.seed = number(l, 2);
    } else if (key == "data_qubits") {
      p_.meta.data_qubits = static_cast<std::uint32_t>(number(l, 2));
    } else if (key == "patterns") {
      for (auto item : split_commas(val)) {
        auto k = pattern_from_name(item);
        if (!k) error(l, 2, "unknown pattern kind '" + std::string(item) + "'");
        p_.meta.patterns.push_back(*k);
      }
    } else if (key == "pipeline") {
      for (auto item : split_commas(val)) p_.meta.pipeline.emplace_back(item);
    } else {
      error(l, 1, "unknown meta key");
    }
  }

  static std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto c = s.find(',', pos);
      if (c == std::string_view::npos) c = s.size();
      out.push_back(s.substr(pos, c - pos));
      pos = c + 1;
    }
    return out;
  }

  void expect_open_brace(const Line& l) const {
    if (l.tokens.back().text != "{") error(l, l.tokens.size() - 1, "expected '{'");
  }

  ClassicalCond condition(const Line& l) const {
    // <kw> <subject> == <value> {
    expect_count(l, 5);
    if (l.tokens[2].text != "==") error(l, 2, "expected '=='");
    expect_open_brace(l);
    return {subject(l, 1), number(l, 3)};
  }

  static bool is_close(const Line& l) { return l.tokens[0].text == "}"; }

  // Parses instructions into `out` until a closing line; returns that line
  // (without consuming nested structure) or nullptr at end of input.
  const Line* body(Body& out, const BodyPath& path) {
    std::vector<OpenRegion> open;
    while (!done()) {
      const Line& l = next();
      const auto kw = l.tokens[0].text;
      if (kw == "}" || kw == "end") {
        if (!open.empty()) {
          throw ParseError(open.back().line, 1, "dead region not closed in its body");
        }
        return &l;
      }
      if (kw == "#dead") {
        marker(l, out, path, open);
        continue;
      }
      const auto index = static_cast<std::uint32_t>(out.size());
      auto child = [&](std::uint32_t slot) {
        BodyPath p = path;
        p.push_back({index, slot});
        return p;
      };
      if (kw == "measure") {
        expect_count(l, 4);
        if (l.tokens[2].text != "->") error(l, 2, "expected '->'");
        out.push_back(Measure{qubit(l, 1), clbit(l, 3)});
      } else if (kw == "reset") {
        expect_count(l, 2);
        out.push_back(Reset{qubit(l, 1)});
      } else if (kw == "break") {
        expect_count(l, 1);
        out.push_back(BreakLoop{});
      } else if (kw == "continue") {
        expect_count(l, 1);
        out.push_back(ContinueLoop{});
      } else if (kw == "if") {
        IfTest it;
        it.cond = condition(l);
        out.push_back(std::move(it));
        auto& node = out.back().as<IfTest>();
        const Line* close = body_or_fail(node.then_body, child(0), l);
        if (close->tokens.size() == 3 && close->tokens[1].text == "else" &&
            close->tokens[2].text == "{") {
          close = body_or_fail(node.else_body, child(1), *close);
        }
        expect_plain_close(*close);
      } else if (kw == "while") {
        WhileLoop w;
        w.cond = condition(l);
        out.push_back(std::move(w));
        expect_plain_close(*body_or_fail(out.back().as<WhileLoop>().body, child(0), l));
      } else if (kw == "for") {
        expect_count(l, 3);
        expect_open_brace(l);
        ForRange f;
        f.count = number(l, 1);
        out.push_back(std::move(f));
        expect_plain_close(*body_or_fail(out.back().as<ForRange>().body, child(0), l));
      } else if (kw == "switch") {
        expect_count(l, 3);
        expect_open_brace(l);
        Switch s;
        s.subject = subject(l, 1);
        out.push_back(std::move(s));
        switch_cases(out.back().as<Switch>(), path, index, l);
      } else if (kw == "ctrl_on_int") {
        if (l.tokens.size() < 4) error(l, 0, "malformed ctrl_on_int");
        expect_open_brace(l);
        ControlledOnInt c;
        c.value = number(l, 1);
        for (std::size_t t = 2; t + 1 < l.tokens.size(); ++t) c.ctrl.push_back(qubit(l, t));
        out.push_back(std::move(c));
        expect_plain_close(*body_or_fail(out.back().as<ControlledOnInt>().body, child(0), l));
      } else {
        out.push_back(gate(l));
      }
    }
    if (!open.empty()) throw ParseError(open.back().line, 1, "dead region not closed");
    return nullptr;
  }

  const Line* body_or_fail(Body& out, const BodyPath& path, const Line& opener) {
    const Line* close = body(out, path);
    if (!close || close->tokens[0].text != "}") {
      throw ParseError(close ? close->number : last_line(), 1,
                       "unterminated block opened at line " + std::to_string(opener.number));
    }
    return close;
  }

  void expect_plain_close(const Line& l) const {
    if (l.tokens.size() != 1) error(l, 1, "unexpected tokens after '}'");
  }

  void switch_cases(Switch& s, const BodyPath& path, std::uint32_t index, const Line& opener) {
    std::vector<std::pair<std::uint64_t, Body>> cases;
    std::optional<Body> def;
    // Bodies are parsed into temporaries; slot numbers depend on the final
    // case count, so regions inside the default body are fixed up afterwards.
    const std::size_t region_mark = p_.dead_regions.size();
    std::vector<std::size_t> default_regions;
    while (true) {
      if (done()) throw ParseError(last_line(), 1, "unterminated switch opened at line " + std::to_string(opener.number));
      const Line& l = next();
      const auto kw = l.tokens[0].text;
      if (kw == "}") {
        expect_plain_close(l);
        break;
      }
      BodyPath child = path;
      if (kw == "case") {
        expect_count(l, 3);
        expect_open_brace(l);
        if (def) error(l, 0, "case after default");
        child.push_back({index, static_cast<std::uint32_t>(cases.size())});
        cases.emplace_back(number(l, 1), Body{});
        expect_plain_close(*body_or_fail(cases.back().second, child, l));
      } else if (kw == "default") {
        expect_count(l, 2);
        expect_open_brace(l);
        if (def) error(l, 0, "duplicate default");
        child.push_back({index, kDefaultPlaceholder});
        def.emplace();
        const std::size_t before = p_.dead_regions.size();
        expect_plain_close(*body_or_fail(*def, child, l));
        for (std::size_t r = before; r < p_.dead_regions.size(); ++r) default_regions.push_back(r);
      } else {
        error(l, 0, "expected 'case', 'default' or '}' inside switch");
      }
    }
    for (auto& [v, b] : cases) s.cases.push_back({v, std::move(b)});
    if (def) s.default_body = std::move(*def);
    const auto depth = path.size();
    for (std::size_t r = region_mark; r < p_.dead_regions.size(); ++r) {
      auto& steps = p_.dead_regions[r].span.body;
      if (steps.size() > depth && steps[depth].slot == kDefaultPlaceholder) {
        steps[depth].slot = static_cast<std::uint32_t>(s.cases.size());
      }
    }
  }

  static constexpr std::uint32_t kDefaultPlaceholder = 0xffffffffu;

  void marker(const Line& l, const Body& out, const BodyPath& path,
              std::vector<OpenRegion>& open) {
    if (l.tokens.size() < 3) error(l, 0, "malformed dead-region marker");
    const auto what = l.tokens[1].text;
    const auto id = static_cast<std::uint32_t>(number(l, 2));
    const auto pos = static_cast<std::uint32_t>(out.size());
    if (what == "start") {
      if (l.tokens.size() < 4) error(l, 3, "missing pattern kind");
      auto kind = pattern_from_name(l.tokens[3].text);
      if (!kind) error(l, 3, "unknown pattern kind");
      DeadRegion r;
      r.id = id;
      r.kind = *kind;
      r.span.body = path;
      r.span.begin = pos;
      for (std::size_t t = 4; t < l.tokens.size(); ++t) {
        const auto tok = l.tokens[t].text;
        if (tok.starts_with("anc=")) {
          for (auto item : split_commas(tok.substr(4))) {
            auto [reg, off] = ref(l, t, item, 'q', false);
            r.ancilla_qubits.push_back({reg, *off});
          }
        } else if (tok.starts_with("cbits=")) {
          for (auto item : split_commas(tok.substr(6))) {
            auto [reg, off] = ref(l, t, item, 'c', false);
            r.ancilla_clbits.push_back({reg, *off});
          }
        } else {
          error(l, t, "unknown marker attribute");
        }
      }
      open.push_back({std::move(r), l.number});
    } else if (what == "end") {
      expect_count(l, 3);
      if (open.empty() || open.back().region.id != id) {
        error(l, 2, "dead region end does not match the innermost open region");
      }
      DeadRegion r = std::move(open.back().region);
      open.pop_back();
      r.span.end = pos;
      p_.dead_regions.push_back(std::move(r));
    } else {
      error(l, 1, "expected 'start' or 'end'");
    }
  }

  GateOp gate(const Line& l) const {
    std::string_view head = l.tokens[0].text;
    GateOp g;
    std::string_view name = head;
    const auto paren = head.find('(');
    if (paren != std::string_view::npos) {
      name = head.substr(0, paren);
      if (head.back() != ')') error(l, 0, "unterminated parameter list");
      const std::string arg(head.substr(paren + 1, head.size() - paren - 2));
      char* end = nullptr;
      const double v = std::strtod(arg.c_str(), &end);
      if (arg.empty() || end != arg.c_str() + arg.size()) error(l, 0, "malformed angle");
      g.params.push_back(v);
    }
    auto kind = gate_from_name(name);
    if (!kind) error(l, 0, "unknown instruction '" + std::string(name) + "'");
    g.kind = *kind;
    if (static_cast<int>(g.params.size()) != gate_num_params(g.kind)) {
      error(l, 0, "wrong parameter count");
    }
    for (std::size_t t = 1; t < l.tokens.size(); ++t) g.targets.push_back(qubit(l, t));
    if (static_cast<int>(g.targets.size()) != gate_arity(g.kind)) error(l, 0, "wrong arity");
    return g;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  Program p_;
};

}  // namespace

std::string serialize(const Program& program) { return Writer(program).run(); }

Program deserialize(std::string_view text) { return Parser(text).run(); }

}  // namespace qfe
