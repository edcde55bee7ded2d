// Copyright 2026 The qctk Authors.
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

#include "qct/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qct {

namespace {

struct Token {
  enum Kind { ID, NUMBER, STRING, PUNCT, END } kind = END;
  std::string text;
  double value = 0.0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::END;
      tok_.text.clear();
      return;
    }
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_'))
        bump();
      tok_.kind = Token::ID;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E' ||
              ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > start &&
               (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
        bump();
      tok_.kind = Token::NUMBER;
      tok_.text = s_.substr(start, pos_ - start);
      try {
        tok_.value = std::stod(tok_.text);
      } catch (...) {
        fail("SyntaxError", where() + "bad numeric literal '" + tok_.text + "'");
      }
      return;
    }
    if (c == '"') {
      bump();
      size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') bump();
      if (pos_ >= s_.size())
        fail("SyntaxError", where() + "unterminated string");
      tok_.kind = Token::STRING;
      tok_.text = s_.substr(start, pos_ - start);
      bump();
      return;
    }
    tok_.kind = Token::PUNCT;
    if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
      tok_.text = "->";
      bump();
      bump();
      return;
    }
    tok_.text = std::string(1, c);
    bump();
  }

  void skip_space() {
    for (;;) {
      while (pos_ < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[pos_])))
        bump();
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && s_[pos_ + 1] == '/') {
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string where() const {
    return "line " + std::to_string(line_) + ", col " + std::to_string(col_) +
           ": ";
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Circuit run() {
    while (lex_.peek().kind != Token::END) statement();
    Circuit c(total_wires_);
    c.wire_dim.assign(static_cast<size_t>(total_wires_), 2);
    for (const auto& g : pending_) c.add(g.kind, g.wires, g.theta);
    c.validate();
    return c;
  }

private:
  [[noreturn]] void err(const Token& t, const std::string& kind,
                        const std::string& msg) {
    fail(kind, "line " + std::to_string(t.line) + ", col " +
                   std::to_string(t.col) + ": " + msg);
  }

  Token expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.kind != Token::PUNCT || t.text != p)
      err(t, "SyntaxError", "expected '" + p + "', got '" + t.text + "'");
    return t;
  }

  void statement() {
    Token t = lex_.take();
    if (t.kind != Token::ID)
      err(t, "SyntaxError", "expected statement, got '" + t.text + "'");
    if (t.text == "OPENQASM") {
      lex_.take();  // version number
      expect_punct(";");
      return;
    }
    if (t.text == "include") {
      Token s = lex_.take();
      if (s.kind != Token::STRING)
        err(s, "SyntaxError", "expected include file name");
      expect_punct(";");
      return;
    }
    if (t.text == "qreg" || t.text == "creg") {
      Token name = lex_.take();
      if (name.kind != Token::ID) err(name, "SyntaxError", "expected register name");
      expect_punct("[");
      Token n = lex_.take();
      if (n.kind != Token::NUMBER || n.value < 1 ||
          n.value != std::floor(n.value))
        err(n, "SyntaxError", "expected register size");
      expect_punct("]");
      expect_punct(";");
      if (t.text == "qreg") {
        if (qregs_.count(name.text))
          err(name, "SyntaxError", "duplicate qreg " + name.text);
        qregs_[name.text] = {total_wires_, static_cast<int>(n.value)};
        total_wires_ += static_cast<int>(n.value);
      } else {
        cregs_[name.text] = static_cast<int>(n.value);
      }
      return;
    }
    if (t.text == "barrier") {
      while (lex_.peek().kind != Token::END &&
             !(lex_.peek().kind == Token::PUNCT && lex_.peek().text == ";"))
        lex_.take();
      expect_punct(";");
      return;
    }
    if (t.text == "measure") {
      int w = qubit_ref(t);
      expect_punct("->");
      creg_ref();
      expect_punct(";");
      pending_.push_back({GateKind::MEASURE, {w}, 0.0});
      return;
    }
    gate_application(t);
  }

  void gate_application(const Token& name) {
    static const std::map<std::string, GateKind> kinds = {
        {"x", GateKind::X},     {"y", GateKind::Y},
        {"z", GateKind::Z},     {"h", GateKind::H},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},
        {"rz", GateKind::RZ},   {"cx", GateKind::CNOT},
        {"swap", GateKind::SWAP}, {"cz", GateKind::CZ},
        {"ccx", GateKind::TOFFOLI}};
    auto it = kinds.find(name.text);
    if (it == kinds.end())
      err(name, "UnknownGate", "unknown gate '" + name.text + "'");
    double theta = 0.0;
    if (gate_has_param(it->second)) {
      expect_punct("(");
      theta = expression();
      expect_punct(")");
    } else if (lex_.peek().kind == Token::PUNCT && lex_.peek().text == "(") {
      err(lex_.peek(), "ArityMismatch",
          "gate '" + name.text + "' takes no parameter");
    }
    std::vector<int> wires;
    wires.push_back(qubit_ref(name));
    while (lex_.peek().kind == Token::PUNCT && lex_.peek().text == ",") {
      lex_.take();
      wires.push_back(qubit_ref(name));
    }
    expect_punct(";");
    int want = 1;
    switch (it->second) {
      case GateKind::CNOT:
      case GateKind::SWAP:
      case GateKind::CZ: want = 2; break;
      case GateKind::TOFFOLI: want = 3; break;
      default: want = 1; break;
    }
    if (static_cast<int>(wires.size()) != want)
      err(name, "ArityMismatch",
          "gate '" + name.text + "' expects " + std::to_string(want) +
              " qubits, got " + std::to_string(wires.size()));
    pending_.push_back({it->second, wires, theta});
  }

  int qubit_ref(const Token& ctx) {
    Token name = lex_.take();
    if (name.kind != Token::ID)
      err(name, "SyntaxError", "expected qubit reference");
    auto it = qregs_.find(name.text);
    if (it == qregs_.end())
      err(name, "UndeclaredWire", "undeclared qreg '" + name.text + "'");
    expect_punct("[");
    Token idx = lex_.take();
    if (idx.kind != Token::NUMBER) err(idx, "SyntaxError", "expected index");
    expect_punct("]");
    int i = static_cast<int>(idx.value);
    if (i < 0 || i >= it->second.second)
      err(idx, "UndeclaredWire",
          name.text + "[" + std::to_string(i) + "] out of range");
    (void)ctx;
    return it->second.first + i;
  }

  void creg_ref() {
    Token name = lex_.take();
    if (name.kind != Token::ID || !cregs_.count(name.text))
      err(name, "UndeclaredWire", "undeclared creg");
    expect_punct("[");
    Token idx = lex_.take();
    if (idx.kind != Token::NUMBER) err(idx, "SyntaxError", "expected index");
    expect_punct("]");
  }

  // expression := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
  double expression() {
    double v = term();
    while (lex_.peek().kind == Token::PUNCT &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.take().text;
      double rhs = term();
      v = op == "+" ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = factor();
    while (lex_.peek().kind == Token::PUNCT &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      std::string op = lex_.take().text;
      double rhs = factor();
      if (op == "/" && rhs == 0.0)
        err(lex_.peek(), "SyntaxError", "division by zero in parameter");
      v = op == "*" ? v * rhs : v / rhs;
    }
    return v;
  }

  double factor() {
    Token t = lex_.take();
    if (t.kind == Token::PUNCT && t.text == "-") return -factor();
    if (t.kind == Token::PUNCT && t.text == "(") {
      double v = expression();
      expect_punct(")");
      return v;
    }
    if (t.kind == Token::NUMBER) return t.value;
    if (t.kind == Token::ID && t.text == "pi") return M_PI;
    err(t, "SyntaxError", "expected parameter term, got '" + t.text + "'");
  }

  struct Pending {
    GateKind kind;
    std::vector<int> wires;
    double theta;
  };

  Lexer lex_;
  std::map<std::string, std::pair<int, int>> qregs_;  // name -> (base, size)
  std::map<std::string, int> cregs_;
  std::vector<Pending> pending_;
  int total_wires_ = 0;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Circuit parse_qasm(const std::string& text) { return Parser(text).run(); }

Circuit parse_qasm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("SyntaxError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str());
}

std::string emit_qasm(const Circuit& c) {
  c.validate();
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << c.n_wires << "];\n";
  bool has_measure = false;
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::MEASURE) has_measure = true;
  if (has_measure) out << "creg c[" << c.n_wires << "];\n";
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::AGGREGATE ||
        g.kind == GateKind::GENERALIZED_TOFFOLI)
      fail("UnsupportedGate",
           std::string(gate_name(g.kind)) + " has no qasm form");
    if (g.kind == GateKind::MEASURE) {
      out << "measure q[" << g.wires[0] << "] -> c[" << g.wires[0] << "];\n";
      continue;
    }
    out << gate_name(g.kind);
    if (gate_has_param(g.kind)) out << "(" << fmt_double(g.theta) << ")";
    out << " ";
    for (size_t i = 0; i < g.wires.size(); ++i)
      out << (i ? "," : "") << "q[" << g.wires[i] << "]";
    out << ";\n";
  }
  return out.str();
}

}  // namespace qct
