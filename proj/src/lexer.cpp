// Copyright 2026 The vcaudit Authors
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

#include "vcaudit/token.hpp"

#include <array>
#include <unordered_map>
#include <unordered_set>

namespace vcaudit {
namespace {

// Reserved words of IEEE 1364-2005 (Verilog-2005), Annex B.
const std::unordered_set<std::string_view>& keyword_table() {
  static const std::unordered_set<std::string_view> table = {
      "always", "and", "assign", "automatic", "begin", "buf", "bufif0",
      "bufif1", "case", "casex", "casez", "cell", "cmos", "config",
      "deassign", "default", "defparam", "design", "disable", "edge", "else",
      "end", "endcase", "endconfig", "endfunction", "endgenerate",
      "endmodule", "endprimitive", "endspecify", "endtable", "endtask",
      "event", "for", "force", "forever", "fork", "function", "generate",
      "genvar", "highz0", "highz1", "if", "ifnone", "incdir", "include",
      "initial", "inout", "input", "instance", "integer", "join", "large",
      "liblist", "library", "localparam", "macromodule", "medium", "module",
      "nand", "negedge", "nmos", "nor", "noshowcancelled", "not", "notif0",
      "notif1", "or", "output", "parameter", "pmos", "posedge", "primitive",
      "pull0", "pull1", "pulldown", "pullup", "pulsestyle_ondetect",
      "pulsestyle_onevent", "rcmos", "real", "realtime", "reg", "release",
      "repeat", "rnmos", "rpmos", "rtran", "rtranif0", "rtranif1", "scalared",
      "showcancelled", "signed", "small", "specify", "specparam", "strong0",
      "strong1", "supply0", "supply1", "table", "task", "time", "tran",
      "tranif0", "tranif1", "tri", "tri0", "tri1", "triand", "trior",
      "trireg", "unsigned", "use", "uwire", "vectored", "wait", "wand",
      "weak0", "weak1", "while", "wire", "wor", "xnor", "xor",
  };
  return table;
}

// Multi-character operators, longest first inside each bucket. Maximal munch
// tries three characters, then two, then one.
constexpr std::array<std::string_view, 5> kOps3 = {"===", "!==", "<<<", ">>>",
                                                   "&&&"};
constexpr std::array<std::string_view, 17> kOps2 = {
    "==", "!=", "<=", ">=", "&&", "||", "<<", ">>", "**",
    "~&", "~|", "~^", "^~", "->", "=>", "+:", "-:"};
constexpr std::string_view kOps1 = "+-*/%<>=!&|^~?";
constexpr std::string_view kPunct1 = "()[]{};,.:@#`'";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c) || c == '$'; }
bool is_base_char(char c) {
  switch (c) {
    case 'b': case 'B': case 'o': case 'O':
    case 'd': case 'D': case 'h': case 'H':
      return true;
    default:
      return false;
  }
}
// Digits legal after a base specifier: hex digits plus x/z/? and '_'.
bool is_based_digit(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F') ||
         c == 'x' || c == 'X' || c == 'z' || c == 'Z' || c == '?' || c == '_';
}

class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  bool done() const { return pos_ >= src_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void advance(size_t n = 1) { pos_ += n; }
  size_t pos() const { return pos_; }
  std::string_view slice(size_t from) const {
    return src_.substr(from, pos_ - from);
  }
  bool starts_with(std::string_view s) const {
    return src_.compare(pos_, s.size(), s) == 0;
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
};

// Consumes an optional "'<s><base><digits>" tail; used both for sized
// literals (4'b0) and unsized ones ('d10). Returns false without moving the
// cursor when the apostrophe does not begin a based literal.
bool try_consume_based_tail(Cursor& cur) {
  if (cur.peek() != '\'') return false;
  size_t ahead = 1;
  if (cur.peek(ahead) == 's' || cur.peek(ahead) == 'S') ++ahead;
  if (!is_base_char(cur.peek(ahead))) return false;
  ++ahead;
  if (!is_based_digit(cur.peek(ahead))) return false;
  cur.advance(ahead);
  while (is_based_digit(cur.peek())) cur.advance();
  return true;
}

void consume_number(Cursor& cur) {
  while (is_digit(cur.peek()) || cur.peek() == '_') cur.advance();
  if (try_consume_based_tail(cur)) return;
  // Real literal: fraction and/or exponent.
  if (cur.peek() == '.' && is_digit(cur.peek(1))) {
    cur.advance();
    while (is_digit(cur.peek()) || cur.peek() == '_') cur.advance();
  }
  if (cur.peek() == 'e' || cur.peek() == 'E') {
    size_t ahead = 1;
    if (cur.peek(ahead) == '+' || cur.peek(ahead) == '-') ++ahead;
    if (is_digit(cur.peek(ahead))) {
      cur.advance(ahead);
      while (is_digit(cur.peek()) || cur.peek() == '_') cur.advance();
    }
  }
}

void consume_string(Cursor& cur) {
  cur.advance();  // opening quote
  while (!cur.done()) {
    char c = cur.peek();
    if (c == '\\' && cur.peek(1) != '\0') {
      cur.advance(2);
      continue;
    }
    if (c == '"') {
      cur.advance();
      return;
    }
    if (c == '\n') return;  // strings are single-line; leave it unterminated
    cur.advance();
  }
}

// A byte that cannot start any token; runs of these become one punctuation
// token so that lexing stays total on arbitrary model output.
bool is_unknown_byte(char c) {
  if (is_space(c) || is_digit(c) || is_ident_start(c)) return false;
  if (c == '"' || c == '\\' || c == '$' || c == '\'') return false;
  if (kOps1.find(c) != std::string_view::npos) return false;
  if (kPunct1.find(c) != std::string_view::npos) return false;
  return true;
}

void apply_normalization(TokenSeq& tokens, const LexOptions& options) {
  if (!options.normalize_identifiers && !options.fold_numeric_literals) return;
  std::unordered_map<std::string, size_t> alias;
  for (Token& tok : tokens) {
    if (options.normalize_identifiers && tok.kind == TokenKind::Identifier) {
      auto [it, inserted] = alias.emplace(tok.text, alias.size() + 1);
      tok.text = "_V" + std::to_string(it->second);
    } else if (options.fold_numeric_literals && tok.kind == TokenKind::Number) {
      tok.text = "NUM";
    }
  }
}

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "unknown";
}

bool is_verilog_keyword(std::string_view word) {
  return keyword_table().contains(word);
}

TokenSeq lex(std::string_view source, const LexOptions& options) {
  TokenSeq tokens;
  Cursor cur(source);

  while (!cur.done()) {
    char c = cur.peek();

    if (is_space(c)) {
      cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '/') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '*') {
      cur.advance(2);
      while (!cur.done() && !(cur.peek() == '*' && cur.peek(1) == '/'))
        cur.advance();
      if (!cur.done()) cur.advance(2);
      continue;
    }

    const size_t start = cur.pos();

    if (c == '"') {
      consume_string(cur);
      tokens.push_back({TokenKind::String, std::string(cur.slice(start))});
      continue;
    }
    if (is_digit(c)) {
      consume_number(cur);
      tokens.push_back({TokenKind::Number, std::string(cur.slice(start))});
      continue;
    }
    if (c == '\'' && try_consume_based_tail(cur)) {
      tokens.push_back({TokenKind::Number, std::string(cur.slice(start))});
      continue;
    }
    if (is_ident_start(c)) {
      cur.advance();
      while (is_ident_char(cur.peek())) cur.advance();
      std::string_view word = cur.slice(start);
      tokens.push_back({is_verilog_keyword(word) ? TokenKind::Keyword
                                                 : TokenKind::Identifier,
                        std::string(word)});
      continue;
    }
    if (c == '$' && is_ident_char(cur.peek(1))) {
      cur.advance();
      while (is_ident_char(cur.peek())) cur.advance();
      // System task/function: a fixed standard name, not a user identifier.
      tokens.push_back({TokenKind::Keyword, std::string(cur.slice(start))});
      continue;
    }
    if (c == '\\') {
      // Escaped identifier: backslash up to the next whitespace.
      cur.advance();
      while (!cur.done() && !is_space(cur.peek())) cur.advance();
      tokens.push_back({TokenKind::Identifier, std::string(cur.slice(start))});
      continue;
    }

    bool munched = false;
    for (std::string_view op : kOps3) {
      if (cur.starts_with(op)) {
        cur.advance(op.size());
        tokens.push_back({TokenKind::Operator, std::string(op)});
        munched = true;
        break;
      }
    }
    if (munched) continue;
    for (std::string_view op : kOps2) {
      if (cur.starts_with(op)) {
        cur.advance(op.size());
        tokens.push_back({TokenKind::Operator, std::string(op)});
        munched = true;
        break;
      }
    }
    if (munched) continue;
    if (kOps1.find(c) != std::string_view::npos) {
      cur.advance();
      tokens.push_back({TokenKind::Operator, std::string(1, c)});
      continue;
    }
    if (kPunct1.find(c) != std::string_view::npos) {
      cur.advance();
      tokens.push_back({TokenKind::Punctuation, std::string(1, c)});
      continue;
    }

    // Unknown byte run ($ with no name, control bytes, UTF-8 payload, ...).
    cur.advance();
    while (!cur.done() && is_unknown_byte(cur.peek())) cur.advance();
    tokens.push_back({TokenKind::Punctuation, std::string(cur.slice(start))});
  }

  apply_normalization(tokens, options);
  return tokens;
}

}  // namespace vcaudit
