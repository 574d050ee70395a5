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

#ifndef VCAUDIT_TOKEN_HPP
#define VCAUDIT_TOKEN_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vcaudit {

enum class TokenKind : uint8_t {
  Keyword,
  Identifier,
  Number,
  String,
  Operator,
  Punctuation,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;

  bool operator==(const Token&) const = default;
  bool operator<(const Token& other) const {
    if (kind != other.kind) return kind < other.kind;
    return text < other.text;
  }
};

// Canonical token stream of a Verilog source or model completion. Comments
// and whitespace are stripped at lexing; every downstream distance and
// fingerprint computation works on this unit.
using TokenSeq = std::vector<Token>;

struct LexOptions {
  // Positional identifier aliasing: the i-th distinct identifier (by first
  // occurrence) becomes "_Vi". Makes token streams invariant under any
  // injective identifier renaming.
  bool normalize_identifiers = false;
  // Replace every number token's text with the placeholder "NUM".
  bool fold_numeric_literals = false;

  bool operator==(const LexOptions&) const = default;
};

// Lexing is total: arbitrary bytes (including malformed Verilog, which model
// completions often are) always produce a deterministic token stream. Runs of
// bytes that start no known token degrade to single punctuation tokens.
//
// Keywords are matched against the fixed Verilog-2005 reserved-word list;
// SystemVerilog-only keywords lex as identifiers. Operators use maximal munch
// over a fixed table ("<=", "===", ">>>" win over their prefixes). System
// tasks/functions ("$display") lex as keywords so that identifier
// normalization touches user names only.
TokenSeq lex(std::string_view source, const LexOptions& options = {});

bool is_verilog_keyword(std::string_view word);

}  // namespace vcaudit

#endif  // VCAUDIT_TOKEN_HPP
