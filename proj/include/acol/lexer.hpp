#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace acol {

enum class TokenKind : std::uint8_t {
  ident,
  int_lit,
  kw_if,
  kw_else,
  kw_while,
  plus,
  minus,
  star,
  op_mod,   // keyword operator `mod`
  bang,
  lt,
  le,
  gt,
  ge,
  eq_eq,
  assign,   // both `=` and `:=`
  semi,
  lbrace,
  rbrace,
  lparen,
  rparen,
  eof,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::size_t offset;        // byte offset into the source
  std::string text;          // identifier spelling
  std::uint64_t int_value;   // literal magnitude (sign is applied by the parser)
};

// `#` starts a comment running to end of line; whitespace (including CR) is
// insignificant. Throws LexError on any other character. The returned
// sequence ends with an eof token.
std::vector<Token> tokenize(std::string_view source);

// 1-based line/column of a byte offset, for diagnostics.
std::pair<std::size_t, std::size_t> line_col(std::string_view source, std::size_t offset);

}  // namespace acol
