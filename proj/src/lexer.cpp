#include "acol/lexer.hpp"

#include <cctype>

#include "acol/errors.hpp"

namespace acol {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::ident: return "identifier";
    case TokenKind::int_lit: return "integer literal";
    case TokenKind::kw_if: return "'if'";
    case TokenKind::kw_else: return "'else'";
    case TokenKind::kw_while: return "'while'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::op_mod: return "'mod'";
    case TokenKind::bang: return "'!'";
    case TokenKind::lt: return "'<'";
    case TokenKind::le: return "'<='";
    case TokenKind::gt: return "'>'";
    case TokenKind::ge: return "'>='";
    case TokenKind::eq_eq: return "'=='";
    case TokenKind::assign: return "'=' or ':='";
    case TokenKind::semi: return "';'";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::eof: return "end of input";
  }
  return "?";
}

std::pair<std::size_t, std::size_t> line_col(std::string_view source, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

namespace {

[[noreturn]] void fail(std::string_view source, std::size_t offset, const std::string& what) {
  auto [line, col] = line_col(source, offset);
  throw LexError(offset, "lex error at " + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + what);
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Literal magnitudes above 2^31 can never form a valid literal, negated or
// not; the parser enforces the exact signed bound.
constexpr std::uint64_t kMaxMagnitude = std::uint64_t{1} << 31;

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();

  auto push = [&](TokenKind kind, std::size_t at) {
    tokens.push_back(Token{kind, at, {}, 0});
  };

  while (i < n) {
    char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && source[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < n && ident_char(source[i])) ++i;
      std::string_view word = source.substr(start, i - start);
      if (word == "if") {
        push(TokenKind::kw_if, start);
      } else if (word == "else") {
        push(TokenKind::kw_else, start);
      } else if (word == "while") {
        push(TokenKind::kw_while, start);
      } else if (word == "mod") {
        push(TokenKind::op_mod, start);
      } else {
        tokens.push_back(Token{TokenKind::ident, start, std::string(word), 0});
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t value = 0;
      while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(source[i] - '0');
        if (value > kMaxMagnitude) {
          fail(source, start, "integer literal out of 32-bit range");
        }
        ++i;
      }
      tokens.push_back(Token{TokenKind::int_lit, start, {}, value});
      continue;
    }
    switch (c) {
      case '+': push(TokenKind::plus, start); ++i; break;
      case '-': push(TokenKind::minus, start); ++i; break;
      case '*': push(TokenKind::star, start); ++i; break;
      case ';': push(TokenKind::semi, start); ++i; break;
      case '{': push(TokenKind::lbrace, start); ++i; break;
      case '}': push(TokenKind::rbrace, start); ++i; break;
      case '(': push(TokenKind::lparen, start); ++i; break;
      case ')': push(TokenKind::rparen, start); ++i; break;
      case '!': push(TokenKind::bang, start); ++i; break;
      case '<':
        if (i + 1 < n && source[i + 1] == '=') {
          push(TokenKind::le, start);
          i += 2;
        } else {
          push(TokenKind::lt, start);
          ++i;
        }
        break;
      case '>':
        if (i + 1 < n && source[i + 1] == '=') {
          push(TokenKind::ge, start);
          i += 2;
        } else {
          push(TokenKind::gt, start);
          ++i;
        }
        break;
      case '=':
        if (i + 1 < n && source[i + 1] == '=') {
          push(TokenKind::eq_eq, start);
          i += 2;
        } else {
          push(TokenKind::assign, start);
          ++i;
        }
        break;
      case ':':
        if (i + 1 < n && source[i + 1] == '=') {
          push(TokenKind::assign, start);
          i += 2;
        } else {
          fail(source, start, "expected '=' after ':'");
        }
        break;
      default:
        fail(source, start, std::string("unexpected character '") + c + "'");
    }
  }
  tokens.push_back(Token{TokenKind::eof, n, {}, 0});
  return tokens;
}

}  // namespace acol
