#include "acol/parser.hpp"

#include <optional>

#include "acol/errors.hpp"
#include "acol/lexer.hpp"

namespace acol {
namespace {

constexpr std::int64_t kIntMax = 2147483647;   // INT32_MAX
constexpr std::int64_t kIntMin = -2147483648;  // INT32_MIN

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source), tokens_(tokenize(source)) {}

  StmtList program() {
    StmtList stmts = stmt_list();
    expect(TokenKind::eof, "a statement");
    return stmts;
  }

  ExprPtr expression_only() {
    ExprPtr e = expr();
    expect(TokenKind::eof, "end of expression");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool at(TokenKind kind) const { return peek().kind == kind; }

  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(TokenKind kind, std::string_view expected_desc) {
    if (!at(kind)) fail(std::string(expected_desc));
    return advance();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    auto [line, col] = line_col(source_, t.offset);
    throw ParseError(t.offset, "parse error at " + std::to_string(line) + ":" +
                                   std::to_string(col) + ": expected " + expected +
                                   ", found " + std::string(to_string(t.kind)));
  }

  StmtList stmt_list() {
    StmtList stmts;
    while (at(TokenKind::ident) || at(TokenKind::kw_if) || at(TokenKind::kw_while)) {
      stmts.push_back(stmt());
    }
    return stmts;
  }

  Stmt stmt() {
    if (accept(TokenKind::kw_if)) {
      ExprPtr cond = expr();
      StmtList then_body = block();
      StmtList else_body;
      if (accept(TokenKind::kw_else)) {
        else_body = block();
      }
      return make_if(std::move(cond), std::move(then_body), std::move(else_body));
    }
    if (accept(TokenKind::kw_while)) {
      ExprPtr cond = expr();
      StmtList body = block();
      return make_while(std::move(cond), std::move(body));
    }
    const Token& name = expect(TokenKind::ident, "a statement");
    expect(TokenKind::assign, "'=' or ':='");
    ExprPtr value = expr();
    expect(TokenKind::semi, "';'");
    return make_assign(name.text, std::move(value));
  }

  StmtList block() {
    expect(TokenKind::lbrace, "'{'");
    StmtList stmts = stmt_list();
    expect(TokenKind::rbrace, "'}' or a statement");
    return stmts;
  }

  std::optional<BinOpKind> comparison_op() {
    switch (peek().kind) {
      case TokenKind::lt: return BinOpKind::lt;
      case TokenKind::le: return BinOpKind::le;
      case TokenKind::gt: return BinOpKind::gt;
      case TokenKind::ge: return BinOpKind::ge;
      case TokenKind::eq_eq: return BinOpKind::eq;
      default: return std::nullopt;
    }
  }

  ExprPtr expr() {
    ExprPtr lhs = additive();
    if (auto op = comparison_op()) {
      advance();
      ExprPtr rhs = additive();
      lhs = make_bin(*op, std::move(lhs), std::move(rhs));
      // Non-associative: a second comparison operator is a syntax error.
      if (comparison_op()) {
        fail("at most one comparison operator per expression");
      }
    }
    return lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    for (;;) {
      BinOpKind op;
      if (at(TokenKind::plus)) {
        op = BinOpKind::add;
      } else if (at(TokenKind::minus)) {
        op = BinOpKind::sub;
      } else if (at(TokenKind::op_mod)) {
        op = BinOpKind::mod;
      } else {
        return lhs;
      }
      advance();
      lhs = make_bin(op, std::move(lhs), multiplicative());
    }
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (accept(TokenKind::star)) {
      lhs = make_bin(BinOpKind::mul, std::move(lhs), unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (accept(TokenKind::bang)) {
      return make_not(unary());
    }
    return atom();
  }

  ExprPtr atom() {
    if (at(TokenKind::int_lit)) {
      return literal(false);
    }
    // A minus directly before a literal in operand position is a negative
    // literal; unary minus does not otherwise exist in the language.
    if (at(TokenKind::minus) && tokens_[pos_ + 1].kind == TokenKind::int_lit) {
      advance();
      return literal(true);
    }
    if (at(TokenKind::ident)) {
      return make_var(advance().text);
    }
    if (accept(TokenKind::lparen)) {
      ExprPtr inner = expr();
      expect(TokenKind::rparen, "')'");
      return inner;
    }
    fail("an expression");
  }

  ExprPtr literal(bool negative) {
    const Token& t = expect(TokenKind::int_lit, "integer literal");
    std::int64_t value = negative ? -static_cast<std::int64_t>(t.int_value)
                                  : static_cast<std::int64_t>(t.int_value);
    if (value < kIntMin || value > kIntMax) {
      auto [line, col] = line_col(source_, t.offset);
      throw ParseError(t.offset, "parse error at " + std::to_string(line) + ":" +
                                     std::to_string(col) +
                                     ": integer literal out of 32-bit range");
    }
    return make_int(static_cast<std::int32_t>(value));
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

StmtList parse_program(std::string_view source) {
  return Parser(source).program();
}

ExprPtr parse_expression(std::string_view source) {
  return Parser(source).expression_only();
}

}  // namespace acol
