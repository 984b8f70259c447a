#pragma once

#include <string_view>

#include "acol/ast.hpp"

namespace acol {

/// Parses a whole program. Grammar, loosest binding first:
///
///   program   = stmt*
///   stmt      = ident ("=" | ":=") expr ";"
///             | "if" expr "{" stmt* "}" ("else" "{" stmt* "}")?
///             | "while" expr "{" stmt* "}"
///   expr      = additive (cmpop additive)?          -- at most one comparison
///   cmpop     = "<" | "<=" | ">" | ">=" | "=="
///   additive  = multiplicative (("+" | "-" | "mod") multiplicative)*   -- left assoc
///   multiplicative = unary ("*" unary)*
///   unary     = "!" unary | atom
///   atom      = integer | "-" integer | ident | "(" expr ")"
///
/// Throws LexError / ParseError with source positions.
StmtList parse_program(std::string_view source);

/// Parses a single expression (whole input must be consumed).
ExprPtr parse_expression(std::string_view source);

}  // namespace acol
