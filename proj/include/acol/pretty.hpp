#pragma once

#include <string>

#include "acol/ast.hpp"

namespace acol {

// Renders source text that reparses to a structurally identical AST.
// Parentheses are emitted only where precedence demands them.
std::string pretty_print(const StmtList& program);
std::string expr_to_string(const Expr& e);

}  // namespace acol
