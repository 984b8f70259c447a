#include "acol/pretty.hpp"

namespace acol {
namespace {

// Binding strength: comparison < additive < multiplicative < unary < atom.
enum Level : int { kComparison = 1, kAdditive = 2, kMultiplicative = 3, kUnary = 4, kAtom = 5 };

int level_of(const Expr& e) {
  return std::visit(
      overloaded{
          [](const IntLit&) { return static_cast<int>(kAtom); },
          [](const VarRef&) { return static_cast<int>(kAtom); },
          [](const BinExpr& b) {
            if (is_comparison(b.op)) return static_cast<int>(kComparison);
            return b.op == BinOpKind::mul ? static_cast<int>(kMultiplicative)
                                          : static_cast<int>(kAdditive);
          },
          [](const NotExpr&) { return static_cast<int>(kUnary); },
      },
      e.node);
}

void emit_expr(const Expr& e, int min_level, std::string& out) {
  bool parens = level_of(e) < min_level;
  if (parens) out += '(';
  std::visit(
      overloaded{
          [&](const IntLit& n) { out += std::to_string(n.value); },
          [&](const VarRef& v) { out += v.name; },
          [&](const BinExpr& b) {
            int own = level_of(e);
            // Left-associative chains keep the left child at the same level;
            // the right child must bind tighter. Comparison operands must be
            // at least additive (no bare comparison on either side).
            emit_expr(*b.lhs, own == kComparison ? kAdditive : own, out);
            out += ' ';
            out += op_symbol(b.op);
            out += ' ';
            emit_expr(*b.rhs, own == kComparison ? kAdditive : own + 1, out);
          },
          [&](const NotExpr& n) {
            out += '!';
            emit_expr(*n.operand, kUnary, out);
          },
      },
      e.node);
  if (parens) out += ')';
}

void emit_stmts(const StmtList& list, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  for (const Stmt& s : list) {
    std::visit(
        overloaded{
            [&](const AssignStmt& a) {
              out += pad;
              out += a.target;
              out += " = ";
              emit_expr(*a.value, kComparison, out);
              out += ";\n";
            },
            [&](const IfStmt& i) {
              out += pad;
              out += "if ";
              emit_expr(*i.cond, kComparison, out);
              out += " {\n";
              emit_stmts(i.then_body, indent + 1, out);
              out += pad;
              out += "}";
              if (!i.else_body.empty()) {
                out += " else {\n";
                emit_stmts(i.else_body, indent + 1, out);
                out += pad;
                out += "}";
              }
              out += '\n';
            },
            [&](const WhileStmt& w) {
              out += pad;
              out += "while ";
              emit_expr(*w.cond, kComparison, out);
              out += " {\n";
              emit_stmts(w.body, indent + 1, out);
              out += pad;
              out += "}\n";
            },
        },
        s.node);
  }
}

}  // namespace

std::string pretty_print(const StmtList& program) {
  std::string out;
  emit_stmts(program, 0, out);
  return out;
}

std::string expr_to_string(const Expr& e) {
  std::string out;
  emit_expr(e, kComparison, out);
  return out;
}

}  // namespace acol
