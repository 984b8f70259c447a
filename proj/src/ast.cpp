#include "acol/ast.hpp"

#include <algorithm>

#include "acol/errors.hpp"

namespace acol {

ArithOp to_arith(BinOpKind op) {
  switch (op) {
    case BinOpKind::add: return ArithOp::add;
    case BinOpKind::sub: return ArithOp::sub;
    case BinOpKind::mul: return ArithOp::mul;
    case BinOpKind::mod: return ArithOp::mod;
    default: throw Error("not an arithmetic operator");
  }
}

CompareOp to_compare(BinOpKind op) {
  switch (op) {
    case BinOpKind::lt: return CompareOp::lt;
    case BinOpKind::le: return CompareOp::le;
    case BinOpKind::gt: return CompareOp::gt;
    case BinOpKind::ge: return CompareOp::ge;
    case BinOpKind::eq: return CompareOp::eq;
    default: throw Error("not a comparison operator");
  }
}

std::string_view op_symbol(BinOpKind op) {
  switch (op) {
    case BinOpKind::add: return "+";
    case BinOpKind::sub: return "-";
    case BinOpKind::mul: return "*";
    case BinOpKind::mod: return "mod";
    case BinOpKind::lt: return "<";
    case BinOpKind::le: return "<=";
    case BinOpKind::gt: return ">";
    case BinOpKind::ge: return ">=";
    case BinOpKind::eq: return "==";
  }
  return "?";
}

ExprPtr make_int(std::int32_t value) {
  return std::make_unique<Expr>(Expr{IntLit{value}});
}

ExprPtr make_var(std::string name) {
  return std::make_unique<Expr>(Expr{VarRef{std::move(name)}});
}

ExprPtr make_bin(BinOpKind op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_unique<Expr>(Expr{BinExpr{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr make_not(ExprPtr operand) {
  return std::make_unique<Expr>(Expr{NotExpr{std::move(operand)}});
}

Stmt make_assign(std::string target, ExprPtr value) {
  return Stmt{AssignStmt{std::move(target), std::move(value)}};
}

Stmt make_if(ExprPtr cond, StmtList then_body, StmtList else_body) {
  return Stmt{IfStmt{std::move(cond), std::move(then_body), std::move(else_body)}};
}

Stmt make_while(ExprPtr cond, StmtList body) {
  return Stmt{WhileStmt{std::move(cond), std::move(body)}};
}

ExprPtr clone(const Expr& e) {
  return std::visit(
      overloaded{
          [](const IntLit& n) { return make_int(n.value); },
          [](const VarRef& v) { return make_var(v.name); },
          [](const BinExpr& b) { return make_bin(b.op, clone(*b.lhs), clone(*b.rhs)); },
          [](const NotExpr& n) { return make_not(clone(*n.operand)); },
      },
      e.node);
}

Stmt clone(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const AssignStmt& a) { return make_assign(a.target, clone(*a.value)); },
          [](const IfStmt& i) {
            return make_if(clone(*i.cond), clone(i.then_body), clone(i.else_body));
          },
          [](const WhileStmt& w) { return make_while(clone(*w.cond), clone(w.body)); },
      },
      s.node);
}

StmtList clone(const StmtList& program) {
  StmtList out;
  out.reserve(program.size());
  for (const Stmt& s : program) out.push_back(clone(s));
  return out;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const IntLit& n) { return n.value == std::get<IntLit>(b.node).value; },
          [&](const VarRef& v) { return v.name == std::get<VarRef>(b.node).name; },
          [&](const BinExpr& x) {
            const auto& y = std::get<BinExpr>(b.node);
            return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
          },
          [&](const NotExpr& n) {
            return equal(*n.operand, *std::get<NotExpr>(b.node).operand);
          },
      },
      a.node);
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const AssignStmt& x) {
            const auto& y = std::get<AssignStmt>(b.node);
            return x.target == y.target && equal(*x.value, *y.value);
          },
          [&](const IfStmt& x) {
            const auto& y = std::get<IfStmt>(b.node);
            return equal(*x.cond, *y.cond) && equal(x.then_body, y.then_body) &&
                   equal(x.else_body, y.else_body);
          },
          [&](const WhileStmt& x) {
            const auto& y = std::get<WhileStmt>(b.node);
            return equal(*x.cond, *y.cond) && equal(x.body, y.body);
          },
      },
      a.node);
}

bool equal(const StmtList& a, const StmtList& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

std::size_t expr_depth(const Expr& e) {
  return std::visit(
      overloaded{
          [](const IntLit&) -> std::size_t { return 1; },
          [](const VarRef&) -> std::size_t { return 1; },
          [](const BinExpr& b) {
            return 1 + std::max(expr_depth(*b.lhs), expr_depth(*b.rhs));
          },
          [](const NotExpr& n) { return 1 + expr_depth(*n.operand); },
      },
      e.node);
}

namespace {

std::size_t max_depth_in(const StmtList& list) {
  std::size_t best = 0;
  for (const Stmt& s : list) {
    std::visit(
        overloaded{
            [&](const AssignStmt& a) { best = std::max(best, expr_depth(*a.value)); },
            [&](const IfStmt& i) {
              best = std::max({best, expr_depth(*i.cond), max_depth_in(i.then_body),
                               max_depth_in(i.else_body)});
            },
            [&](const WhileStmt& w) {
              best = std::max({best, expr_depth(*w.cond), max_depth_in(w.body)});
            },
        },
        s.node);
  }
  return best;
}

std::size_t expr_size(const Expr& e) {
  return std::visit(
      overloaded{
          [](const IntLit&) -> std::size_t { return 1; },
          [](const VarRef&) -> std::size_t { return 1; },
          [](const BinExpr& b) { return 1 + expr_size(*b.lhs) + expr_size(*b.rhs); },
          [](const NotExpr& n) { return 1 + expr_size(*n.operand); },
      },
      e.node);
}

}  // namespace

std::size_t max_expr_depth(const StmtList& program) { return max_depth_in(program); }

std::size_t ast_size(const StmtList& program) {
  std::size_t n = 0;
  for (const Stmt& s : program) {
    n += 1;
    std::visit(
        overloaded{
            [&](const AssignStmt& a) { n += expr_size(*a.value); },
            [&](const IfStmt& i) {
              n += expr_size(*i.cond) + ast_size(i.then_body) + ast_size(i.else_body);
            },
            [&](const WhileStmt& w) { n += expr_size(*w.cond) + ast_size(w.body); },
        },
        s.node);
  }
  return n;
}

}  // namespace acol
