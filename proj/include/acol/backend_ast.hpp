#pragma once

#include "acol/ast.hpp"
#include "acol/object_space.hpp"

namespace acol {

/// Reference tree-walking interpreter. Statement lists execute in order;
/// loops iterate in the host (recursion depth is bounded by program nesting,
/// never by iteration count). All other backends are differential-tested
/// against this one.
Env run_ast(const StmtList& program, Env env, Boundary boundary = Boundary::static_call);
Env run_ast(const StmtList& program, Env env, const ObjectSpaceIface& space);

Value eval_expr(const Expr& e, const Env& env, Boundary boundary = Boundary::static_call);

namespace detail {

template <class Space>
Value eval_expr_impl(const Expr& e, const Env& env, const Space& space) {
  return std::visit(
      overloaded{
          [&](const IntLit& n) { return space.make_int(n.value); },
          [&](const VarRef& v) { return space.lookup(env, v.name); },
          [&](const BinExpr& b) {
            Value lhs = eval_expr_impl(*b.lhs, env, space);
            Value rhs = eval_expr_impl(*b.rhs, env, space);
            if (is_comparison(b.op)) {
              return space.compare(to_compare(b.op), lhs, rhs);
            }
            return space.arith(to_arith(b.op), lhs, rhs);
          },
          [&](const NotExpr& n) {
            return space.bool_not(eval_expr_impl(*n.operand, env, space));
          },
      },
      e.node);
}

template <class Space>
void exec_stmts(const StmtList& list, Env& env, const Space& space) {
  for (const Stmt& s : list) {
    std::visit(
        overloaded{
            [&](const AssignStmt& a) {
              space.store(env, a.target, eval_expr_impl(*a.value, env, space));
            },
            [&](const IfStmt& i) {
              if (space.truthy(eval_expr_impl(*i.cond, env, space))) {
                exec_stmts(i.then_body, env, space);
              } else {
                exec_stmts(i.else_body, env, space);
              }
            },
            [&](const WhileStmt& w) {
              while (space.truthy(eval_expr_impl(*w.cond, env, space))) {
                exec_stmts(w.body, env, space);
              }
            },
        },
        s.node);
  }
}

}  // namespace detail
}  // namespace acol
