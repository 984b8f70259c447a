#include "acol/backend_ast.hpp"

namespace acol {

Env run_ast(const StmtList& program, Env env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    detail::exec_stmts(program, env, InlineSpace{});
    return env;
  }
  return run_ast(program, std::move(env), standard_object_space());
}

Env run_ast(const StmtList& program, Env env, const ObjectSpaceIface& space) {
  detail::exec_stmts(program, env, VirtualSpace{&space});
  return env;
}

Value eval_expr(const Expr& e, const Env& env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    return detail::eval_expr_impl(e, env, InlineSpace{});
  }
  return detail::eval_expr_impl(e, env, VirtualSpace{&standard_object_space()});
}

}  // namespace acol
