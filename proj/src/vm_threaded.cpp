#include "acol/vm_threaded.hpp"

#include <utility>

#include "acol/backend_ast.hpp"
#include "acol/errors.hpp"

namespace acol {
namespace {

template <class Space>
Env run_threaded_ast_impl(const ThreadedAstGraph& g, Env env, const Space& space) {
  NodeId cur = g.entry;
  for (;;) {
    const ThreadedAstNode& n = g.nodes[cur];
    if (std::holds_alternative<TEnd>(n.node)) return env;
    cur = std::visit(
        overloaded{
            [&](const TAssign& a) {
              space.store(env, a.target, detail::eval_expr_impl(*a.value, env, space));
              return a.next;
            },
            [&](const TIf& i) {
              return space.truthy(detail::eval_expr_impl(*i.cond, env, space)) ? i.then_node
                                                                               : i.else_node;
            },
            [&](const TWhile& w) {
              return space.truthy(detail::eval_expr_impl(*w.cond, env, space)) ? w.body
                                                                               : w.exit;
            },
            [&](const TEnd&) { return cur; },  // unreachable
        },
        n.node);
  }
}

template <class Space>
Env run_threaded_bc_impl(const ThreadedBcGraph& g, Env env, const Space& space) {
  std::vector<Value> stack;
  stack.reserve(16);
  auto pop = [&](std::string_view what) {
    if (stack.empty()) throw StackUnderflow("stack underflow on " + std::string(what));
    Value v = std::move(stack.back());
    stack.pop_back();
    return v;
  };

  NodeId cur = g.entry;
  for (;;) {
    const ThreadedBcNode& n = g.nodes[cur];
    if (std::holds_alternative<BEnd>(n.node)) return env;
    cur = std::visit(
        overloaded{
            [&](const BPush& x) {
              stack.push_back(space.make_int(x.value));
              return x.next;
            },
            [&](const BLoad& x) {
              stack.push_back(space.lookup(env, x.var));
              return x.next;
            },
            [&](const BStore& x) {
              space.store(env, x.var, pop("store"));
              return x.next;
            },
            [&](const BArith& x) {
              Value b = pop("arith");
              Value a = pop("arith");
              stack.push_back(space.arith(x.op, a, b));
              return x.next;
            },
            [&](const BCompare& x) {
              Value b = pop("compare");
              Value a = pop("compare");
              stack.push_back(space.compare(x.op, a, b));
              return x.next;
            },
            [&](const BNot& x) {
              Value v = pop("not");
              stack.push_back(space.bool_not(v));
              return x.next;
            },
            [&](const BIf& x) {
              return space.truthy(pop("if")) ? x.then_node : x.else_node;
            },
            [&](const BEnd&) { return cur; },  // unreachable
        },
        n.node);
  }
}

}  // namespace

Env run_threaded_ast(const ThreadedAstGraph& g, Env env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    return run_threaded_ast_impl(g, std::move(env), InlineSpace{});
  }
  return run_threaded_ast(g, std::move(env), standard_object_space());
}

Env run_threaded_ast(const ThreadedAstGraph& g, Env env, const ObjectSpaceIface& space) {
  return run_threaded_ast_impl(g, std::move(env), VirtualSpace{&space});
}

Env run_threaded_bc(const ThreadedBcGraph& g, Env env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    return run_threaded_bc_impl(g, std::move(env), InlineSpace{});
  }
  return run_threaded_bc(g, std::move(env), standard_object_space());
}

Env run_threaded_bc(const ThreadedBcGraph& g, Env env, const ObjectSpaceIface& space) {
  return run_threaded_bc_impl(g, std::move(env), VirtualSpace{&space});
}

}  // namespace acol
