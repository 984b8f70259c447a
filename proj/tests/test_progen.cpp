#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "acol/backend_ast.hpp"
#include "acol/errors.hpp"
#include "acol/pretty.hpp"
#include "acol/progen.hpp"

using namespace acol;

namespace {

bool is_counter(std::string_view name) { return name.substr(0, 3) == "_lc"; }

// Walks every expression in a program.
void for_each_expr(const StmtList& list, const std::function<void(const Expr&)>& fn) {
  for (const Stmt& s : list) {
    std::visit(overloaded{
                   [&](const AssignStmt& a) { fn(*a.value); },
                   [&](const IfStmt& i) {
                     fn(*i.cond);
                     for_each_expr(i.then_body, fn);
                     for_each_expr(i.else_body, fn);
                   },
                   [&](const WhileStmt& w) {
                     fn(*w.cond);
                     for_each_expr(w.body, fn);
                   },
               },
               s.node);
  }
}

void for_each_expr_node(const Expr& e, const std::function<void(const Expr&)>& fn) {
  fn(e);
  std::visit(overloaded{
                 [](const IntLit&) {},
                 [](const VarRef&) {},
                 [&](const BinExpr& b) {
                   for_each_expr_node(*b.lhs, fn);
                   for_each_expr_node(*b.rhs, fn);
                 },
                 [&](const NotExpr& n) { for_each_expr_node(*n.operand, fn); },
             },
             e.node);
}

int max_while_nesting(const StmtList& list) {
  int best = 0;
  for (const Stmt& s : list) {
    std::visit(overloaded{
                   [](const AssignStmt&) {},
                   [&](const IfStmt& i) {
                     best = std::max({best, max_while_nesting(i.then_body),
                                      max_while_nesting(i.else_body)});
                   },
                   [&](const WhileStmt& w) {
                     best = std::max(best, 1 + max_while_nesting(w.body));
                   },
               },
               s.node);
  }
  return best;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  GenConfig cfg;
  cfg.seed = 77;
  GeneratedProgram a = generate(cfg);
  GeneratedProgram b = generate(cfg);
  CHECK(equal(a.program, b.program));
  CHECK(a.initial_env == b.initial_env);
  CHECK(pretty_print(a.program) == pretty_print(b.program));

  cfg.seed = 78;
  CHECK_FALSE(equal(a.program, generate(cfg).program));
}

TEST_CASE("structural constraints hold for every seed") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.depth_cap = 2;
    GeneratedProgram gen = generate(cfg);

    // no multiplication or modulo anywhere, literals in -1..3, conditions
    // carry exactly one comparison (at the root)
    for_each_expr(gen.program, [](const Expr& root) {
      int comparisons = 0;
      for_each_expr_node(root, [&](const Expr& e) {
        if (const auto* bin = std::get_if<BinExpr>(&e.node)) {
          CHECK(bin->op != BinOpKind::mul);
          CHECK(bin->op != BinOpKind::mod);
          if (is_comparison(bin->op)) ++comparisons;
        }
        if (const auto* lit = std::get_if<IntLit>(&e.node)) {
          bool in_range = (lit->value >= -1 && lit->value <= 3) || lit->value == 20;
          CHECK(in_range);  // 20 is the loop guard bound
        }
        CHECK_FALSE(std::holds_alternative<NotExpr>(e.node));
      });
      if (const auto* bin = std::get_if<BinExpr>(&root.node);
          bin != nullptr && is_comparison(bin->op)) {
        CHECK(comparisons == 1);
      } else {
        CHECK(comparisons == 0);
      }
    });

    // the initial env binds exactly the five identifiers, all to zero
    CHECK(gen.initial_env.size() == 5);
    for (const std::string& name : gen_identifiers()) {
      CHECK(gen.initial_env.lookup(name) == Value::integer(0));
    }
  }
}

TEST_CASE("every while is a reset/increment/guard counter loop") {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.depth_cap = 3;
  GeneratedProgram gen = generate(cfg);

  std::set<std::string> counters_seen;
  std::function<void(const StmtList&)> walk = [&](const StmtList& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Stmt& s = list[i];
      if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
        // guard: counter < 20
        const auto& guard = std::get<BinExpr>(w->cond->node);
        CHECK(guard.op == BinOpKind::lt);
        const std::string& counter = std::get<VarRef>(guard.lhs->node).name;
        CHECK(is_counter(counter));
        CHECK(std::get<IntLit>(guard.rhs->node).value == 20);
        CHECK_FALSE(counters_seen.count(counter));  // fresh per loop
        counters_seen.insert(counter);

        // reset immediately before the loop
        REQUIRE(i > 0);
        const auto& reset = std::get<AssignStmt>(list[i - 1].node);
        CHECK(reset.target == counter);
        CHECK(std::get<IntLit>(reset.value->node).value == 0);

        // increment as the first body statement
        REQUIRE_FALSE(w->body.empty());
        const auto& inc = std::get<AssignStmt>(w->body.front().node);
        CHECK(inc.target == counter);
        const auto& inc_expr = std::get<BinExpr>(inc.value->node);
        CHECK(inc_expr.op == BinOpKind::add);
        CHECK(std::get<VarRef>(inc_expr.lhs->node).name == counter);
        CHECK(std::get<IntLit>(inc_expr.rhs->node).value == 1);

        walk(w->body);
      } else if (const auto* branch = std::get_if<IfStmt>(&s.node)) {
        walk(branch->then_body);
        walk(branch->else_body);
      } else {
        const auto& assign = std::get<AssignStmt>(s.node);
        // counters are reserved: the only assignments to them are the reset
        // in front of their while and the increment opening its body
        if (is_counter(assign.target)) {
          bool is_increment = false;
          if (const auto* bin = std::get_if<BinExpr>(&assign.value->node)) {
            is_increment = bin->op == BinOpKind::add &&
                           std::holds_alternative<VarRef>(bin->lhs->node) &&
                           std::get<VarRef>(bin->lhs->node).name == assign.target;
          }
          bool is_reset = false;
          if (const auto* lit = std::get_if<IntLit>(&assign.value->node);
              lit != nullptr && lit->value == 0 && i + 1 < list.size()) {
            if (const auto* next = std::get_if<WhileStmt>(&list[i + 1].node)) {
              const auto& guard = std::get<BinExpr>(next->cond->node);
              is_reset = std::get<VarRef>(guard.lhs->node).name == assign.target;
            }
          }
          CHECK((is_increment || is_reset));
        }
      }
    }
  };
  walk(gen.program);
  CHECK_FALSE(counters_seen.empty());
}

TEST_CASE("statement counts stay in the configured band") {
  for (std::uint64_t seed = 40; seed <= 50; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.depth_cap = 1;
    GeneratedProgram gen = generate(cfg);
    // exclude the inserted counter resets: they accompany each while
    int whiles = 0;
    int total = static_cast<int>(gen.program.size());
    for (const Stmt& s : gen.program) {
      if (std::holds_alternative<WhileStmt>(s.node)) ++whiles;
    }
    int chosen = total - whiles;
    CHECK(chosen >= 20);
    CHECK(chosen <= 50);
  }
}

TEST_CASE("nesting respects the depth cap") {
  GenConfig cfg;
  cfg.seed = 9;
  cfg.depth_cap = 2;
  cfg.loop_iters = 2;
  GeneratedProgram gen = generate(cfg);
  CHECK(max_while_nesting(gen.program) <= 2);

  std::function<void(const StmtList&, int)> check_depth = [&](const StmtList& list,
                                                              int depth) {
    for (const Stmt& s : list) {
      std::visit(overloaded{
                     [&](const AssignStmt&) {},
                     [&](const IfStmt& i) {
                       CHECK(depth < cfg.depth_cap);
                       check_depth(i.then_body, depth + 1);
                       check_depth(i.else_body, depth + 1);
                     },
                     [&](const WhileStmt& w) {
                       CHECK(depth < cfg.depth_cap);
                       check_depth(w.body, depth + 1);
                     },
                 },
                 s.node);
    }
  };
  check_depth(gen.program, 0);
}

TEST_CASE("programs terminate: every loop body runs exactly 20 times per entry") {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.depth_cap = 2;
  GeneratedProgram gen = generate(cfg);

  // Instrument a clone: bump _entries<k> ahead of each while, _body<k> at
  // the top of each body, then check body = 20 * entries from the final env.
  int loop_index = 0;
  Env env = gen.initial_env;
  std::function<StmtList(const StmtList&)> instrument = [&](const StmtList& list) {
    StmtList out;
    for (const Stmt& s : list) {
      std::visit(
          overloaded{
              [&](const AssignStmt& a) { out.push_back(make_assign(a.target, clone(*a.value))); },
              [&](const IfStmt& i) {
                out.push_back(make_if(clone(*i.cond), instrument(i.then_body),
                                      instrument(i.else_body)));
              },
              [&](const WhileStmt& w) {
                int k = loop_index++;
                std::string entries = "_entries" + std::to_string(k);
                std::string body_runs = "_body" + std::to_string(k);
                env.store(entries, Value::integer(0));
                env.store(body_runs, Value::integer(0));
                out.push_back(make_assign(
                    entries, make_bin(BinOpKind::add, make_var(entries), make_int(1))));
                StmtList body;
                body.push_back(make_assign(
                    body_runs, make_bin(BinOpKind::add, make_var(body_runs), make_int(1))));
                for (Stmt& inner : instrument(w.body)) body.push_back(std::move(inner));
                out.push_back(make_while(clone(*w.cond), std::move(body)));
              },
          },
          s.node);
    }
    return out;
  };
  StmtList instrumented = instrument(gen.program);
  REQUIRE(loop_index > 0);

  Env final_env = run_ast(instrumented, env);
  for (int k = 0; k < loop_index; ++k) {
    const Value& entries = final_env.lookup("_entries" + std::to_string(k));
    const Value& body_runs = final_env.lookup("_body" + std::to_string(k));
    REQUIRE(entries.is_small());
    CHECK(body_runs == space::arith(ArithOp::mul, entries, Value::integer(20)));
  }
}

TEST_CASE("leaf draws are uniform (5-sigma band)") {
  SplitMix64 rng(12345);
  std::map<std::string, int> counts;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    ExprPtr leaf = gen_expr_tree(rng, 0, false);
    std::visit(overloaded{
                   [&](const IntLit& lit) { counts["int " + std::to_string(lit.value)]++; },
                   [&](const VarRef& v) { counts[v.name]++; },
                   [](const auto&) { FAIL("budget 0 must produce a leaf"); },
               },
               leaf->node);
  }
  // ten equally likely leaves: five identifiers and five constants
  CHECK(counts.size() == 10);
  const double expected = n / 10.0;
  const double sigma = std::sqrt(n * 0.1 * 0.9);
  for (const auto& [leaf, count] : counts) {
    CAPTURE(leaf);
    CHECK(std::abs(count - expected) < 5 * sigma);
  }
}

TEST_CASE("condition trees put their single comparison at the root") {
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    ExprPtr cond = gen_expr_tree(rng, 3, true);
    const auto& root = std::get<BinExpr>(cond->node);
    CHECK(is_comparison(root.op));
    for_each_expr_node(*root.lhs, [](const Expr& e) {
      if (const auto* bin = std::get_if<BinExpr>(&e.node)) {
        CHECK_FALSE(is_comparison(bin->op));
      }
    });
  }
}

TEST_CASE("budget zero produces a leaf") {
  SplitMix64 rng(1);
  for (int i = 0; i < 50; ++i) {
    ExprPtr leaf = gen_expr_tree(rng, 0, false);
    bool is_leaf = std::holds_alternative<IntLit>(leaf->node) ||
                   std::holds_alternative<VarRef>(leaf->node);
    CHECK(is_leaf);
  }
}

TEST_CASE("config validation") {
  GenConfig bad;
  bad.depth_cap = 0;
  CHECK_THROWS_AS(generate(bad), Error);
  GenConfig swapped;
  swapped.stmts_min = 10;
  swapped.stmts_max = 5;
  CHECK_THROWS_AS(generate(swapped), Error);
}

TEST_CASE("small configs still run under the reference backend") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.depth_cap = 2;
    cfg.loop_iters = 5;
    GeneratedProgram gen = generate(cfg);
    Env final_env = run_ast(gen.program, gen.initial_env);
    CHECK(final_env.size() >= 5);
  }
}
