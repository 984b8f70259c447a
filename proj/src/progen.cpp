#include "acol/progen.hpp"

#include "acol/errors.hpp"

namespace acol {

const std::vector<std::string>& gen_identifiers() {
  static const std::vector<std::string> names = {"v0", "v1", "v2", "v3", "v4"};
  return names;
}

namespace {

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  GeneratedProgram run() {
    GeneratedProgram out;
    out.program = block(0);
    for (const std::string& name : gen_identifiers()) {
      out.initial_env.store(name, Value::integer(0));
    }
    return out;
  }

 private:
  // Draw order is fixed: statement count, then per statement its kind and
  // the draws of its parts in source order. Keep it stable; seeds are part
  // of the external contract.
  StmtList block(int depth) {
    int count = cfg_.stmts_min +
                static_cast<int>(rng_.below(
                    static_cast<std::uint64_t>(cfg_.stmts_max - cfg_.stmts_min + 1)));
    StmtList stmts;
    stmts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      int kind = depth >= cfg_.depth_cap ? 0 : static_cast<int>(rng_.below(3));
      switch (kind) {
        case 0:
          stmts.push_back(assignment());
          break;
        case 1: {
          ExprPtr cond = gen_expr_tree(rng_, cfg_.expr_depth, true);
          StmtList then_body = block(depth + 1);
          StmtList else_body = block(depth + 1);
          stmts.push_back(make_if(std::move(cond), std::move(then_body),
                                  std::move(else_body)));
          break;
        }
        default: {
          // counter reset in front, increment as the first body statement,
          // `counter < loop_iters` as the guard: the body runs exactly
          // loop_iters times per entry.
          std::string counter = "_lc" + std::to_string(counter_index_++);
          stmts.push_back(make_assign(counter, make_int(0)));
          StmtList body;
          body.push_back(make_assign(
              counter, make_bin(BinOpKind::add, make_var(counter), make_int(1))));
          StmtList generated = block(depth + 1);
          for (Stmt& s : generated) body.push_back(std::move(s));
          stmts.push_back(make_while(
              make_bin(BinOpKind::lt, make_var(counter),
                       make_int(static_cast<std::int32_t>(cfg_.loop_iters))),
              std::move(body)));
          break;
        }
      }
    }
    return stmts;
  }

  Stmt assignment() {
    std::string target = gen_identifiers()[rng_.below(gen_identifiers().size())];
    return make_assign(std::move(target), gen_expr_tree(rng_, cfg_.expr_depth, false));
  }

  const GenConfig& cfg_;
  SplitMix64 rng_;
  int counter_index_ = 0;
};

ExprPtr gen_leaf(SplitMix64& rng) {
  if (rng.below(2) == 0) {
    return make_var(gen_identifiers()[rng.below(gen_identifiers().size())]);
  }
  return make_int(static_cast<std::int32_t>(rng.below(5)) - 1);  // -1..3
}

ExprPtr gen_arith(SplitMix64& rng, int budget) {
  if (budget <= 0) return gen_leaf(rng);
  switch (rng.below(4)) {
    case 0:
      return make_var(gen_identifiers()[rng.below(gen_identifiers().size())]);
    case 1:
      return make_int(static_cast<std::int32_t>(rng.below(5)) - 1);
    case 2:
      return make_bin(BinOpKind::add, gen_arith(rng, budget - 1), gen_arith(rng, budget - 1));
    default:
      return make_bin(BinOpKind::sub, gen_arith(rng, budget - 1), gen_arith(rng, budget - 1));
  }
}

}  // namespace

ExprPtr gen_expr_tree(SplitMix64& rng, int budget, bool condition) {
  if (!condition) return gen_arith(rng, budget);
  static constexpr BinOpKind kComparisons[] = {BinOpKind::lt, BinOpKind::le, BinOpKind::gt,
                                               BinOpKind::ge, BinOpKind::eq};
  BinOpKind op = kComparisons[rng.below(5)];
  ExprPtr lhs = gen_arith(rng, budget - 1);
  ExprPtr rhs = gen_arith(rng, budget - 1);
  return make_bin(op, std::move(lhs), std::move(rhs));
}

GeneratedProgram generate(const GenConfig& cfg) {
  if (cfg.stmts_min < 0 || cfg.stmts_min > cfg.stmts_max) {
    throw Error("invalid statement count bounds");
  }
  if (cfg.depth_cap < 1) throw Error("depth cap must be at least 1");
  if (cfg.loop_iters < 0 || cfg.loop_iters > 2147483647) {
    throw Error("loop iteration bound out of range");
  }
  return Generator(cfg).run();
}

}  // namespace acol
