#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "acol/backend_ast.hpp"
#include "acol/blocks.hpp"
#include "acol/bytecode.hpp"
#include "acol/errors.hpp"
#include "acol/parser.hpp"
#include "acol/progen.hpp"
#include "acol/vm_blocks.hpp"
#include "support/fixtures.hpp"

using namespace acol;

namespace {

std::vector<std::string> tokens(std::initializer_list<const char*> list) {
  return {list.begin(), list.end()};
}

BlockProgram power_blocks() {
  return compile_blocks(parse_program(fixtures::kPowerSource));
}

}  // namespace

TEST_CASE("power program compiles to the reference block layout") {
  BlockProgram prog = power_blocks();
  CHECK(flatten(prog.main) == tokens({"20", "1", "45", "val", "2", "0", "1"}));
  REQUIRE(prog.blocks.size() == 2);
  CHECK(flatten(prog.blocks[0]) == tokens({"40", "exponent", "20", "0", "255"}));
  CHECK(flatten(prog.blocks[1]) ==
        tokens({"40", "val", "40", "base", "198", "45", "val", "40", "exponent", "20", "1",
                "199", "45", "exponent"}));
  CHECK_NOTHROW(validate_blocks(prog));
}

TEST_CASE("empty program compiles to an empty main and no blocks") {
  BlockProgram prog = compile_blocks(StmtList{});
  CHECK(prog.main.empty());
  CHECK(prog.blocks.empty());
}

TEST_CASE("nested loops reference blocks from within blocks") {
  BlockProgram prog = compile_blocks(
      parse_program("while a < 2 { while b < 2 { b = b + 1; } a = a + 1; }"));
  // outer loop: condition block 0, body block 1
  REQUIRE(prog.blocks.size() == 4);
  bool inner_loop_found = false;
  for (const BlockInstr& instr : prog.blocks[1]) {
    if (instr.opcode == blockop::loop) {
      auto [cond_id, body_id] = std::get<std::pair<std::uint32_t, std::uint32_t>>(instr.arg);
      CHECK(cond_id == 2);
      CHECK(body_id == 3);
      inner_loop_found = true;
    }
  }
  CHECK(inner_loop_found);
}

TEST_CASE("if compiles its condition inline and branches by block id") {
  BlockProgram prog = compile_blocks(parse_program("if x < 1 { y = 1; } else { y = 2; }"));
  CHECK(flatten(prog.main) == tokens({"40", "x", "20", "1", "253", "1", "0", "1"}));
  REQUIRE(prog.blocks.size() == 2);
  CHECK(flatten(prog.blocks[0]) == tokens({"20", "1", "45", "y"}));
  CHECK(flatten(prog.blocks[1]) == tokens({"20", "2", "45", "y"}));
}

TEST_CASE("block dump renders main plus numbered blocks") {
  CHECK(dump_blocks(power_blocks()) ==
        "main: [20, 1, 45, val, 2, 0, 1]\n"
        "block 0: [40, exponent, 20, 0, 255]\n"
        "block 1: [40, val, 40, base, 198, 45, val, 40, exponent, 20, 1, 199, 45, exponent]\n");
}

TEST_CASE("run_blocks executes the power program") {
  Env final_env = run_blocks(power_blocks(), fixtures::power_env(2, 5));
  CHECK(final_env.lookup("val") == Value::integer(32));
  CHECK(final_env.lookup("exponent") == Value::integer(0));
}

TEST_CASE("empty main returns the environment unchanged") {
  Env env;
  env.store("x", Value::integer(1));
  CHECK(run_blocks(BlockProgram{}, env) == env);
}

TEST_CASE("generated nested programs agree with the tree walker") {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.stmts_min = 4;  // narrow blocks, full nesting depth
    cfg.stmts_max = 8;
    cfg.depth_cap = 3;
    cfg.loop_iters = 2;
    GeneratedProgram gen = generate(cfg);
    Env expected = run_ast(gen.program, gen.initial_env);
    Env actual = run_blocks(compile_blocks(gen.program), gen.initial_env);
    REQUIRE(expected == actual);
  }
}

TEST_CASE("unknown block ids are rejected") {
  BlockProgram prog;
  prog.main.push_back({blockop::loop, std::make_pair(0u, 5u)});
  prog.blocks.push_back({{op::push1, std::int32_t{1}}});  // only block 0 exists
  CHECK_THROWS_AS(run_blocks(prog, Env{}), UnknownBlockId);
}

TEST_CASE("condition blocks must leave exactly one value") {
  // Stack effects are checked structurally before the program runs.
  BlockProgram two_values;
  two_values.main.push_back({blockop::loop, std::make_pair(0u, 1u)});
  two_values.blocks.push_back(
      {{op::push1, std::int32_t{1}}, {op::push1, std::int32_t{1}}});
  two_values.blocks.push_back({});
  CHECK_THROWS_AS(run_blocks(two_values, Env{}), InvalidBlockProgram);

  BlockProgram empty_cond;
  empty_cond.main.push_back({blockop::loop, std::make_pair(0u, 1u)});
  empty_cond.blocks.push_back({});
  empty_cond.blocks.push_back({});
  CHECK_THROWS_AS(run_blocks(empty_cond, Env{}), InvalidBlockProgram);
}

TEST_CASE("condition blocks may not touch the environment") {
  BlockProgram prog;
  prog.main.push_back({blockop::loop, std::make_pair(0u, 1u)});
  prog.blocks.push_back({{op::push1, std::int32_t{0}},
                         {op::assign, std::string("x")},
                         {op::push1, std::int32_t{1}}});
  prog.blocks.push_back({});
  CHECK_THROWS_AS(validate_blocks(prog), InvalidBlockProgram);
}

TEST_CASE("jump opcodes cannot appear inside blocks") {
  BlockProgram prog;
  prog.main.push_back({op::jump, std::int32_t{0}});
  CHECK_THROWS_AS(validate_blocks(prog), InvalidBlockProgram);
}

TEST_CASE("a non-boolean condition result is a type error") {
  BlockProgram prog;
  prog.main.push_back({blockop::loop, std::make_pair(0u, 1u)});
  prog.blocks.push_back({{op::push1, std::int32_t{1}}});  // leaves Int 1
  prog.blocks.push_back({});
  CHECK_THROWS_AS(run_blocks(prog, Env{}), TypeError);
}

TEST_CASE("branch pops the precomputed condition and runs one block") {
  // main: push 1; push 0; gt; branch(0, 1)
  BlockProgram prog;
  prog.main.push_back({op::push1, std::int32_t{1}});
  prog.main.push_back({op::push1, std::int32_t{0}});
  prog.main.push_back({op::gt, std::monostate{}});
  prog.main.push_back({blockop::branch, std::make_pair(0u, 1u)});
  prog.blocks.push_back({{op::push1, std::int32_t{7}}, {op::assign, std::string("x")}});
  prog.blocks.push_back({{op::push1, std::int32_t{9}}, {op::assign, std::string("x")}});
  Env final_env = run_blocks(prog, Env{});
  CHECK(final_env.lookup("x") == Value::integer(7));
}

TEST_CASE("stack underflow inside a block") {
  BlockProgram prog;
  prog.main.push_back({op::add, std::monostate{}});
  CHECK_THROWS_AS(run_blocks(prog, Env{}), StackUnderflow);
}

TEST_CASE("boundary modes agree") {
  BlockProgram prog = power_blocks();
  CHECK(run_blocks(prog, fixtures::power_env(2, 10), Boundary::static_call) ==
        run_blocks(prog, fixtures::power_env(2, 10), Boundary::dynamic_call));
}
