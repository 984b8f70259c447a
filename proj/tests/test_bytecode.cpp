#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "acol/bytecode.hpp"
#include "acol/errors.hpp"
#include "acol/parser.hpp"
#include "acol/progen.hpp"
#include "acol/vm_linear.hpp"
#include "support/fixtures.hpp"

using namespace acol;

namespace {

struct GoldenInstr {
  std::uint32_t offset;
  std::uint8_t opcode;
  std::int64_t arg;
};

// The reference layout of the compiled power program.
const GoldenInstr kPowerLayout[] = {
    {0, 20, 1},   {2, 45, 0},   {7, 40, 1},  {12, 20, 0},  {14, 255, 0}, {15, 11, 54},
    {20, 40, 0},  {25, 40, 2},  {30, 198, 0}, {31, 45, 0}, {36, 40, 1},  {41, 20, 1},
    {43, 199, 0}, {44, 45, 1},  {49, 10, 7}, {54, 0, 0},
};

BytecodeImage power_image() {
  return compile_linear(parse_program(fixtures::kPowerSource));
}

}  // namespace

TEST_CASE("power program compiles to the reference layout") {
  BytecodeImage image = power_image();
  auto instrs = decode_all(image);
  REQUIRE(instrs.size() == std::size(kPowerLayout));
  for (std::size_t i = 0; i < instrs.size(); ++i) {
    CAPTURE(i);
    CHECK(instrs[i].offset == kPowerLayout[i].offset);
    CHECK(instrs[i].opcode == kPowerLayout[i].opcode);
    CHECK(instrs[i].arg == kPowerLayout[i].arg);
  }
  CHECK(image.symbols.size() == 3);
  CHECK(image.symbols.name(0) == "val");
  CHECK(image.symbols.name(1) == "exponent");
  CHECK(image.symbols.name(2) == "base");
  CHECK(image.code.size() == 55);
  CHECK(image.code.back() == op::end);
}

TEST_CASE("compilation is deterministic") {
  CHECK(power_image() == power_image());
}

TEST_CASE("empty program compiles to a lone end sentinel") {
  BytecodeImage image = compile_linear(StmtList{});
  CHECK(image.code == std::vector<std::uint8_t>{0});
  CHECK(image.symbols.size() == 0);
}

TEST_CASE("small assignment layout, disassembly and execution") {
  StmtList program = parse_program("x = 1 + 2;");
  BytecodeImage image = compile_linear(program);
  CHECK(image.code == std::vector<std::uint8_t>{20, 1, 20, 2, 200, 45, 0, 0, 0, 0, 0});
  CHECK(disassemble(image) == "0: push1 1\n2: push1 2\n4: add\n5: assign x\n10: end\n");
  Env final_env = run_linear(image, Env{});
  CHECK(final_env.lookup("x") == Value::integer(3));
}

TEST_CASE("push encodings: 8-bit literals use push1, wider ones push4") {
  BytecodeImage image = compile_linear(parse_program("x = 127; y = -128; z = 128; w = -129;"));
  auto instrs = decode_all(image);
  CHECK(instrs[0].opcode == op::push1);
  CHECK(instrs[0].arg == 127);
  CHECK(instrs[2].opcode == op::push1);
  CHECK(instrs[2].arg == -128);
  CHECK(instrs[4].opcode == op::push4);
  CHECK(instrs[4].arg == 128);
  CHECK(instrs[6].opcode == op::push4);
  CHECK(instrs[6].arg == -129);
}

TEST_CASE("multi-byte arguments are least-significant byte first") {
  // hand-written fixtures pin the wire format
  BytecodeImage image = compile_linear(parse_program("x = 305419896;"));  // 0x12345678
  CHECK(image.code[0] == op::push4);
  CHECK(image.code[1] == 0x78);
  CHECK(image.code[2] == 0x56);
  CHECK(image.code[3] == 0x34);
  CHECK(image.code[4] == 0x12);

  BytecodeImage negative = compile_linear(parse_program("x = -2;"));
  CHECK(negative.code[0] == op::push1);
  CHECK(negative.code[1] == 0xfe);  // two's complement

  std::vector<std::uint8_t> buf;
  append_u32(buf, 0x0102Fu);
  CHECK(buf == std::vector<std::uint8_t>{0x2f, 0x10, 0x00, 0x00});
  CHECK(read_u32(buf, 0) == 0x0102Fu);
  std::vector<std::uint8_t> neg = {0xff, 0xff, 0xff, 0xff};
  CHECK(read_i32(neg, 0) == -1);
}

TEST_CASE("if emits a join jump even with an empty else") {
  BytecodeImage image = compile_linear(parse_program("if x < 1 { y = 1; }"));
  auto instrs = decode_all(image);
  bool saw_join_jump = false;
  for (const auto& d : instrs) {
    if (d.opcode == op::jump) saw_join_jump = true;
    CHECK(d.opcode != op::jump_if_true);  // compiler never emits opcode 12
  }
  CHECK(saw_join_jump);
  Env env;
  env.store("x", Value::integer(0));
  CHECK(run_linear(image, env).lookup("y") == Value::integer(1));
}

TEST_CASE("validate accepts compiled images and rejects corrupted ones") {
  BytecodeImage image = power_image();
  CHECK_NOTHROW(validate(image));

  BytecodeImage bad_target = image;
  bad_target.code[16] = 99;  // jump-if-false argument now inside an instruction
  CHECK_THROWS_AS(validate(bad_target), MalformedImage);

  BytecodeImage bad_opcode = image;
  bad_opcode.code[14] = 99;
  CHECK_THROWS_AS(validate(bad_opcode), MalformedImage);

  BytecodeImage truncated = image;
  truncated.code.resize(4);  // cuts the assign argument
  CHECK_THROWS_AS(validate(truncated), MalformedImage);

  BytecodeImage no_end = image;
  no_end.code.pop_back();
  CHECK_THROWS_AS(validate(no_end), MalformedImage);

  BytecodeImage bad_var = compile_linear(parse_program("x = 1;"));
  bad_var.code[3] = 7;  // variable id beyond the symbol table
  CHECK_THROWS_AS(validate(bad_var), MalformedImage);
}

TEST_CASE("disassembler output for edge images") {
  BytecodeImage empty = compile_linear(StmtList{});
  CHECK(disassemble(empty) == "0: end\n");

  BytecodeImage unknown;
  unknown.code = {99};
  CHECK_THROWS_AS(disassemble(unknown), MalformedImage);
}

TEST_CASE("assembler basics") {
  BytecodeImage image = assemble("0: push1 1\n2: end\n");
  CHECK(image.code == std::vector<std::uint8_t>{20, 1, 0});

  // offsets are optional, comments allowed
  BytecodeImage no_offsets = assemble("push1 1\n# comment\nend\n");
  CHECK(no_offsets.code == std::vector<std::uint8_t>{20, 1, 0});

  CHECK_THROWS_AS(assemble("0: bogus 1\nend\n"), AsmError);
  CHECK_THROWS_AS(assemble("0: push1\nend\n"), AsmError);
  CHECK_THROWS_AS(assemble("0: push1 999\nend\n"), AsmError);
  CHECK_THROWS_AS(assemble("5: push1 1\nend\n"), AsmError);  // offset mismatch
  CHECK_THROWS_AS(assemble("0: add extra\nend\n"), AsmError);

  // jump to offset 999 in a 10-byte image
  CHECK_THROWS_AS(assemble("0: jump 999\n5: push1 1\n7: push1 1\n9: end\n"), AsmError);
  try {
    assemble("0: jump 999\n5: end\n");
  } catch (const AsmError& e) {
    CHECK(std::string(e.what()).find("invalid image") != std::string::npos);
  }
}

TEST_CASE("assemble reverses disassemble byte for byte") {
  BytecodeImage image = power_image();
  CHECK(assemble(disassemble(image)) == image);

  // jump-if-true is reachable through the assembler even though the
  // compiler never emits it
  BytecodeImage jit = assemble(
      "push1 1\n"
      "push1 0\n"
      "gt\n"
      "jump-if-true 22\n"
      "push1 5\n"
      "assign x\n"
      "jump 29\n"
      "push1 9\n"
      "assign x\n"
      "end\n");
  CHECK(assemble(disassemble(jit)) == jit);
  Env result = run_linear(jit, Env{});
  CHECK(result.lookup("x") == Value::integer(9));  // 1 > 0, so the jump is taken
}

TEST_CASE("round trips over a corpus of generated images") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.depth_cap = 1;
    GeneratedProgram gen = generate(cfg);
    BytecodeImage image = compile_linear(gen.program);
    CHECK_NOTHROW(validate(image));
    REQUIRE(assemble(disassemble(image)) == image);

    std::stringstream buf;
    save_acbc(image, buf);
    REQUIRE(load_acbc(buf) == image);
  }
}

TEST_CASE("the .acbc container has a pinned wire format") {
  BytecodeImage image = compile_linear(parse_program("ab = 1;"));
  std::stringstream buf;
  save_acbc(image, buf);
  std::string bytes = buf.str();
  const char expected[] = {
      'A', 'C', 'B', 'C',        // magic
      1,                         // version
      1, 0, 0, 0,                // symbol count
      2, 0, 'a', 'b',            // name length + name
      8, 0, 0, 0,                // code length
      20, 1, 45, 0, 0, 0, 0, 0,  // push1 1; assign ab; end
  };
  REQUIRE(bytes.size() == sizeof(expected));
  CHECK(std::equal(bytes.begin(), bytes.end(), expected));
}

TEST_CASE("acbc loader rejects damaged files") {
  BytecodeImage image = power_image();
  std::stringstream buf;
  save_acbc(image, buf);
  std::string bytes = buf.str();

  std::stringstream bad_magic{"XXXX" + bytes.substr(4)};
  CHECK_THROWS_AS(load_acbc(bad_magic), MalformedImage);

  std::stringstream truncated{bytes.substr(0, bytes.size() - 3)};
  CHECK_THROWS_AS(load_acbc(truncated), MalformedImage);

  std::string bad_version = bytes;
  bad_version[4] = 2;
  std::stringstream bad_version_stream{bad_version};
  CHECK_THROWS_AS(load_acbc(bad_version_stream), MalformedImage);
}
