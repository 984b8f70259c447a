#include "acol/vm_linear.hpp"

#include <utility>

#include "acol/errors.hpp"

namespace acol {
namespace {

[[noreturn]] void underflow(std::uint8_t opcode, std::size_t pc) {
  throw StackUnderflow("stack underflow at offset " + std::to_string(pc) + " (" +
                       std::string(mnemonic(opcode)) + ")");
}

ArithOp arith_of(std::uint8_t opcode) {
  switch (opcode) {
    case op::add: return ArithOp::add;
    case op::sub: return ArithOp::sub;
    case op::mul: return ArithOp::mul;
    default: return ArithOp::mod;
  }
}

CompareOp compare_of(std::uint8_t opcode) {
  switch (opcode) {
    case op::lt: return CompareOp::lt;
    case op::le: return CompareOp::le;
    case op::gt: return CompareOp::gt;
    case op::ge: return CompareOp::ge;
    default: return CompareOp::eq;
  }
}

struct NoTrace {
  void step(std::uint32_t /*pc*/, std::size_t /*stack_depth*/) {}
};

struct StatsTrace {
  RunStats* stats;
  void step(std::uint32_t /*pc*/, std::size_t stack_depth) {
    ++stats->instructions;
    if (stack_depth > stats->max_stack_depth) stats->max_stack_depth = stack_depth;
  }
};

struct OffsetTrace {
  std::vector<std::uint32_t>* visited;
  void step(std::uint32_t pc, std::size_t /*stack_depth*/) { visited->push_back(pc); }
};

template <class Space, class Trace>
Env run_linear_impl(const BytecodeImage& image, Env env, const Space& space, Trace trace) {
  validate(image);
  SlotEnv slots(image.symbols, env);
  std::vector<Value> stack;
  stack.reserve(16);
  const std::uint8_t* code = image.code.data();
  const std::size_t len = image.code.size();
  std::size_t pc = 0;

  while (pc < len) {
    const std::uint8_t opcode = code[pc];
    trace.step(static_cast<std::uint32_t>(pc), stack.size());
    switch (opcode) {
      case op::end:
        pc = len;
        break;
      case op::jump:
        pc = read_u32(image.code, pc + 1);
        break;
      case op::jump_if_false:
      case op::jump_if_true: {
        if (stack.empty()) underflow(opcode, pc);
        Value cond = std::move(stack.back());
        stack.pop_back();
        const bool taken = space.truthy(cond) == (opcode == op::jump_if_true);
        pc = taken ? read_u32(image.code, pc + 1) : pc + 5;
        break;
      }
      case op::push1:
        stack.push_back(space.make_int(static_cast<std::int8_t>(code[pc + 1])));
        pc += 2;
        break;
      case op::push4:
        stack.push_back(space.make_int(read_i32(image.code, pc + 1)));
        pc += 5;
        break;
      case op::load:
        stack.push_back(space.load_slot(slots, read_u32(image.code, pc + 1)));
        pc += 5;
        break;
      case op::assign: {
        if (stack.empty()) underflow(opcode, pc);
        space.store_slot(slots, read_u32(image.code, pc + 1), std::move(stack.back()));
        stack.pop_back();
        pc += 5;
        break;
      }
      case op::bool_not: {
        if (stack.empty()) underflow(opcode, pc);
        stack.back() = space.bool_not(stack.back());
        pc += 1;
        break;
      }
      case op::add:
      case op::sub:
      case op::mul:
      case op::mod: {
        if (stack.size() < 2) underflow(opcode, pc);
        Value b = std::move(stack.back());
        stack.pop_back();
        Value a = std::move(stack.back());
        stack.pop_back();
        stack.push_back(space.arith(arith_of(opcode), a, b));
        pc += 1;
        break;
      }
      default: {  // comparisons; validate() already rejected unknown opcodes
        if (stack.size() < 2) underflow(opcode, pc);
        Value b = std::move(stack.back());
        stack.pop_back();
        Value a = std::move(stack.back());
        stack.pop_back();
        stack.push_back(space.compare(compare_of(opcode), a, b));
        pc += 1;
        break;
      }
    }
  }
  return slots.render();
}

template <class Space, class Trace>
Env run_decoded_impl(const DecodedProgram& prog, Env env, const Space& space, Trace trace) {
  SlotEnv slots(prog.symbols(), env);
  std::vector<Value> stack;
  stack.reserve(16);
  const std::uint32_t len = prog.code_size();
  std::uint32_t pc = 0;

  while (pc < len) {
    const DecodedProgram::Entry& instr = prog.at(pc);
    trace.step(pc, stack.size());
    switch (instr.opcode) {
      case op::end:
        pc = len;
        break;
      case op::jump:
        pc = static_cast<std::uint32_t>(instr.arg);
        break;
      case op::jump_if_false:
      case op::jump_if_true: {
        if (stack.empty()) underflow(instr.opcode, pc);
        Value cond = std::move(stack.back());
        stack.pop_back();
        const bool taken = space.truthy(cond) == (instr.opcode == op::jump_if_true);
        pc = taken ? static_cast<std::uint32_t>(instr.arg) : pc + 5;
        break;
      }
      case op::push1:
        stack.push_back(space.make_int(instr.arg));
        pc += 2;
        break;
      case op::push4:
        stack.push_back(space.make_int(instr.arg));
        pc += 5;
        break;
      case op::load:
        stack.push_back(space.load_slot(slots, static_cast<std::uint32_t>(instr.arg)));
        pc += 5;
        break;
      case op::assign: {
        if (stack.empty()) underflow(instr.opcode, pc);
        space.store_slot(slots, static_cast<std::uint32_t>(instr.arg),
                         std::move(stack.back()));
        stack.pop_back();
        pc += 5;
        break;
      }
      case op::bool_not: {
        if (stack.empty()) underflow(instr.opcode, pc);
        stack.back() = space.bool_not(stack.back());
        pc += 1;
        break;
      }
      case op::add:
      case op::sub:
      case op::mul:
      case op::mod: {
        if (stack.size() < 2) underflow(instr.opcode, pc);
        Value b = std::move(stack.back());
        stack.pop_back();
        Value a = std::move(stack.back());
        stack.pop_back();
        stack.push_back(space.arith(arith_of(instr.opcode), a, b));
        pc += 1;
        break;
      }
      default: {
        if (stack.size() < 2) underflow(instr.opcode, pc);
        Value b = std::move(stack.back());
        stack.pop_back();
        Value a = std::move(stack.back());
        stack.pop_back();
        stack.push_back(space.compare(compare_of(instr.opcode), a, b));
        pc += 1;
        break;
      }
    }
  }
  return slots.render();
}

}  // namespace

DecodedProgram::DecodedProgram(const BytecodeImage& image) : symbols_(image.symbols) {
  validate(image);
  entries_.resize(image.code.size());
  for (const DecodedInstr& d : decode_all(image)) {
    entries_[d.offset] = Entry{d.opcode, true, d.arg};
    starts_.push_back(d.offset);
  }
}

DecodedProgram predecode(const BytecodeImage& image) { return DecodedProgram(image); }

Env run_linear(const BytecodeImage& image, Env env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    return run_linear_impl(image, std::move(env), InlineSpace{}, NoTrace{});
  }
  return run_linear(image, std::move(env), standard_object_space());
}

Env run_linear(const BytecodeImage& image, Env env, const ObjectSpaceIface& space) {
  return run_linear_impl(image, std::move(env), VirtualSpace{&space}, NoTrace{});
}

Env run_linear(const BytecodeImage& image, Env env, Boundary boundary, RunStats& stats) {
  if (boundary == Boundary::static_call) {
    return run_linear_impl(image, std::move(env), InlineSpace{}, StatsTrace{&stats});
  }
  return run_linear_impl(image, std::move(env), VirtualSpace{&standard_object_space()},
                         StatsTrace{&stats});
}

Env run_decoded(const DecodedProgram& prog, Env env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    return run_decoded_impl(prog, std::move(env), InlineSpace{}, NoTrace{});
  }
  return run_decoded(prog, std::move(env), standard_object_space());
}

Env run_decoded(const DecodedProgram& prog, Env env, const ObjectSpaceIface& space) {
  return run_decoded_impl(prog, std::move(env), VirtualSpace{&space}, NoTrace{});
}

Env run_decoded(const DecodedProgram& prog, Env env, Boundary boundary, RunStats& stats) {
  if (boundary == Boundary::static_call) {
    return run_decoded_impl(prog, std::move(env), InlineSpace{}, StatsTrace{&stats});
  }
  return run_decoded_impl(prog, std::move(env), VirtualSpace{&standard_object_space()},
                          StatsTrace{&stats});
}

Env run_linear_traced(const BytecodeImage& image, Env env,
                      std::vector<std::uint32_t>& visited) {
  return run_linear_impl(image, std::move(env), InlineSpace{}, OffsetTrace{&visited});
}

}  // namespace acol
