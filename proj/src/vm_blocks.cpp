#include "acol/vm_blocks.hpp"

#include <utility>

#include "acol/bytecode.hpp"
#include "acol/errors.hpp"

namespace acol {
namespace {

[[noreturn]] void underflow(std::uint8_t opcode) {
  throw StackUnderflow("stack underflow on opcode " + std::to_string(opcode));
}

template <class Space>
class BlockRunner {
 public:
  BlockRunner(const BlockProgram& prog, const Space& space) : prog_(prog), space_(space) {}

  void run_seq(const BlockSeq& seq, Env& env, std::vector<Value>& stack) {
    for (const BlockInstr& instr : seq) {
      switch (instr.opcode) {
        case blockop::branch: {
          if (stack.empty()) underflow(instr.opcode);
          Value cond = std::move(stack.back());
          stack.pop_back();
          const auto& ids = std::get<std::pair<std::uint32_t, std::uint32_t>>(instr.arg);
          const BlockSeq& chosen = block(space_.truthy(cond) ? ids.first : ids.second);
          std::vector<Value> fresh;
          run_seq(chosen, env, fresh);  // result stack is discarded
          break;
        }
        case blockop::loop: {
          const auto& ids = std::get<std::pair<std::uint32_t, std::uint32_t>>(instr.arg);
          const BlockSeq& cond_block = block(ids.first);
          const BlockSeq& body_block = block(ids.second);
          for (;;) {
            std::vector<Value> cond_stack;
            run_seq(cond_block, env, cond_stack);
            if (cond_stack.size() != 1) {
              throw ConditionArity("condition block " + std::to_string(ids.first) +
                                   " left " + std::to_string(cond_stack.size()) +
                                   " values on the stack");
            }
            if (!space_.truthy(cond_stack.back())) break;
            std::vector<Value> body_stack;
            run_seq(body_block, env, body_stack);
          }
          break;
        }
        case op::push1:
        case op::push4:
          stack.push_back(space_.make_int(std::get<std::int32_t>(instr.arg)));
          break;
        case op::load:
          stack.push_back(space_.lookup(env, std::get<std::string>(instr.arg)));
          break;
        case op::assign: {
          if (stack.empty()) underflow(instr.opcode);
          space_.store(env, std::get<std::string>(instr.arg), std::move(stack.back()));
          stack.pop_back();
          break;
        }
        case op::bool_not: {
          if (stack.empty()) underflow(instr.opcode);
          stack.back() = space_.bool_not(stack.back());
          break;
        }
        case op::add:
        case op::sub:
        case op::mul:
        case op::mod: {
          binary(stack, instr.opcode, true);
          break;
        }
        default: {  // comparisons; validate_blocks rejected everything else
          binary(stack, instr.opcode, false);
          break;
        }
      }
    }
  }

 private:
  const BlockSeq& block(std::uint32_t id) const {
    if (id >= prog_.blocks.size()) throw UnknownBlockId(id);
    return prog_.blocks[id];
  }

  void binary(std::vector<Value>& stack, std::uint8_t opcode, bool arith) {
    if (stack.size() < 2) underflow(opcode);
    Value b = std::move(stack.back());
    stack.pop_back();
    Value a = std::move(stack.back());
    stack.pop_back();
    if (arith) {
      ArithOp aop = opcode == op::add   ? ArithOp::add
                    : opcode == op::sub ? ArithOp::sub
                    : opcode == op::mul ? ArithOp::mul
                                        : ArithOp::mod;
      stack.push_back(space_.arith(aop, a, b));
    } else {
      CompareOp cop = opcode == op::lt   ? CompareOp::lt
                      : opcode == op::le ? CompareOp::le
                      : opcode == op::gt ? CompareOp::gt
                      : opcode == op::ge ? CompareOp::ge
                                         : CompareOp::eq;
      stack.push_back(space_.compare(cop, a, b));
    }
  }

  const BlockProgram& prog_;
  const Space& space_;
};

template <class Space>
Env run_blocks_impl(const BlockProgram& prog, Env env, const Space& space) {
  validate_blocks(prog);
  std::vector<Value> stack;
  BlockRunner<Space>(prog, space).run_seq(prog.main, env, stack);
  return env;
}

}  // namespace

Env run_blocks(const BlockProgram& prog, Env env, Boundary boundary) {
  if (boundary == Boundary::static_call) {
    InlineSpace space;
    return run_blocks_impl(prog, std::move(env), space);
  }
  return run_blocks(prog, std::move(env), standard_object_space());
}

Env run_blocks(const BlockProgram& prog, Env env, const ObjectSpaceIface& space) {
  VirtualSpace vspace{&space};
  return run_blocks_impl(prog, std::move(env), vspace);
}

}  // namespace acol
