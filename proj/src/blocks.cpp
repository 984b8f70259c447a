#include "acol/blocks.hpp"

#include <set>

#include "acol/bytecode.hpp"
#include "acol/errors.hpp"

namespace acol {
namespace {

class BlockEmitter {
 public:
  BlockProgram finish(const StmtList& program) {
    emit_stmts(program, prog_.main);
    return std::move(prog_);
  }

 private:
  std::uint32_t reserve_block() {
    prog_.blocks.emplace_back();
    return static_cast<std::uint32_t>(prog_.blocks.size() - 1);
  }

  void emit_stmts(const StmtList& list, BlockSeq& out) {
    for (const Stmt& s : list) {
      std::visit(overloaded{
                     [&](const AssignStmt& a) {
                       emit_expr(*a.value, out);
                       out.push_back({op::assign, a.target});
                     },
                     [&](const IfStmt& i) {
                       emit_expr(*i.cond, out);
                       std::uint32_t then_id = reserve_block();
                       std::uint32_t else_id = reserve_block();
                       out.push_back({blockop::branch, std::make_pair(then_id, else_id)});
                       // Fill after reserving so nested blocks number later.
                       BlockSeq then_seq;
                       emit_stmts(i.then_body, then_seq);
                       prog_.blocks[then_id] = std::move(then_seq);
                       BlockSeq else_seq;
                       emit_stmts(i.else_body, else_seq);
                       prog_.blocks[else_id] = std::move(else_seq);
                     },
                     [&](const WhileStmt& w) {
                       std::uint32_t cond_id = reserve_block();
                       std::uint32_t body_id = reserve_block();
                       out.push_back({blockop::loop, std::make_pair(cond_id, body_id)});
                       BlockSeq cond_seq;
                       emit_expr(*w.cond, cond_seq);
                       prog_.blocks[cond_id] = std::move(cond_seq);
                       BlockSeq body_seq;
                       emit_stmts(w.body, body_seq);
                       prog_.blocks[body_id] = std::move(body_seq);
                     },
                 },
                 s.node);
    }
  }

  void emit_expr(const Expr& e, BlockSeq& out) {
    std::visit(overloaded{
                   [&](const IntLit& n) {
                     std::uint8_t opcode =
                         (n.value >= -128 && n.value <= 127) ? op::push1 : op::push4;
                     out.push_back({opcode, n.value});
                   },
                   [&](const VarRef& v) { out.push_back({op::load, v.name}); },
                   [&](const BinExpr& b) {
                     emit_expr(*b.lhs, out);
                     emit_expr(*b.rhs, out);
                     out.push_back({opcode_for(b.op), std::monostate{}});
                   },
                   [&](const NotExpr& n) {
                     emit_expr(*n.operand, out);
                     out.push_back({op::bool_not, std::monostate{}});
                   },
               },
               e.node);
  }

  static std::uint8_t opcode_for(BinOpKind kind) {
    switch (kind) {
      case BinOpKind::add: return op::add;
      case BinOpKind::sub: return op::sub;
      case BinOpKind::mul: return op::mul;
      case BinOpKind::mod: return op::mod;
      case BinOpKind::lt: return op::lt;
      case BinOpKind::le: return op::le;
      case BinOpKind::gt: return op::gt;
      case BinOpKind::ge: return op::ge;
      case BinOpKind::eq: return op::eq;
    }
    throw Error("unreachable operator");
  }

  BlockProgram prog_;
};

int stack_delta(std::uint8_t opcode) {
  switch (opcode) {
    case op::push1:
    case op::push4:
    case op::load:
      return 1;
    case op::assign:
    case blockop::branch:
      return -1;
    case op::bool_not:
    case blockop::loop:
      return 0;
    default:
      return -1;  // binary ops: pop two, push one
  }
}

bool valid_block_opcode(std::uint8_t opcode) {
  switch (opcode) {
    case blockop::branch:
    case blockop::loop:
    case op::push1:
    case op::push4:
    case op::load:
    case op::assign:
    case op::bool_not:
    case op::mod:
    case op::mul:
    case op::sub:
    case op::add:
    case op::eq:
    case op::le:
    case op::lt:
    case op::ge:
    case op::gt:
      return true;
    default:
      return false;  // notably: no jump opcodes, no end sentinel
  }
}

bool pure_expression_opcode(std::uint8_t opcode) {
  return valid_block_opcode(opcode) && opcode != blockop::branch && opcode != blockop::loop &&
         opcode != op::assign;
}

}  // namespace

BlockProgram compile_blocks(const StmtList& program) {
  return BlockEmitter().finish(program);
}

void validate_blocks(const BlockProgram& prog) {
  const std::uint32_t nblocks = static_cast<std::uint32_t>(prog.blocks.size());
  std::set<std::uint32_t> condition_ids;

  auto check_seq = [&](const BlockSeq& seq) {
    for (const BlockInstr& instr : seq) {
      if (!valid_block_opcode(instr.opcode)) {
        throw InvalidBlockProgram("opcode " + std::to_string(instr.opcode) +
                                  " is not valid inside a block");
      }
      if (instr.opcode == blockop::branch || instr.opcode == blockop::loop) {
        auto [a, b] = std::get<std::pair<std::uint32_t, std::uint32_t>>(instr.arg);
        if (a >= nblocks) throw UnknownBlockId(a);
        if (b >= nblocks) throw UnknownBlockId(b);
        if (instr.opcode == blockop::loop) condition_ids.insert(a);
      }
    }
  };

  check_seq(prog.main);
  for (const BlockSeq& seq : prog.blocks) check_seq(seq);

  // Condition blocks must be env-preserving expressions that grow a fresh
  // stack by exactly one value.
  for (std::uint32_t id : condition_ids) {
    int depth = 0;
    for (const BlockInstr& instr : prog.blocks[id]) {
      if (!pure_expression_opcode(instr.opcode)) {
        throw InvalidBlockProgram("opcode " + std::to_string(instr.opcode) +
                                  " is not allowed in condition block " + std::to_string(id));
      }
      depth += stack_delta(instr.opcode);
    }
    if (depth != 1) {
      throw InvalidBlockProgram("condition block " + std::to_string(id) +
                                " has stack effect " + std::to_string(depth));
    }
  }
}

std::vector<std::string> flatten(const BlockSeq& seq) {
  std::vector<std::string> out;
  for (const BlockInstr& instr : seq) {
    out.push_back(std::to_string(instr.opcode));
    std::visit(overloaded{
                   [](const std::monostate&) {},
                   [&](std::int32_t v) { out.push_back(std::to_string(v)); },
                   [&](const std::string& name) { out.push_back(name); },
                   [&](const std::pair<std::uint32_t, std::uint32_t>& ids) {
                     out.push_back(std::to_string(ids.first));
                     out.push_back(std::to_string(ids.second));
                   },
               },
               instr.arg);
  }
  return out;
}

namespace {

std::string render_seq(const BlockSeq& seq) {
  std::string out = "[";
  bool first = true;
  for (const std::string& token : flatten(seq)) {
    if (!first) out += ", ";
    out += token;
    first = false;
  }
  out += "]";
  return out;
}

}  // namespace

std::string dump_blocks(const BlockProgram& prog) {
  std::string out = "main: " + render_seq(prog.main) + "\n";
  for (std::size_t id = 0; id < prog.blocks.size(); ++id) {
    out += "block " + std::to_string(id) + ": " + render_seq(prog.blocks[id]) + "\n";
  }
  return out;
}

}  // namespace acol
