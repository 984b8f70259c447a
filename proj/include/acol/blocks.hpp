#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "acol/ast.hpp"

namespace acol {

// Special opcodes that only exist inside block programs.
namespace blockop {
inline constexpr std::uint8_t branch = 1;  // args: then-block id, else-block id
inline constexpr std::uint8_t loop = 2;    // args: condition-block id, body-block id
}  // namespace blockop

// One decoded instruction of a block program. Arguments are decoded values:
// integers for pushes, variable names for load/assign, a block-id pair for
// the two special opcodes, nothing otherwise.
struct BlockInstr {
  std::uint8_t opcode;
  std::variant<std::monostate, std::int32_t, std::string,
               std::pair<std::uint32_t, std::uint32_t>>
      arg;

  friend bool operator==(const BlockInstr&, const BlockInstr&) = default;
};

using BlockSeq = std::vector<BlockInstr>;

/// Program as a main sequence plus a table of sub-blocks. Loops and branches
/// never jump; they reference the blocks for their condition/body/branches
/// by id, and execution within any block only moves forward.
struct BlockProgram {
  BlockSeq main;
  std::vector<BlockSeq> blocks;

  friend bool operator==(const BlockProgram&, const BlockProgram&) = default;
};

/// Statements compile inline; every while allocates fresh ids for its
/// condition block and body block (in that order), every if for its then and
/// else blocks. Ids are assigned eagerly, so a statement's own blocks get
/// adjacent ids ahead of any nested ones.
BlockProgram compile_blocks(const StmtList& program);

/// Structural checks: every referenced block id exists, blocks contain only
/// known opcodes, and condition blocks (referenced by a loop opcode) are
/// pure expressions: no specials, no assign, net stack effect exactly +1.
/// Throws InvalidBlockProgram / UnknownBlockId.
void validate_blocks(const BlockProgram& prog);

// Flat token rendering of one sequence, e.g. {"20","1","45","val","2","0","1"}.
std::vector<std::string> flatten(const BlockSeq& seq);

// Multi-line dump: the main sequence followed by the numbered blocks.
std::string dump_blocks(const BlockProgram& prog);

}  // namespace acol
