#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "acol/ast.hpp"

namespace acol {

using NodeId = std::uint32_t;

// ---------------------------------------------------------------------------
// AST flavor: statement nodes threaded by successor references. A loop is the
// only cycle: the body's tail points back at its loop node, which realises
// the infinite unrolling of the program in a finite graph.

struct TAssign {
  std::string target;
  ExprPtr value;
  NodeId next;
};

struct TIf {
  ExprPtr cond;
  NodeId then_node;
  NodeId else_node;  // both branch tails share the statement's successor
};

struct TWhile {
  ExprPtr cond;
  NodeId body;  // body tail points back here
  NodeId exit;
};

struct TEnd {};

struct ThreadedAstNode {
  std::variant<TAssign, TIf, TWhile, TEnd> node;
};

struct ThreadedAstGraph {
  std::vector<ThreadedAstNode> nodes;
  NodeId entry = 0;
};

ThreadedAstGraph build_threaded_ast(const StmtList& program);

// ---------------------------------------------------------------------------
// Bytecode flavor: expressions are flattened into push/load/op chains over an
// explicit value stack; branching happens at IfOp nodes. Loops cycle back to
// the first node of their condition chain.

struct BPush {
  std::int32_t value;
  NodeId next;
};

struct BLoad {
  std::string var;
  NodeId next;
};

struct BStore {
  std::string var;
  NodeId next;
};

struct BArith {
  ArithOp op;
  NodeId next;
};

struct BCompare {
  CompareOp op;
  NodeId next;
};

struct BNot {
  NodeId next;
};

struct BIf {
  NodeId then_node;
  NodeId else_node;
};

struct BEnd {};

struct ThreadedBcNode {
  std::variant<BPush, BLoad, BStore, BArith, BCompare, BNot, BIf, BEnd> node;
};

struct ThreadedBcGraph {
  std::vector<ThreadedBcNode> nodes;
  NodeId entry = 0;
};

ThreadedBcGraph build_threaded_bc(const StmtList& program);

// Debug renderings: one line per node; references to already-printed nodes
// (the loop cycles) are marked with "^".
std::string dump_threaded(const ThreadedAstGraph& g);
std::string dump_threaded(const ThreadedBcGraph& g);

}  // namespace acol
