#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "acol/object_space.hpp"

namespace acol {

// Expression operators. Comparisons are non-associative in the grammar:
// a comparison expression contains exactly one of them.
enum class BinOpKind : std::uint8_t { add, sub, mul, mod, lt, le, gt, ge, eq };

constexpr bool is_comparison(BinOpKind op) { return op >= BinOpKind::lt; }

ArithOp to_arith(BinOpKind op);
CompareOp to_compare(BinOpKind op);
std::string_view op_symbol(BinOpKind op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// Literals are bounded to the signed 32-bit range; runtime values are not.
struct IntLit {
  std::int32_t value;
};

struct VarRef {
  std::string name;
};

struct BinExpr {
  BinOpKind op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct NotExpr {
  ExprPtr operand;
};

struct Expr {
  std::variant<IntLit, VarRef, BinExpr, NotExpr> node;
};

struct Stmt;
using StmtList = std::vector<Stmt>;

struct AssignStmt {
  std::string target;
  ExprPtr value;
};

// An omitted else branch is an empty list.
struct IfStmt {
  ExprPtr cond;
  StmtList then_body;
  StmtList else_body;
};

struct WhileStmt {
  ExprPtr cond;
  StmtList body;
};

struct Stmt {
  std::variant<AssignStmt, IfStmt, WhileStmt> node;
};

// Construction helpers.
ExprPtr make_int(std::int32_t value);
ExprPtr make_var(std::string name);
ExprPtr make_bin(BinOpKind op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_not(ExprPtr operand);
Stmt make_assign(std::string target, ExprPtr value);
Stmt make_if(ExprPtr cond, StmtList then_body, StmtList else_body);
Stmt make_while(ExprPtr cond, StmtList body);

ExprPtr clone(const Expr& e);
Stmt clone(const Stmt& s);
StmtList clone(const StmtList& program);

bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const StmtList& a, const StmtList& b);

// Height of an expression tree; leaves count 1. Bounds the evaluation-stack
// depth a compiled expression can ever need.
std::size_t expr_depth(const Expr& e);
std::size_t max_expr_depth(const StmtList& program);

// Total number of statement and expression nodes.
std::size_t ast_size(const StmtList& program);

// Handy for std::visit.
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace acol
