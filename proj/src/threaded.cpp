#include "acol/threaded.hpp"

#include <set>
#include <utility>

#include "acol/pretty.hpp"

namespace acol {
namespace {

// Builders thread the continuation backwards: the successor of a statement
// is built before the statement itself, so every node is created with its
// final successor id. Loop nodes are created first and wired up after their
// body exists, which creates the only cycles. Nodes are renumbered into
// visit order afterwards for readable dumps.

class AstGraphBuilder {
 public:
  ThreadedAstGraph finish(const StmtList& program) {
    NodeId end = add(ThreadedAstNode{TEnd{}});
    graph_.entry = build_list(program, end);
    return std::move(graph_);
  }

 private:
  NodeId add(ThreadedAstNode node) {
    graph_.nodes.push_back(std::move(node));
    return static_cast<NodeId>(graph_.nodes.size() - 1);
  }

  NodeId build_list(const StmtList& list, NodeId succ) {
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
      succ = build_stmt(*it, succ);
    }
    return succ;
  }

  NodeId build_stmt(const Stmt& s, NodeId succ) {
    return std::visit(
        overloaded{
            [&](const AssignStmt& a) {
              return add(ThreadedAstNode{TAssign{a.target, clone(*a.value), succ}});
            },
            [&](const IfStmt& i) {
              NodeId then_entry = build_list(i.then_body, succ);
              NodeId else_entry = build_list(i.else_body, succ);
              return add(ThreadedAstNode{TIf{clone(*i.cond), then_entry, else_entry}});
            },
            [&](const WhileStmt& w) {
              NodeId self = add(ThreadedAstNode{TWhile{clone(*w.cond), 0, 0}});
              NodeId body_entry = build_list(w.body, self);  // tail loops back
              auto& node = std::get<TWhile>(graph_.nodes[self].node);
              node.body = body_entry;
              node.exit = succ;
              return self;
            },
        },
        s.node);
  }

  ThreadedAstGraph graph_;
};

class BcGraphBuilder {
 public:
  ThreadedBcGraph finish(const StmtList& program) {
    NodeId end = add(ThreadedBcNode{BEnd{}});
    graph_.entry = build_list(program, end);
    return std::move(graph_);
  }

 private:
  NodeId add(ThreadedBcNode node) {
    graph_.nodes.push_back(std::move(node));
    return static_cast<NodeId>(graph_.nodes.size() - 1);
  }

  NodeId build_list(const StmtList& list, NodeId succ) {
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
      succ = build_stmt(*it, succ);
    }
    return succ;
  }

  NodeId build_stmt(const Stmt& s, NodeId succ) {
    return std::visit(
        overloaded{
            [&](const AssignStmt& a) {
              NodeId store = add(ThreadedBcNode{BStore{a.target, succ}});
              return build_expr(*a.value, store);
            },
            [&](const IfStmt& i) {
              NodeId then_entry = build_list(i.then_body, succ);
              NodeId else_entry = build_list(i.else_body, succ);
              NodeId branch = add(ThreadedBcNode{BIf{then_entry, else_entry}});
              return build_expr(*i.cond, branch);
            },
            [&](const WhileStmt& w) {
              NodeId branch = add(ThreadedBcNode{BIf{0, 0}});
              NodeId cond_entry = build_expr(*w.cond, branch);
              NodeId body_entry = build_list(w.body, cond_entry);  // back to the test
              auto& node = std::get<BIf>(graph_.nodes[branch].node);
              node.then_node = body_entry;
              node.else_node = succ;
              return cond_entry;
            },
        },
        s.node);
  }

  NodeId build_expr(const Expr& e, NodeId succ) {
    return std::visit(
        overloaded{
            [&](const IntLit& n) { return add(ThreadedBcNode{BPush{n.value, succ}}); },
            [&](const VarRef& v) { return add(ThreadedBcNode{BLoad{v.name, succ}}); },
            [&](const BinExpr& b) {
              NodeId opnode = is_comparison(b.op)
                                  ? add(ThreadedBcNode{BCompare{to_compare(b.op), succ}})
                                  : add(ThreadedBcNode{BArith{to_arith(b.op), succ}});
              NodeId rhs_entry = build_expr(*b.rhs, opnode);
              return build_expr(*b.lhs, rhs_entry);
            },
            [&](const NotExpr& n) {
              NodeId notnode = add(ThreadedBcNode{BNot{succ}});
              return build_expr(*n.operand, notnode);
            },
        },
        e.node);
  }

  ThreadedBcGraph graph_;
};

// Successor ids of a node, in dump order.
std::vector<NodeId*> successors(ThreadedAstNode& n) {
  return std::visit(overloaded{
                        [](TAssign& a) { return std::vector<NodeId*>{&a.next}; },
                        [](TIf& i) { return std::vector<NodeId*>{&i.then_node, &i.else_node}; },
                        [](TWhile& w) { return std::vector<NodeId*>{&w.body, &w.exit}; },
                        [](TEnd&) { return std::vector<NodeId*>{}; },
                    },
                    n.node);
}

std::vector<NodeId*> successors(ThreadedBcNode& n) {
  return std::visit(
      overloaded{
          [](BPush& x) { return std::vector<NodeId*>{&x.next}; },
          [](BLoad& x) { return std::vector<NodeId*>{&x.next}; },
          [](BStore& x) { return std::vector<NodeId*>{&x.next}; },
          [](BArith& x) { return std::vector<NodeId*>{&x.next}; },
          [](BCompare& x) { return std::vector<NodeId*>{&x.next}; },
          [](BNot& x) { return std::vector<NodeId*>{&x.next}; },
          [](BIf& x) { return std::vector<NodeId*>{&x.then_node, &x.else_node}; },
          [](BEnd&) { return std::vector<NodeId*>{}; },
      },
      n.node);
}

// Relabels nodes into depth-first visit order from the entry.
template <class Graph>
void renumber(Graph& g) {
  constexpr NodeId kUnvisited = ~NodeId{0};
  std::vector<NodeId> remap(g.nodes.size(), kUnvisited);
  std::vector<NodeId> order;
  std::vector<NodeId> stack{g.entry};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (remap[id] != kUnvisited) continue;
    remap[id] = static_cast<NodeId>(order.size());
    order.push_back(id);
    auto succ = successors(g.nodes[id]);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) stack.push_back(**it);
  }
  decltype(g.nodes) renumbered(order.size());
  for (NodeId old_id : order) {
    for (NodeId* field : successors(g.nodes[old_id])) *field = remap[*field];
    renumbered[remap[old_id]] = std::move(g.nodes[old_id]);
  }
  g.nodes = std::move(renumbered);
  g.entry = remap[g.entry];
}

template <class Node>
std::vector<NodeId> successor_ids(const Node& n) {
  std::vector<NodeId> out;
  for (NodeId* field : successors(const_cast<Node&>(n))) out.push_back(*field);
  return out;
}

// Back edges (the loop cycles) via a coloring walk from the entry.
template <class Graph>
std::set<std::pair<NodeId, NodeId>> back_edges(const Graph& g) {
  enum Color : std::uint8_t { white, gray, black };
  std::vector<Color> color(g.nodes.size(), white);
  std::set<std::pair<NodeId, NodeId>> result;

  struct Frame {
    NodeId id;
    std::size_t next_child;
  };
  std::vector<Frame> stack{{g.entry, 0}};
  color[g.entry] = gray;
  while (!stack.empty()) {
    Frame& frame = stack.back();
    auto succ = successor_ids(g.nodes[frame.id]);
    if (frame.next_child >= succ.size()) {
      color[frame.id] = black;
      stack.pop_back();
      continue;
    }
    NodeId child = succ[frame.next_child++];
    if (color[child] == gray) {
      result.insert({frame.id, child});
    } else if (color[child] == white) {
      color[child] = gray;
      stack.push_back({child, 0});
    }
  }
  return result;
}

std::string ref(NodeId id, NodeId from, const std::set<std::pair<NodeId, NodeId>>& back) {
  std::string s = "n" + std::to_string(id);
  if (back.count({from, id})) s += "^";
  return s;
}

}  // namespace

ThreadedAstGraph build_threaded_ast(const StmtList& program) {
  ThreadedAstGraph g = AstGraphBuilder().finish(program);
  renumber(g);
  return g;
}

ThreadedBcGraph build_threaded_bc(const StmtList& program) {
  ThreadedBcGraph g = BcGraphBuilder().finish(program);
  renumber(g);
  return g;
}

std::string dump_threaded(const ThreadedAstGraph& g) {
  auto back = back_edges(g);
  std::string out = "entry: n" + std::to_string(g.entry) + "\n";
  for (NodeId id = 0; id < g.nodes.size(); ++id) {
    out += "n" + std::to_string(id) + ": ";
    std::visit(overloaded{
                   [&](const TAssign& a) {
                     out += "assign " + a.target + " = " + expr_to_string(*a.value) + " -> " +
                            ref(a.next, id, back);
                   },
                   [&](const TIf& i) {
                     out += "if (" + expr_to_string(*i.cond) + ") then=" +
                            ref(i.then_node, id, back) + " else=" + ref(i.else_node, id, back);
                   },
                   [&](const TWhile& w) {
                     out += "while (" + expr_to_string(*w.cond) + ") body=" +
                            ref(w.body, id, back) + " exit=" + ref(w.exit, id, back);
                   },
                   [&](const TEnd&) { out += "end"; },
               },
               g.nodes[id].node);
    out += '\n';
  }
  return out;
}

std::string dump_threaded(const ThreadedBcGraph& g) {
  auto back = back_edges(g);
  std::string out = "entry: n" + std::to_string(g.entry) + "\n";
  for (NodeId id = 0; id < g.nodes.size(); ++id) {
    out += "n" + std::to_string(id) + ": ";
    std::visit(overloaded{
                   [&](const BPush& x) {
                     out += "push " + std::to_string(x.value) + " -> " + ref(x.next, id, back);
                   },
                   [&](const BLoad& x) { out += "load " + x.var + " -> " + ref(x.next, id, back); },
                   [&](const BStore& x) {
                     out += "store " + x.var + " -> " + ref(x.next, id, back);
                   },
                   [&](const BArith& x) {
                     out += std::string(to_string(x.op)) + " -> " + ref(x.next, id, back);
                   },
                   [&](const BCompare& x) {
                     out += std::string(to_string(x.op)) + " -> " + ref(x.next, id, back);
                   },
                   [&](const BNot& x) { out += "not -> " + ref(x.next, id, back); },
                   [&](const BIf& x) {
                     out += "if then=" + ref(x.then_node, id, back) +
                            " else=" + ref(x.else_node, id, back);
                   },
                   [&](const BEnd&) { out += "end"; },
               },
               g.nodes[id].node);
    out += '\n';
  }
  return out;
}

}  // namespace acol
