#pragma once

#include "acol/object_space.hpp"
#include "acol/threaded.hpp"

namespace acol {

/// Executes an AST-flavor graph by chasing successor references: the edge is
/// the continuation, so no statement return stack exists and host memory is
/// bounded by expression depth regardless of loop counts. Expressions are
/// evaluated recursively through the shared object space.
Env run_threaded_ast(const ThreadedAstGraph& g, Env env,
                     Boundary boundary = Boundary::static_call);
Env run_threaded_ast(const ThreadedAstGraph& g, Env env, const ObjectSpaceIface& space);

/// Executes a bytecode-flavor graph with an explicit value stack; IfOp nodes
/// pop the condition and pick the successor.
Env run_threaded_bc(const ThreadedBcGraph& g, Env env,
                    Boundary boundary = Boundary::static_call);
Env run_threaded_bc(const ThreadedBcGraph& g, Env env, const ObjectSpaceIface& space);

}  // namespace acol
