#pragma once

#include "acol/blocks.hpp"
#include "acol/object_space.hpp"

namespace acol {

/// Block-wise interpreter. Runs the main sequence forward; a branch opcode
/// pops its already-computed condition and executes the chosen block on a
/// fresh stack; a loop opcode alternates its condition block (fresh stack,
/// must leave exactly one boolean) and its body block until the condition
/// fails. Sub-block stacks are discarded; only the environment survives.
/// Loop iteration happens in a host loop, so call depth tracks program
/// nesting, never iteration count. Validates the program on entry.
Env run_blocks(const BlockProgram& prog, Env env, Boundary boundary = Boundary::static_call);
Env run_blocks(const BlockProgram& prog, Env env, const ObjectSpaceIface& space);

}  // namespace acol
