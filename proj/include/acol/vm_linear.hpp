#pragma once

#include <cstdint>
#include <vector>

#include "acol/bytecode.hpp"
#include "acol/object_space.hpp"

namespace acol {

/// Pre-decoded program: a constant-time map from byte offset to decoded
/// instruction, built once from the image. Variable ids double as slot
/// indices; integer and target arguments are decoded to native values.
class DecodedProgram {
 public:
  explicit DecodedProgram(const BytecodeImage& image);

  struct Entry {
    std::uint8_t opcode = op::end;
    bool valid = false;
    std::int64_t arg = 0;
  };

  const Entry& at(std::uint32_t offset) const { return entries_[offset]; }
  std::uint32_t code_size() const { return static_cast<std::uint32_t>(entries_.size()); }
  const SymbolTable& symbols() const { return symbols_; }

  // Offsets of all instruction starts (the key set of the map).
  const std::vector<std::uint32_t>& instruction_starts() const { return starts_; }

 private:
  std::vector<Entry> entries_;  // dense, indexed by byte offset; gaps invalid
  std::vector<std::uint32_t> starts_;
  SymbolTable symbols_;
};

DecodedProgram predecode(const BytecodeImage& image);

struct RunStats {
  std::uint64_t instructions = 0;
  std::size_t max_stack_depth = 0;
};

/// Switch-dispatched VM over the raw byte array. Validates the image, seeds
/// the slot environment from `env` by name, executes, and renders the final
/// slots back to a name-keyed environment.
Env run_linear(const BytecodeImage& image, Env env,
               Boundary boundary = Boundary::static_call);
Env run_linear(const BytecodeImage& image, Env env, const ObjectSpaceIface& space);
Env run_linear(const BytecodeImage& image, Env env, Boundary boundary, RunStats& stats);

/// Same observable behavior as run_linear, dispatching on the pre-decoded
/// form instead of raw bytes.
Env run_decoded(const DecodedProgram& prog, Env env,
                Boundary boundary = Boundary::static_call);
Env run_decoded(const DecodedProgram& prog, Env env, const ObjectSpaceIface& space);
Env run_decoded(const DecodedProgram& prog, Env env, Boundary boundary, RunStats& stats);

// Visited-offset trace of a linear run, for inspection in tests.
Env run_linear_traced(const BytecodeImage& image, Env env,
                      std::vector<std::uint32_t>& visited);

}  // namespace acol
