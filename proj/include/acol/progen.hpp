#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acol/ast.hpp"
#include "acol/object_space.hpp"

namespace acol {

/// SplitMix64. Fixed, portable recurrence so generated corpora reproduce
/// across implementations (host-library RNGs are deliberately not used):
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
///
/// below(n) maps an output to [0, n) by taking the high 64 bits of the
/// 128-bit product output * n.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

struct GenConfig {
  std::uint64_t seed = 1;
  int stmts_min = 20;
  int stmts_max = 50;
  int depth_cap = 3;    // blocks nested this deep contain only assignments
  int loop_iters = 20;  // every loop body runs exactly this many times per entry
  int expr_depth = 3;   // depth budget for generated expression trees
};

struct GeneratedProgram {
  StmtList program;
  Env initial_env;  // the five expression identifiers, all bound to 0
};

// The five identifiers expression trees draw from.
const std::vector<std::string>& gen_identifiers();

/// Generates a random program: block lengths uniform in
/// [stmts_min, stmts_max]; statement kind uniform over assign/if/while above
/// the depth cap, assignments only at or below it. Every while statement is
/// preceded by a reset of a reserved counter (`_lc<N>`, disjoint from the
/// expression identifiers), starts its body by incrementing it, and is
/// guarded by `counter < loop_iters`. Expressions use the five identifiers,
/// constants -1..3, additions and subtractions only; conditions carry exactly
/// one comparison, at the root. Deterministic in the config.
GeneratedProgram generate(const GenConfig& cfg);

// One expression tree as generate() builds them; exposed for distribution
// tests. Condition trees have a comparison at the root and arithmetic
// children; arithmetic trees contain no comparison at all.
ExprPtr gen_expr_tree(SplitMix64& rng, int budget, bool condition);

}  // namespace acol
