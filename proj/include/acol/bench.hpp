#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acol/ast.hpp"
#include "acol/blocks.hpp"
#include "acol/bytecode.hpp"
#include "acol/object_space.hpp"
#include "acol/progen.hpp"
#include "acol/threaded.hpp"
#include "acol/vm_linear.hpp"

namespace acol {

enum class BackendKind { ast, linear, decoded, blocks, threaded_ast, threaded_bc };

std::string_view to_string(BackendKind backend);
std::optional<BackendKind> parse_backend(std::string_view name);
std::optional<Boundary> parse_boundary(std::string_view name);
const std::vector<BackendKind>& all_backends();

/// Every representation of one program, compiled once up front so timed runs
/// never include translation work.
class PreparedProgram {
 public:
  explicit PreparedProgram(const StmtList& program);

  StmtList ast;
  BytecodeImage image;
  DecodedProgram decoded;
  BlockProgram blocks;
  ThreadedAstGraph threaded_ast;
  ThreadedBcGraph threaded_bc;
};

Env execute(BackendKind backend, const PreparedProgram& prog, Env initial, Boundary boundary);
Env execute(BackendKind backend, const PreparedProgram& prog, Env initial,
            const ObjectSpaceIface& space);

// "name: expected X, got Y" for the first differing variable, or nullopt.
std::optional<std::string> first_env_divergence(const Env& expected, const Env& actual);

// ---------------------------------------------------------------------------
// Statistics (0.95 confidence, Student-t on log-runtimes)

double geometric_mean(std::span<const double> samples);

// Multiplicative 0.95 interval around the geometric mean, reported as
// +/- seconds: (upper - lower) / 2. Exactly zero for zero-variance samples.
// Throws InsufficientSamples for fewer than two samples.
double geo_ci_half_width(std::span<const double> samples);

// Geometric mean of samples[i]/base[i] when the counts match (pairing keeps
// a common scale factor cancelling exactly), otherwise the ratio of the two
// geometric means.
double normalized_ratio(std::span<const double> samples, std::span<const double> base);

double student_t_975(std::size_t degrees_of_freedom);

// ---------------------------------------------------------------------------
// Benchmark cases and runs

struct BenchCase {
  std::string name;
  StmtList program;
  Env initial_env;
};

// prime, fib, fib_mod, generated1..3. The generated seeds default to 1,2,3;
// the ACOL_SEED_DEFAULTS environment variable ("s1,s2,s3") overrides them.
const std::vector<std::string>& builtin_case_names();

/// Builds a named case; `scale` overrides its size parameter (prime: V,
/// fib/fib_mod: n, generated: the loop iteration bound).
BenchCase make_case(std::string_view name, std::optional<std::int64_t> scale = std::nullopt);

/// Compiles, runs one untimed warmup, then `reps` timed runs from fresh
/// copies of the initial environment. Every run's final environment is
/// checked against the reference backend's before its sample is accepted;
/// a mismatch raises BackendMismatch. reps == 0 executes nothing.
std::vector<double> run_case(const BenchCase& bench_case, BackendKind backend,
                             Boundary boundary, int reps);

struct BenchOptions {
  std::vector<std::string> cases;                   // empty: all builtin
  std::vector<BackendKind> backends;                // empty: all
  std::vector<Boundary> boundaries;                 // empty: both
  int reps = 10;
  std::optional<std::int64_t> scale;
  std::optional<BackendKind> inject_fault;          // corrupts that backend's result
};

struct BenchCell {
  std::string case_name;
  BackendKind backend = BackendKind::ast;
  Boundary boundary = Boundary::static_call;
  std::vector<double> samples;
  std::optional<double> mean;
  std::optional<double> ci_half_width;
  std::optional<double> ratio;  // vs the ast backend at the same boundary
};

struct BenchAggregate {
  BackendKind backend = BackendKind::ast;
  Boundary boundary = Boundary::static_call;
  double ratio = 1.0;  // geometric mean of per-case ratios
};

struct BenchReport {
  std::vector<BenchCell> cells;
  std::vector<BenchAggregate> aggregates;
  int reps = 0;
};

/// Runs all requested cells strictly sequentially and summarizes them.
BenchReport run_benchmarks(const BenchOptions& options);

// Fills means, intervals, per-case ratios and cross-case aggregates from the
// cells' raw samples.
void summarize(BenchReport& report);

std::string render_table(const BenchReport& report);
std::string render_records(const BenchReport& report);  // JSON lines

// ---------------------------------------------------------------------------
// Differential driver

struct DiffOptions {
  std::uint64_t seed_lo = 1;
  std::uint64_t seed_hi = 100;  // inclusive; lo > hi means an empty range
  // Differential runs default to a lighter generator shape than the
  // benchmark recipe so wide seed sweeps stay fast.
  GenConfig generator{.seed = 0, .depth_cap = 2, .loop_iters = 5};
  std::vector<BackendKind> backends;  // empty: all
  Boundary boundary = Boundary::static_call;
  int reps_per_seed = 1;
  std::optional<BackendKind> inject_fault;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct DiffDivergence {
  std::uint64_t seed = 0;
  BackendKind backend = BackendKind::ast;
  std::string detail;
};

struct DiffResult {
  std::uint64_t seeds_total = 0;
  std::uint64_t seeds_equivalent = 0;
  std::optional<DiffDivergence> first_divergence;  // lowest seed
  bool ok() const { return !first_divergence.has_value(); }
};

DiffResult run_differential(const DiffOptions& options);

}  // namespace acol
