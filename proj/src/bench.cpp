#include "acol/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "acol/backend_ast.hpp"
#include "acol/errors.hpp"
#include "acol/parser.hpp"
#include "acol/vm_blocks.hpp"
#include "acol/vm_threaded.hpp"

namespace acol {

std::string_view to_string(BackendKind backend) {
  switch (backend) {
    case BackendKind::ast: return "ast";
    case BackendKind::linear: return "linear";
    case BackendKind::decoded: return "decoded";
    case BackendKind::blocks: return "blocks";
    case BackendKind::threaded_ast: return "threaded-ast";
    case BackendKind::threaded_bc: return "threaded-bc";
  }
  return "?";
}

std::optional<BackendKind> parse_backend(std::string_view name) {
  for (BackendKind backend : all_backends()) {
    if (name == to_string(backend)) return backend;
  }
  return std::nullopt;
}

std::optional<Boundary> parse_boundary(std::string_view name) {
  if (name == "static") return Boundary::static_call;
  if (name == "dynamic") return Boundary::dynamic_call;
  return std::nullopt;
}

const std::vector<BackendKind>& all_backends() {
  static const std::vector<BackendKind> backends = {
      BackendKind::ast,    BackendKind::linear,       BackendKind::decoded,
      BackendKind::blocks, BackendKind::threaded_ast, BackendKind::threaded_bc,
  };
  return backends;
}

PreparedProgram::PreparedProgram(const StmtList& program)
    : ast(clone(program)),
      image(compile_linear(ast)),
      decoded(image),
      blocks(compile_blocks(ast)),
      threaded_ast(build_threaded_ast(ast)),
      threaded_bc(build_threaded_bc(ast)) {}

Env execute(BackendKind backend, const PreparedProgram& prog, Env initial, Boundary boundary) {
  switch (backend) {
    case BackendKind::ast: return run_ast(prog.ast, std::move(initial), boundary);
    case BackendKind::linear: return run_linear(prog.image, std::move(initial), boundary);
    case BackendKind::decoded: return run_decoded(prog.decoded, std::move(initial), boundary);
    case BackendKind::blocks: return run_blocks(prog.blocks, std::move(initial), boundary);
    case BackendKind::threaded_ast:
      return run_threaded_ast(prog.threaded_ast, std::move(initial), boundary);
    case BackendKind::threaded_bc:
      return run_threaded_bc(prog.threaded_bc, std::move(initial), boundary);
  }
  throw Error("unknown backend");
}

Env execute(BackendKind backend, const PreparedProgram& prog, Env initial,
            const ObjectSpaceIface& space) {
  switch (backend) {
    case BackendKind::ast: return run_ast(prog.ast, std::move(initial), space);
    case BackendKind::linear: return run_linear(prog.image, std::move(initial), space);
    case BackendKind::decoded: return run_decoded(prog.decoded, std::move(initial), space);
    case BackendKind::blocks: return run_blocks(prog.blocks, std::move(initial), space);
    case BackendKind::threaded_ast:
      return run_threaded_ast(prog.threaded_ast, std::move(initial), space);
    case BackendKind::threaded_bc:
      return run_threaded_bc(prog.threaded_bc, std::move(initial), space);
  }
  throw Error("unknown backend");
}

std::optional<std::string> first_env_divergence(const Env& expected, const Env& actual) {
  auto e = expected.entries().begin();
  auto a = actual.entries().begin();
  while (e != expected.entries().end() || a != actual.entries().end()) {
    if (e == expected.entries().end()) {
      return "'" + a->first + "': expected unbound, got " + a->second.str();
    }
    if (a == actual.entries().end() || e->first < a->first) {
      return "'" + e->first + "': expected " + e->second.str() + ", got unbound";
    }
    if (a->first < e->first) {
      return "'" + a->first + "': expected unbound, got " + a->second.str();
    }
    if (!(e->second == a->second)) {
      return "'" + e->first + "': expected " + e->second.str() + ", got " + a->second.str();
    }
    ++e;
    ++a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Statistics

double geometric_mean(std::span<const double> samples) {
  if (samples.empty()) throw InsufficientSamples("geometric mean of zero samples");
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) return *lo;
  double sum = 0.0;
  for (double s : samples) sum += std::log(s);
  return std::exp(sum / static_cast<double>(samples.size()));
}

double student_t_975(std::size_t degrees_of_freedom) {
  boost::math::students_t_distribution<double> dist(static_cast<double>(degrees_of_freedom));
  return boost::math::quantile(dist, 0.975);
}

double geo_ci_half_width(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw InsufficientSamples("confidence interval needs at least two samples");
  }
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) return 0.0;

  const std::size_t n = samples.size();
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(samples[i]);
  double mean = 0.0;
  for (double l : logs) mean += l;
  mean /= static_cast<double>(n);
  double varsum = 0.0;
  for (double l : logs) varsum += (l - mean) * (l - mean);
  double stddev = std::sqrt(varsum / static_cast<double>(n - 1));

  double hw_log = student_t_975(n - 1) * stddev / std::sqrt(static_cast<double>(n));
  double gm = std::exp(mean);
  return (gm * std::exp(hw_log) - gm / std::exp(hw_log)) / 2.0;
}

double normalized_ratio(std::span<const double> samples, std::span<const double> base) {
  if (samples.empty() || base.empty()) {
    throw InsufficientSamples("ratio of empty sample sets");
  }
  if (samples.size() == base.size()) {
    // Pairwise ratios: a factor common to both cells divides out before any
    // rounding, so rescaled reports keep bit-identical ratios.
    std::vector<double> ratios(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) ratios[i] = samples[i] / base[i];
    return geometric_mean(ratios);
  }
  return geometric_mean(samples) / geometric_mean(base);
}

// ---------------------------------------------------------------------------
// Cases

namespace {

constexpr std::string_view kPrimeSource = R"(while (start < V) {
    if (V mod start == 0) {
        is_prime := 0;
    } else {
        is_prime := is_prime;
    }
    start := start + 1;
}
)";

constexpr std::string_view kFibSource = R"(i := 1;
while i < n {
    b := b + a;
    a := b - a;
    i := i + 1;
}
)";

constexpr std::string_view kFibModSource = R"(i := 1;
while i < n {
    b := b + a mod 1000000;
    a := b - a mod 1000000;
    i := i + 1;
}
)";

std::array<std::uint64_t, 3> generated_seeds() {
  std::array<std::uint64_t, 3> seeds = {1, 2, 3};
  const char* override_text = std::getenv("ACOL_SEED_DEFAULTS");
  if (override_text == nullptr) return seeds;
  std::string text = override_text;
  std::size_t index = 0;
  std::size_t start = 0;
  while (index < seeds.size() && start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
    if (!piece.empty()) {
      try {
        seeds[index] = std::stoull(piece);
      } catch (const std::exception&) {
        throw Error("bad ACOL_SEED_DEFAULTS entry '" + piece + "'");
      }
    }
    ++index;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return seeds;
}

BenchCase generated_case(int which, std::optional<std::int64_t> scale) {
  GenConfig cfg;
  cfg.seed = generated_seeds()[static_cast<std::size_t>(which - 1)];
  if (scale) {
    if (*scale < 0 || *scale > 2147483647) throw Error("scale out of range");
    cfg.loop_iters = static_cast<int>(*scale);
  }
  GeneratedProgram gen = generate(cfg);
  return BenchCase{"generated" + std::to_string(which), std::move(gen.program),
                   std::move(gen.initial_env)};
}

}  // namespace

const std::vector<std::string>& builtin_case_names() {
  static const std::vector<std::string> names = {"prime",      "fib",        "fib_mod",
                                                 "generated1", "generated2", "generated3"};
  return names;
}

BenchCase make_case(std::string_view name, std::optional<std::int64_t> scale) {
  if (name == "prime") {
    Env env;
    env.store("is_prime", Value::integer(1));
    env.store("start", Value::integer(2));
    env.store("V", Value::integer(scale.value_or(34265341)));
    return BenchCase{"prime", parse_program(kPrimeSource), std::move(env)};
  }
  if (name == "fib" || name == "fib_mod") {
    Env env;
    env.store("a", Value::integer(0));
    env.store("b", Value::integer(1));
    env.store("n", Value::integer(scale.value_or(name == "fib" ? 400000 : 10000000)));
    return BenchCase{std::string(name),
                     parse_program(name == "fib" ? kFibSource : kFibModSource),
                     std::move(env)};
  }
  if (name == "generated1") return generated_case(1, scale);
  if (name == "generated2") return generated_case(2, scale);
  if (name == "generated3") return generated_case(3, scale);
  throw Error("unknown benchmark case '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Runs

namespace {

void corrupt_env(Env& env) {
  if (env.empty()) {
    env.store("_fault", Value::integer(1));
    return;
  }
  const auto& [name, value] = *env.entries().begin();
  env.store(name, space::arith(ArithOp::add, value, Value::integer(1)));
}

void check_against_reference(const Env& expected, const Env& actual, const std::string& context) {
  if (auto divergence = first_env_divergence(expected, actual)) {
    throw BackendMismatch(context + ": " + *divergence);
  }
}

std::vector<double> run_cell(const PreparedProgram& prog, const Env& initial,
                             const Env& expected, const std::string& case_name,
                             BackendKind backend, Boundary boundary, int reps,
                             bool inject_fault) {
  std::vector<double> samples;
  if (reps <= 0) return samples;
  samples.reserve(static_cast<std::size_t>(reps));
  const std::string context =
      case_name + " on " + std::string(to_string(backend)) + "/" +
      std::string(to_string(boundary));

  auto one_run = [&](bool timed) {
    Env fresh = initial;
    auto start = std::chrono::steady_clock::now();
    Env result = execute(backend, prog, std::move(fresh), boundary);
    auto stop = std::chrono::steady_clock::now();
    if (inject_fault) corrupt_env(result);
    check_against_reference(expected, result, context);
    if (timed) {
      samples.push_back(std::chrono::duration<double>(stop - start).count());
    }
  };

  one_run(false);  // warmup
  for (int i = 0; i < reps; ++i) one_run(true);
  return samples;
}

}  // namespace

std::vector<double> run_case(const BenchCase& bench_case, BackendKind backend,
                             Boundary boundary, int reps) {
  PreparedProgram prog(bench_case.program);
  Env expected = execute(BackendKind::ast, prog, bench_case.initial_env, boundary);
  return run_cell(prog, bench_case.initial_env, expected, bench_case.name, backend, boundary,
                  reps, false);
}

BenchReport run_benchmarks(const BenchOptions& options) {
  const std::vector<std::string>& case_names =
      options.cases.empty() ? builtin_case_names() : options.cases;
  const std::vector<BackendKind>& backends =
      options.backends.empty() ? all_backends() : options.backends;
  const std::vector<Boundary> boundaries =
      options.boundaries.empty()
          ? std::vector<Boundary>{Boundary::static_call, Boundary::dynamic_call}
          : options.boundaries;

  BenchReport report;
  report.reps = options.reps;
  for (const std::string& case_name : case_names) {
    BenchCase bench_case = make_case(case_name, options.scale);
    PreparedProgram prog(bench_case.program);
    Env expected =
        execute(BackendKind::ast, prog, bench_case.initial_env, Boundary::static_call);
    for (Boundary boundary : boundaries) {
      for (BackendKind backend : backends) {
        BenchCell cell;
        cell.case_name = bench_case.name;
        cell.backend = backend;
        cell.boundary = boundary;
        cell.samples = run_cell(prog, bench_case.initial_env, expected, bench_case.name,
                                backend, boundary, options.reps,
                                options.inject_fault == backend);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  summarize(report);
  return report;
}

void summarize(BenchReport& report) {
  for (BenchCell& cell : report.cells) {
    if (!cell.samples.empty()) cell.mean = geometric_mean(cell.samples);
    if (cell.samples.size() >= 2) cell.ci_half_width = geo_ci_half_width(cell.samples);
  }
  // Ratios against the ast cell of the same case and boundary.
  for (BenchCell& cell : report.cells) {
    for (const BenchCell& base : report.cells) {
      if (base.backend == BackendKind::ast && base.case_name == cell.case_name &&
          base.boundary == cell.boundary && !base.samples.empty() &&
          !cell.samples.empty()) {
        cell.ratio = normalized_ratio(cell.samples, base.samples);
        break;
      }
    }
  }
  // Cross-case aggregate per backend and boundary.
  report.aggregates.clear();
  for (Boundary boundary : {Boundary::static_call, Boundary::dynamic_call}) {
    for (BackendKind backend : all_backends()) {
      std::vector<double> ratios;
      bool complete = true;
      bool any = false;
      for (const BenchCell& cell : report.cells) {
        if (cell.backend != backend || cell.boundary != boundary) continue;
        any = true;
        if (cell.ratio) {
          ratios.push_back(*cell.ratio);
        } else {
          complete = false;
        }
      }
      if (any && complete && !ratios.empty()) {
        report.aggregates.push_back(BenchAggregate{backend, boundary, geometric_mean(ratios)});
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void pad_to(std::string& s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
}

}  // namespace

std::string render_table(const BenchReport& report) {
  std::string out;
  out += "# mean: geometric mean of wall-clock seconds per run (";
  out += std::to_string(report.reps);
  out += " reps, 1 untimed warmup)\n";
  out += "# ci95: Student-t 0.95 interval on log-runtimes, half-width in seconds\n";
  out += "# ratio: normalized to the ast backend at the same call boundary\n";

  std::vector<std::array<std::string, 7>> rows;
  rows.push_back({"benchmark", "backend", "boundary", "reps", "mean[s]", "ci95[s]", "ratio"});
  for (const BenchCell& cell : report.cells) {
    rows.push_back({
        cell.case_name,
        std::string(to_string(cell.backend)),
        std::string(to_string(cell.boundary)),
        std::to_string(cell.samples.size()),
        cell.mean ? fixed(*cell.mean, 6) : "-",
        cell.ci_half_width ? fixed(*cell.ci_half_width, 6) : "-",
        cell.ratio ? "(" + fixed(*cell.ratio, 2) + ")" : "-",
    });
  }
  std::array<std::size_t, 7> widths{};
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string field = row[i];
      pad_to(field, widths[i] + 2);
      line += field;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }

  if (!report.aggregates.empty()) {
    out += "\n# aggregate: geometric mean of per-benchmark ratios\n";
    for (const BenchAggregate& agg : report.aggregates) {
      std::string line = std::string(to_string(agg.backend));
      pad_to(line, 14);
      line += std::string(to_string(agg.boundary));
      pad_to(line, 24);
      out += line + "(" + fixed(agg.ratio, 2) + ")\n";
    }
  }
  return out;
}

std::string render_records(const BenchReport& report) {
  using nlohmann::json;
  std::string out;
  json meta = {
      {"type", "meta"},
      {"mean", "geometric"},
      {"ci", "student-t-log-0.95"},
      {"normalization", "ast-same-boundary"},
      {"reps", report.reps},
  };
  out += meta.dump();
  out += '\n';
  for (const BenchCell& cell : report.cells) {
    json record = {
        {"type", "cell"},
        {"case", cell.case_name},
        {"backend", std::string(to_string(cell.backend))},
        {"boundary", std::string(to_string(cell.boundary))},
        {"reps", cell.samples.size()},
        {"samples_s", cell.samples},
        {"mean_s", cell.mean ? json(*cell.mean) : json(nullptr)},
        {"ci95_half_width_s", cell.ci_half_width ? json(*cell.ci_half_width) : json(nullptr)},
        {"ratio_vs_ast", cell.ratio ? json(*cell.ratio) : json(nullptr)},
    };
    out += record.dump();
    out += '\n';
  }
  for (const BenchAggregate& agg : report.aggregates) {
    json record = {
        {"type", "aggregate"},
        {"backend", std::string(to_string(agg.backend))},
        {"boundary", std::string(to_string(agg.boundary))},
        {"ratio_vs_ast", agg.ratio},
    };
    out += record.dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Differential driver

DiffResult run_differential(const DiffOptions& options) {
  DiffResult result;
  if (options.seed_lo > options.seed_hi) return result;
  result.seeds_total = options.seed_hi - options.seed_lo + 1;

  const std::vector<BackendKind>& backends =
      options.backends.empty() ? all_backends() : options.backends;
  unsigned workers = options.workers != 0 ? options.workers
                                          : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, result.seeds_total));

  std::atomic<std::uint64_t> next_seed{options.seed_lo};
  std::atomic<std::uint64_t> equivalent{0};
  std::mutex mutex;
  std::optional<DiffDivergence> first;  // guarded by mutex, lowest seed wins

  auto worker = [&] {
    for (;;) {
      std::uint64_t seed = next_seed.fetch_add(1);
      if (seed > options.seed_hi) return;
      GenConfig cfg = options.generator;
      cfg.seed = seed;
      GeneratedProgram gen = generate(cfg);
      PreparedProgram prog(gen.program);
      std::optional<DiffDivergence> found;
      try {
        Env expected = execute(BackendKind::ast, prog, gen.initial_env, options.boundary);
        for (int rep = 0; rep < std::max(1, options.reps_per_seed) && !found; ++rep) {
          for (BackendKind backend : backends) {
            Env actual = execute(backend, prog, gen.initial_env, options.boundary);
            if (options.inject_fault == backend) corrupt_env(actual);
            if (auto divergence = first_env_divergence(expected, actual)) {
              found = DiffDivergence{seed, backend, *divergence};
              break;
            }
          }
        }
      } catch (const Error& e) {
        found = DiffDivergence{seed, BackendKind::ast, std::string("error: ") + e.what()};
      }
      if (found) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!first || found->seed < first->seed) first = found;
      } else {
        equivalent.fetch_add(1);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  result.seeds_equivalent = equivalent.load();
  result.first_divergence = first;
  return result;
}

}  // namespace acol
