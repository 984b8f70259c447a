// Command-line front end: run programs on any backend, compile and inspect
// the compiled forms, generate random programs, benchmark, and
// differential-test the backends against each other.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acol/bench.hpp"
#include "acol/blocks.hpp"
#include "acol/bytecode.hpp"
#include "acol/errors.hpp"
#include "acol/object_space.hpp"
#include "acol/parser.hpp"
#include "acol/pretty.hpp"
#include "acol/progen.hpp"
#include "acol/threaded.hpp"

namespace {

using namespace acol;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

BackendKind backend_from(const std::string& name) {
  if (auto backend = parse_backend(name)) return *backend;
  throw CLI::ValidationError("--backend", "unknown backend '" + name + "'");
}

Boundary boundary_from(const std::string& name) {
  if (auto boundary = parse_boundary(name)) return *boundary;
  throw CLI::ValidationError("--boundary", "unknown boundary '" + name + "'");
}

Env env_from_options(const std::optional<std::string>& env_path,
                     const std::vector<std::string>& var_defs) {
  Env env;
  if (env_path) env = Env::load_file(*env_path);
  for (const std::string& def : var_defs) {
    std::size_t eq = def.find('=');
    if (eq == std::string::npos) {
      throw Error("--var expects name=value, got '" + def + "'");
    }
    env.store(def.substr(0, eq), Value::parse_integer(def.substr(eq + 1)));
  }
  return env;
}

const std::string kBackendChoices = "ast|linear|decoded|blocks|threaded-ast|threaded-bc";

// --- subcommand setup --------------------------------------------------

struct RunArgs {
  std::string source;
  std::optional<std::string> env_path;
  std::vector<std::string> vars;
  std::string backend = "ast";
  std::string boundary = "static";
};

int do_run(const RunArgs& args) {
  StmtList program = parse_program(read_file(args.source));
  Env env = env_from_options(args.env_path, args.vars);
  PreparedProgram prog(program);
  Env final_env =
      execute(backend_from(args.backend), prog, std::move(env), boundary_from(args.boundary));
  std::cout << final_env.to_text();
  return 0;
}

struct CompileArgs {
  std::string source;
  std::string out;
  std::string format = "acbc";
};

int do_compile(const CompileArgs& args) {
  StmtList program = parse_program(read_file(args.source));
  if (args.format == "acbc") {
    save_acbc_file(compile_linear(program), args.out);
  } else if (args.format == "blocks") {
    write_file(args.out, dump_blocks(compile_blocks(program)));
  } else {
    std::string text = "# ast flavor\n";
    text += dump_threaded(build_threaded_ast(program));
    text += "\n# bytecode flavor\n";
    text += dump_threaded(build_threaded_bc(program));
    write_file(args.out, text);
  }
  return 0;
}

int do_disasm(const std::string& path) {
  std::cout << disassemble(load_acbc_file(path));
  return 0;
}

struct GenArgs {
  std::uint64_t seed = 1;
  std::string out;
  int depth_cap = 3;
  int loop_iters = 20;
  int expr_depth = 3;
};

int do_gen(const GenArgs& args) {
  GenConfig cfg;
  cfg.seed = args.seed;
  cfg.depth_cap = args.depth_cap;
  cfg.loop_iters = args.loop_iters;
  cfg.expr_depth = args.expr_depth;
  GeneratedProgram gen = generate(cfg);
  write_file(args.out + ".acol", pretty_print(gen.program));
  write_file(args.out + ".env", gen.initial_env.to_text());
  return 0;
}

struct BenchArgs {
  std::vector<std::string> cases;
  std::vector<std::string> backends;
  std::string boundary = "both";
  int reps = 10;
  std::optional<std::int64_t> scale;
  std::string format = "table";
  std::string inject_fault;
};

int do_bench(const BenchArgs& args) {
  BenchOptions options;
  options.cases = args.cases;
  for (const std::string& name : args.backends) {
    options.backends.push_back(backend_from(name));
  }
  if (args.boundary != "both") {
    options.boundaries.push_back(boundary_from(args.boundary));
  }
  options.reps = args.reps;
  options.scale = args.scale;
  if (!args.inject_fault.empty()) options.inject_fault = backend_from(args.inject_fault);

  BenchReport report = run_benchmarks(options);
  std::cout << (args.format == "records" ? render_records(report) : render_table(report));
  return 0;
}

struct DiffArgs {
  std::string seeds = "1..100";
  int reps_per_seed = 1;
  std::vector<std::string> backends;
  std::string boundary = "static";
  int depth_cap = 2;
  int loop_iters = 5;
  int expr_depth = 3;
  unsigned workers = 0;
  std::string inject_fault;
};

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  std::size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::uint64_t only = std::stoull(text);
      return {only, only};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--seeds", "expected N or LO..HI, got '" + text + "'");
  }
}

int do_diff(const DiffArgs& args) {
  DiffOptions options;
  std::tie(options.seed_lo, options.seed_hi) = parse_seed_range(args.seeds);
  options.generator.depth_cap = args.depth_cap;
  options.generator.loop_iters = args.loop_iters;
  options.generator.expr_depth = args.expr_depth;
  for (const std::string& name : args.backends) {
    options.backends.push_back(backend_from(name));
  }
  options.boundary = boundary_from(args.boundary);
  options.reps_per_seed = args.reps_per_seed;
  options.workers = args.workers;
  if (!args.inject_fault.empty()) options.inject_fault = backend_from(args.inject_fault);

  DiffResult result = run_differential(options);
  std::cout << result.seeds_equivalent << "/" << result.seeds_total << " equivalent\n";
  if (!result.ok()) {
    const DiffDivergence& d = *result.first_divergence;
    std::cerr << "divergence at seed " << d.seed << " on backend " << to_string(d.backend)
              << ": " << d.detail << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acol: a small imperative language with interchangeable execution backends"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "parse a program and run it on one backend");
  run_cmd->add_option("source", run_args.source, "program file (.acol)")->required();
  run_cmd->add_option("envfile", run_args.env_path, "initial environment file (.env)");
  run_cmd->add_option("--env", run_args.env_path, "initial environment file (.env)")
      ->excludes("envfile");
  run_cmd->add_option("--var", run_args.vars, "initial binding name=value (repeatable)");
  run_cmd->add_option("--backend", run_args.backend, kBackendChoices);
  run_cmd->add_option("--boundary", run_args.boundary, "static|dynamic");

  CompileArgs compile_args;
  CLI::App* compile_cmd = app.add_subcommand("compile", "compile a program to a file");
  compile_cmd->add_option("source", compile_args.source, "program file (.acol)")->required();
  compile_cmd->add_option("--out", compile_args.out, "output path")->required();
  compile_cmd->add_option("--format", compile_args.format, "acbc|blocks|threaded")
      ->check(CLI::IsMember({"acbc", "blocks", "threaded"}));

  std::string disasm_path;
  CLI::App* disasm_cmd = app.add_subcommand("disasm", "disassemble an .acbc file");
  disasm_cmd->add_option("image", disasm_path, "bytecode file (.acbc)")->required();

  GenArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random program + environment");
  gen_cmd->add_option("--seed", gen_args.seed, "generator seed");
  gen_cmd->add_option("--out", gen_args.out, "output basename (.acol/.env appended)")
      ->required();
  gen_cmd->add_option("--depth-cap", gen_args.depth_cap, "nesting depth cap");
  gen_cmd->add_option("--loop-iters", gen_args.loop_iters, "iterations per loop entry");
  gen_cmd->add_option("--expr-depth", gen_args.expr_depth, "expression depth budget");

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time the backends on benchmark cases");
  bench_cmd->add_option("--cases", bench_args.cases, "comma-separated case names")
      ->delimiter(',');
  bench_cmd->add_option("--backends", bench_args.backends, "comma-separated backends")
      ->delimiter(',');
  bench_cmd->add_option("--boundary", bench_args.boundary, "static|dynamic|both");
  bench_cmd->add_option("--reps", bench_args.reps, "timed repetitions per cell")
      ->check(CLI::Range(0, 1000000));
  bench_cmd->add_option("--scale", bench_args.scale, "override the case size parameter");
  bench_cmd->add_option("--format", bench_args.format, "table|records")
      ->check(CLI::IsMember({"table", "records"}));
  bench_cmd->add_option("--inject-fault", bench_args.inject_fault,
                        "testing aid: corrupt this backend's result");

  DiffArgs diff_args;
  CLI::App* diff_cmd =
      app.add_subcommand("diff", "check that all backends agree on generated programs");
  diff_cmd->add_option("--seeds", diff_args.seeds, "seed range N or LO..HI");
  diff_cmd->add_option("--reps-per-seed", diff_args.reps_per_seed, "comparisons per seed");
  diff_cmd->add_option("--backends", diff_args.backends, "comma-separated backends")
      ->delimiter(',');
  diff_cmd->add_option("--boundary", diff_args.boundary, "static|dynamic");
  diff_cmd->add_option("--depth-cap", diff_args.depth_cap, "generator nesting depth cap");
  diff_cmd->add_option("--loop-iters", diff_args.loop_iters, "generator loop iterations");
  diff_cmd->add_option("--expr-depth", diff_args.expr_depth, "generator expression depth");
  diff_cmd->add_option("--workers", diff_args.workers, "worker threads (0 = auto)");
  diff_cmd->add_option("--inject-fault", diff_args.inject_fault,
                       "testing aid: corrupt this backend's result");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_args);
    if (compile_cmd->parsed()) return do_compile(compile_args);
    if (disasm_cmd->parsed()) return do_disasm(disasm_path);
    if (gen_cmd->parsed()) return do_gen(gen_args);
    if (bench_cmd->parsed()) return do_bench(bench_args);
    if (diff_cmd->parsed()) return do_diff(diff_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
