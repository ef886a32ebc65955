// entail: decides validity of separation-logic entailments with arrays by
// decomposing into sorted entailments, translating to Presburger formulas
// and invoking an external SMT solver.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "entail/batch.hpp"
#include "entail/bench.hpp"
#include "entail/parser.hpp"

namespace {

int exit_code(const entail::Verdict& v) {
  switch (v.kind) {
    case entail::Verdict::Kind::Valid: return 0;
    case entail::Verdict::Kind::Invalid: return 1;
    case entail::Verdict::Kind::ConditionViolation: return 2;
    case entail::Verdict::Kind::Unknown: return 3;
  }
  return 3;
}

std::string read_input(const std::string& path) {
  if (path == "-" || path.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entailment checker for symbolic heaps with arrays "
      "(separation logic over Presburger arithmetic)"};

  std::string input_path = "-";
  bool no_u = false, no_f = false, simplify = false;
  std::string solver_path;
  std::vector<std::string> solver_args;
  long long timeout_ms = 60000;
  std::string dump_dir;
  std::vector<std::uint64_t> oracle_bounds;
  std::vector<std::string> bench_spec;
  std::string format = "text";
  int jobs = 1;

  app.add_option("file", input_path,
                 "input file of entailments ('-' for stdin)");
  app.add_flag("--no-u", no_u, "disable unsatisfiability pruning (U)");
  app.add_flag("--no-f", no_f, "disable the invertible frame rule (F)");
  app.add_flag("--simplify", simplify,
               "fold accumulated pure parts during translation");
  app.add_option("--solver", solver_path,
                 "SMT solver executable (default: $ENTAIL_SOLVER or the "
                 "bundled pressmt)");
  app.add_option("--solver-arg", solver_args,
                 "extra solver argument (repeatable)");
  app.add_option("--timeout-ms", timeout_ms, "per-query solver timeout");
  app.add_option("--dump-smt", dump_dir, "write each emitted script here");
  app.add_option("--oracle", oracle_bounds,
                 "cross-check against the bounded oracle: STORE VALUE")
      ->expected(2);
  app.add_option("--bench", bench_spec,
                 "generate a benchmark file: FAMILY COUNT SEED")
      ->expected(3);
  app.add_option("--format", format, "report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "worker threads for batch runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (!bench_spec.empty()) {
      entail::BenchSpec spec;
      spec.family = entail::parse_family(bench_spec[0], spec.frame_size);
      spec.count = std::stoull(bench_spec[1]);
      spec.seed = std::stoull(bench_spec[2]);
      std::cout << entail::print_input_file(entail::generate_bench(spec));
      return 0;
    }

    entail::InputFile file = entail::parse_input_file(read_input(input_path));

    entail::BatchOptions opts;
    opts.run.enable_u = !no_u;
    opts.run.enable_f = !no_f;
    opts.run.enable_simplify = simplify;
    opts.run.solver = solver_path.empty()
                          ? entail::default_solver_config()
                          : entail::SolverConfig{solver_path, {}, 60000, "", ""};
    opts.run.solver.args = solver_args;
    opts.run.solver.timeout_ms = timeout_ms;
    opts.run.solver.dump_dir = dump_dir;
    if (!oracle_bounds.empty())
      opts.run.oracle_bounds = {oracle_bounds[0], oracle_bounds[1]};
    opts.oracle_crosscheck = !oracle_bounds.empty();
    opts.jobs = jobs;

    if (file.entries.size() == 1 && format == "text") {
      // single-entailment mode: verdict on stdout, exit code encodes it
      const auto& [name, e] = file.entries.front();
      entail::DecideResult res = entail::decide_detailed(e, opts.run);
      std::cout << name << ": " << res.verdict.str() << "\n";
      if (opts.oracle_crosscheck) {
        auto cm = entail::oracle_search(e, oracle_bounds[0], oracle_bounds[1]);
        std::cout << "oracle: "
                  << (cm ? "countermodel " + cm->str() : std::string("none"))
                  << "\n";
        if (cm && res.verdict.is_valid()) {
          std::cout << "CONFLICT: oracle countermodel vs valid verdict\n";
          return 3;
        }
      }
      return exit_code(res.verdict);
    }

    entail::BatchReport report = entail::run_batch(file, opts);
    std::cout << (format == "json" ? entail::format_json(report)
                                   : entail::format_text(report));
    return 0;
  } catch (const entail::ParseError& e) {
    std::cerr << "entail: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "entail: " << e.what() << "\n";
    return 4;
  }
}
