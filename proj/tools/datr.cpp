// SPDX-License-Identifier: Apache-2.0
//
// datr: check, query, test, dump and oracle-check DATR theories.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "datr/commands.hpp"

int main(int argc, char** argv) {
  using namespace datr::cli;

  CLI::App app{"DATR lexicon evaluator"};
  app.require_subcommand(1);

  std::string theory_file;
  std::string goals_file;
  std::string query_text;
  std::int64_t max_steps = 0;

  auto* check = app.add_subcommand("check", "Parse a theory and report diagnostics and counts");
  check->add_option("theory", theory_file, "Theory file (.dtr)")->required();

  QueryOptions qopts;
  std::string format = "text";
  auto* query = app.add_subcommand("query", "Evaluate Node:<path> against a theory");
  query->add_option("theory", theory_file, "Theory file (.dtr)")->required();
  query->add_option("query", query_text, "Query, e.g. 'Walk:<mor past>'")->required();
  query->add_flag("--strict", qopts.strict, "Exact paths only (no default extension)");
  query->add_flag("--trace", qopts.trace, "Print evaluation trace to stderr");
  query->add_option("--max-steps", max_steps, "Descriptor evaluation budget")->check(CLI::PositiveNumber);
  query->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  auto* test = app.add_subcommand("test", "Evaluate goal statements against a theory");
  test->add_option("theory", theory_file, "Theory file (.dtr)")->required();
  test->add_option("goals", goals_file, "Goal file (.dtg)")->required();
  test->add_option("--max-steps", max_steps, "Descriptor evaluation budget")->check(CLI::PositiveNumber);

  int dump_depth = 1;
  auto* dump = app.add_subcommand("dump", "Print explicit and implicit sentences up to a suffix depth");
  dump->add_option("theory", theory_file, "Theory file (.dtr)")->required();
  dump->add_option("--depth", dump_depth, "Maximum suffix length")->check(CLI::NonNegativeNumber);

  OracleOptions oopts;
  std::optional<std::string> oracle_file;
  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the evaluator against the closure oracle");
  oracle->add_option("theory", oracle_file, "Theory file (.dtr)");
  oracle->add_option("--depth", oopts.depth, "Maximum query path length")->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", oopts.seed, "First random seed");
  oracle->add_option("--random", oopts.random, "Number of random theories")->check(CLI::NonNegativeNumber);
  oracle->add_option("--max-steps", oopts.max_steps, "Per-query budget")->check(CLI::PositiveNumber);
  oracle->add_flag("--mutant", oopts.mutant, "Check a deliberately broken evaluator instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  const std::int64_t budget = max_steps > 0 ? max_steps : default_max_steps();
  if (*check) return cmd_check(theory_file, std::cout, std::cerr);
  if (*query) {
    qopts.max_steps = budget;
    qopts.machine = format == "machine";
    return cmd_query(theory_file, query_text, qopts, std::cout, std::cerr);
  }
  if (*test) return cmd_test(theory_file, goals_file, budget, std::cout, std::cerr);
  if (*dump) return cmd_dump(theory_file, dump_depth, std::cout, std::cerr);
  if (*oracle) {
    if (!oracle_file && oopts.random == 0) {
      std::cerr << "oracle-check: give a theory file, --random N, or both\n";
      return kInputError;
    }
    return cmd_oracle_check(oracle_file, oopts, std::cout, std::cerr);
  }
  return kInputError;
}
