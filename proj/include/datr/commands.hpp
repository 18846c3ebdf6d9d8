// SPDX-License-Identifier: Apache-2.0
//
// Subcommands of the `datr` tool. Each returns its process exit status and
// writes results to `out`, diagnostics and traces to `err`.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "datr/evaluator.hpp"
#include "datr/model.hpp"
#include "datr/oracle.hpp"
#include "datr/parser.hpp"
#include "datr/render.hpp"

namespace datr::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kFailures = 1,     // failed assertions or oracle mismatches
  kInputError = 2,   // unreadable or unparsable input
  kLimitReached = 3, // step budget exhausted
};

constexpr std::int64_t kDefaultMaxSteps = 10'000;

/// DATR_MAX_STEPS if set to a positive integer, else 10,000.
inline std::int64_t default_max_steps() {
  if (const char* env = std::getenv("DATR_MAX_STEPS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return v;
  }
  return kDefaultMaxSteps;
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace detail {

inline std::optional<Theory> load_theory(const std::string& file, std::ostream& err) {
  auto text = read_file(file);
  if (!text) {
    err << file << ": cannot read file\n";
    return std::nullopt;
  }
  TheoryParse parsed = parse_theory(*text);
  for (const auto& d : parsed.diagnostics) err << format_diagnostic(d, file) << '\n';
  return std::move(parsed.theory);
}

}  // namespace detail

inline int cmd_check(const std::string& file, std::ostream& out, std::ostream& err) {
  auto theory = detail::load_theory(file, err);
  if (!theory) return kInputError;
  out << theory->node_count() << " nodes, " << theory->sentence_count() << " sentences\n";
  return kSuccess;
}

struct QueryOptions {
  bool strict = false;
  bool trace = false;
  std::int64_t max_steps = kDefaultMaxSteps;
  bool machine = false;
};

inline int cmd_query(const std::string& file, const std::string& query, const QueryOptions& opts, std::ostream& out,
                     std::ostream& err) {
  auto theory = detail::load_theory(file, err);
  if (!theory) return kInputError;
  std::pair<NodeSym, Path> q;
  try {
    q = parse_query(query);
  } catch (const std::invalid_argument& e) {
    err << "query '" << query << "': " << e.what() << '\n';
    return kInputError;
  }
  EvalConfig cfg{opts.strict ? EvalMode::Strict : EvalMode::Default, opts.max_steps, opts.trace};
  QueryResult r = evaluate_query(*theory, q.first, q.second, cfg);
  for (const auto& e : r.trace) err << format_trace_event(e) << '\n';
  if (opts.machine)
    out << "result\t" << render_node_path(q.first, q.second) << '\t' << render_outcome(r.outcome) << '\n';
  else
    out << render_outcome(r.outcome) << '\n';
  return is_limit(r.outcome) ? kLimitReached : kSuccess;
}

inline int cmd_test(const std::string& theory_file, const std::string& goals_file, std::int64_t max_steps,
                    std::ostream& out, std::ostream& err) {
  auto theory = detail::load_theory(theory_file, err);
  auto text = read_file(goals_file);
  if (!text) err << goals_file << ": cannot read file\n";
  if (!theory || !text) return kInputError;
  GoalParse goals = parse_goals(*text);
  for (const auto& d : goals.diagnostics) err << format_diagnostic(d, goals_file) << '\n';
  if (has_errors(goals.diagnostics)) return kInputError;

  const EvalConfig cfg{EvalMode::Default, max_steps, false};
  int passed = 0;
  int failed = 0;
  bool limited = false;
  for (const auto& g : goals.goals) {
    EvalOutcome o = evaluate_query(*theory, g.node, g.path, cfg).outcome;
    const std::string head = render_node_path(g.node, g.path);
    const std::string got = render_outcome(o);
    switch (g.expect) {
      case GoalSentence::Expect::Query:
        if (is_limit(o)) limited = true;
        out << (is_value(o) ? "QUERY " : is_undefined(o) ? "UNDEFINED " : "LIMIT ") << head << " = " << got << '\n';
        break;
      case GoalSentence::Expect::Value: {
        const auto* v = std::get_if<Value>(&o);
        if (v && v->atoms == g.expected) {
          ++passed;
          out << "PASS " << head << " = " << render_value(g.expected) << '\n';
        } else {
          ++failed;
          out << (is_undefined(o) ? "UNDEFINED " : "FAIL ") << head << " = " << render_value(g.expected)
              << " (got " << got << ")\n";
        }
        break;
      }
      case GoalSentence::Expect::Undefined:
        if (is_undefined(o)) {
          ++passed;
          out << "PASS " << head << " = " << got << '\n';
        } else {
          ++failed;
          out << "FAIL " << head << " = UNDEFINED (got " << got << ")\n";
        }
        break;
    }
  }
  out << goals.goals.size() << " goals, " << passed << " passed, " << failed << " failed\n";
  if (failed) return kFailures;
  return limited ? kLimitReached : kSuccess;
}

inline int cmd_dump(const std::string& file, int depth, std::ostream& out, std::ostream& err) {
  if (depth < 0) {
    err << "depth must be >= 0\n";
    return kInputError;
  }
  auto theory = detail::load_theory(file, err);
  if (!theory) return kInputError;
  ClosureParams params{depth, default_alphabet(*theory), kDefaultMaxSteps};
  out << render_theory(closure_sentences(*theory, params));
  return kSuccess;
}

struct OracleOptions {
  int depth = 3;
  std::uint64_t seed = 1;
  int random = 0;
  std::int64_t max_steps = 1'000;
  bool mutant = false;  // check a deliberately broken evaluator (prefix defaults disabled)
};

/// Random theory used for seed `s`: size 1 + s % 6, fanout 3, globals on.
inline Theory seeded_theory(std::uint64_t s) { return random_theory(s, 1 + static_cast<int>(s % 6), 3, true); }

inline int cmd_oracle_check(const std::optional<std::string>& file, const OracleOptions& opts, std::ostream& out,
                            std::ostream& err) {
  if (opts.depth < 0) {
    err << "depth must be >= 0\n";
    return kInputError;
  }
  QueryFn query = default_query;
  if (opts.mutant) {
    query = [](const Theory& t, const NodeSym& n, const Path& p, std::int64_t budget) {
      return evaluate_query(t, n, p, EvalConfig{EvalMode::Strict, budget, false}).outcome;
    };
  }
  bool mismatch = false;
  if (file) {
    auto theory = detail::load_theory(*file, err);
    if (!theory) return kInputError;
    CrossCheckReport r = cross_check(*theory, {opts.depth, default_alphabet(*theory), opts.max_steps}, query);
    out << "theory " << *file << ": " << format_report(r);
    mismatch = !r.agrees();
  }
  if (opts.random > 0) {
    CrossCheckReport total;
    for (int i = 0; i < opts.random; ++i) {
      const std::uint64_t s = opts.seed + static_cast<std::uint64_t>(i);
      Theory t = seeded_theory(s);
      CrossCheckReport r = cross_check(t, {opts.depth, default_alphabet(t), opts.max_steps}, query);
      for (const auto& m : r.mismatches)
        out << "seed=" << s << '\t' << m.node.name << '\t' << render_path(m.path) << '\t'
            << render_outcome(m.evaluator) << '\t' << render_outcome(m.oracle) << '\n';
      total.merge(std::move(r));
    }
    out << "random theories=" << opts.random << ": queries=" << total.queries_checked
        << " skipped=" << total.skipped << " mismatches=" << total.mismatches.size() << '\n';
    mismatch = mismatch || !total.agrees();
  }
  return mismatch ? kFailures : kSuccess;
}

}  // namespace datr::cli
