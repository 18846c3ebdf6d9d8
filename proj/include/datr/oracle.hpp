// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference semantics used to cross-validate the evaluator.
//
// Two routes, both independent of detail::Machine:
//  * closure: every explicit sentence N:P == phi stands for the implicit
//    sentences N:P.E == phi.E (paths inside phi extended by E) unless a longer
//    explicit prefix of P.E exists. oracle_evaluate interprets only these
//    sentences, by exact path match, with the non-default clauses.
//  * delta: nodes are families f(explicit path)(extension); a query v is
//    answered by f(v1)(v2) for the longest defined prefix v1.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "datr/evaluator.hpp"
#include "datr/model.hpp"
#include "datr/render.hpp"

namespace datr {

struct ClosureParams {
  int depth = 2;                  // max suffix length
  std::vector<AtomSym> alphabet;  // non-empty when depth > 0
  std::int64_t step_budget = 1'000;
};

/// Atoms of the theory plus the fresh padding atom `_pad`.
inline std::vector<AtomSym> default_alphabet(const Theory& theory) {
  auto atoms = theory_atoms(theory);
  AtomSym pad{"_pad"};
  if (!std::binary_search(atoms.begin(), atoms.end(), pad)) atoms.insert(std::upper_bound(atoms.begin(), atoms.end(), pad), pad);
  return atoms;
}

/// Every path over `alphabet` of length <= depth, in lexicographic order.
inline std::vector<Path> enumerate_paths(const std::vector<AtomSym>& alphabet, int depth) {
  std::vector<Path> out{Path{}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= depth; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& a : alphabet) {
        Path p = out[i];
        p.atoms.push_back(a);
        out.push_back(std::move(p));
      }
    }
    layer_begin = layer_end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// d.E: appends E to the path of every inheritance descriptor that has one.
inline Descriptor extend_descriptor(Descriptor d, const Path& ext) {
  if (d.has_path())
    for (const auto& a : ext) d.path.push_back(Descriptor::make_atom(a));
  return d;
}

inline Rhs extend_rhs(const Rhs& rhs, const Path& ext) {
  Rhs out;
  out.reserve(rhs.size());
  for (const auto& d : rhs) out.push_back(extend_descriptor(d, ext));
  return out;
}

/// The implicit sentence at exactly node:path, if any. Generates the
/// candidate from every explicit prefix and discards shadowed candidates.
inline std::optional<DefSentence> implicit_sentence(const Theory& theory, const NodeSym& node, const Path& path) {
  const NodeDef* def = theory.find(node);
  if (!def) return std::nullopt;
  std::vector<DefSentence> survivors;
  for (const auto& [explicit_path, rhs] : def->entries) {
    if (!explicit_path.is_prefix_of(path)) continue;
    bool shadowed = false;
    for (const auto& [other, _] : def->entries) {
      if (other.size() > explicit_path.size() && other.is_prefix_of(path)) shadowed = true;
    }
    if (!shadowed) survivors.push_back({node, path, extend_rhs(rhs, path.drop(explicit_path.size()))});
  }
  if (survivors.empty()) return std::nullopt;
  if (survivors.size() > 1) throw std::logic_error("closure is not functional at " + render_node_path(node, path));
  return survivors.front();
}

/// The explicit sentences together with all unshadowed implicit sentences
/// whose suffix has length <= params.depth over params.alphabet.
inline Theory closure_sentences(const Theory& theory, const ClosureParams& params) {
  const auto suffixes = enumerate_paths(params.alphabet, params.depth);
  Theory out;
  for (const auto& s : theory.sentences()) {
    const NodeDef& def = *theory.find(s.node);
    for (const auto& ext : suffixes) {
      Path lhs = s.lhs + ext;
      bool shadowed = std::any_of(def.entries.begin(), def.entries.end(), [&](const auto& entry) {
        return entry.first.size() > s.lhs.size() && entry.first.is_prefix_of(lhs);
      });
      if (!shadowed) out.add({s.node, std::move(lhs), extend_rhs(s.rhs, ext)});
    }
  }
  return out;
}

namespace detail {

// Non-default clauses evaluated over implicit sentences (exact match only).
class ClosureInterpreter {
 public:
  ClosureInterpreter(const Theory& theory, std::int64_t budget) : theory_(theory), budget_(budget) {}

  EvalOutcome local(const Context& c, const NodeSym& n, const ValueSeq& p) {
    const NodeDef* def = theory_.find(n);
    if (!def || def->empty()) return Undefined{Undefined::Reason::UnknownNode, n, as_path(p)};
    auto s = implicit_sentence(theory_, n, as_path(p));
    if (!s) return Undefined{Undefined::Reason::NoPrefix, n, as_path(p)};
    return sequence(c, s->rhs);
  }

 private:
  const Theory& theory_;
  std::int64_t budget_;
  std::int64_t steps_ = 0;

  EvalOutcome sequence(const Context& c, const std::vector<Descriptor>& ds) {
    ValueSeq acc;
    for (const auto& d : ds) {
      EvalOutcome r = descriptor(c, d);
      if (!is_value(r)) return r;
      acc.append(std::get<Value>(r).atoms);
    }
    return Value{std::move(acc)};
  }

  EvalOutcome descriptor(const Context& c, const Descriptor& d) {
    if (++steps_ > budget_) return LimitExceeded{budget_};
    using K = Descriptor::Kind;
    if (d.kind == K::Atom) return Value{ValueSeq(std::vector<AtomSym>{d.atom})};
    if (d.kind == K::GlobalNode) return local(Context{d.node, c.global_path}, d.node, c.global_path);
    EvalOutcome q = sequence(c, d.path);
    if (!is_value(q)) return q;
    const ValueSeq& path = std::get<Value>(q).atoms;
    switch (d.kind) {
      case K::LocalNodePath: return local(c, d.node, path);
      case K::GlobalNodePath: return local(Context{d.node, path}, d.node, path);
      case K::GlobalPath: return local(Context{c.global_node, path}, c.global_node, path);
      default: break;
    }
    return Undefined{};
  }
};

// Path-indexed denotations with the longest-prefix operator applied per node.
class DeltaInterpreter {
 public:
  DeltaInterpreter(const Theory& theory, std::int64_t budget) : theory_(theory), budget_(budget) {}

  // Delta(f)(v) = f(v1)(v2), v1 the longest prefix with f(v1) defined.
  EvalOutcome node(const Context& c, const NodeSym& n, const ValueSeq& v) {
    const NodeDef* def = theory_.find(n);
    if (!def || def->empty()) return Undefined{Undefined::Reason::UnknownNode, n, as_path(v)};
    for (std::size_t k = std::min(v.size(), def->max_key_length()) + 1; k-- > 0;) {
      auto f = def->entries.find(as_path(v.prefix(k)));
      if (f != def->entries.end()) return sequence(c, f->second, v.drop(k));
    }
    return Undefined{Undefined::Reason::NoPrefix, n, as_path(v)};
  }

 private:
  const Theory& theory_;
  std::int64_t budget_;
  std::int64_t steps_ = 0;

  // [[phi]]_c(v) = [[d1]]_c(v) ... [[dn]]_c(v)
  EvalOutcome sequence(const Context& c, const std::vector<Descriptor>& ds, const ValueSeq& v) {
    ValueSeq acc;
    for (const auto& d : ds) {
      EvalOutcome r = denote(c, d, v);
      if (!is_value(r)) return r;
      acc.append(std::get<Value>(r).atoms);
    }
    return Value{std::move(acc)};
  }

  EvalOutcome denote(const Context& c, const Descriptor& d, const ValueSeq& v) {
    if (++steps_ > budget_) return LimitExceeded{budget_};
    using K = Descriptor::Kind;
    switch (d.kind) {
      case K::Atom: return Value{ValueSeq(std::vector<AtomSym>{d.atom})};
      case K::GlobalNode: return node(Context{d.node, c.global_path}, d.node, c.global_path);
      default: break;
    }
    EvalOutcome sub = sequence(c, d.path, ValueSeq{});
    if (!is_value(sub)) return sub;
    ValueSeq target = std::get<Value>(sub).atoms + v;
    if (d.kind == K::LocalNodePath) return node(c, d.node, target);
    Context next{d.kind == K::GlobalPath ? c.global_node : d.node, target};
    return node(next, next.global_node, target);
  }
};

}  // namespace detail

/// Evaluates n:p over the implicit-sentence closure (exact match, no runtime
/// prefix search).
inline EvalOutcome oracle_evaluate(const Theory& theory, const NodeSym& n, const Path& p, const ClosureParams& params) {
  detail::ClosureInterpreter interp(theory, params.step_budget);
  return interp.local(Context{n, as_value(p)}, n, as_value(p));
}

/// Evaluates n:p by applying the longest-prefix operator to path-indexed
/// node denotations.
inline EvalOutcome delta_evaluate(const Theory& theory, const NodeSym& n, const Path& p, std::int64_t step_budget) {
  detail::DeltaInterpreter interp(theory, step_budget);
  return interp.node(Context{n, as_value(p)}, n, as_value(p));
}

struct Mismatch {
  NodeSym node;
  Path path;
  EvalOutcome evaluator;
  EvalOutcome oracle;
};

struct CrossCheckReport {
  std::int64_t queries_checked = 0;
  std::int64_t skipped = 0;  // step limit reached on either side
  std::vector<Mismatch> mismatches;

  [[nodiscard]] bool agrees() const { return mismatches.empty(); }

  void merge(CrossCheckReport other) {
    queries_checked += other.queries_checked;
    skipped += other.skipped;
    for (auto& m : other.mismatches) mismatches.push_back(std::move(m));
  }
};

/// Summary line, then node<TAB>path<TAB>evaluator<TAB>oracle per mismatch.
inline std::string format_report(const CrossCheckReport& r) {
  std::string out = "queries=" + std::to_string(r.queries_checked) + " skipped=" + std::to_string(r.skipped) +
                    " mismatches=" + std::to_string(r.mismatches.size()) + "\n";
  for (const auto& m : r.mismatches)
    out += m.node.name + "\t" + render_path(m.path) + "\t" + render_outcome(m.evaluator) + "\t" +
           render_outcome(m.oracle) + "\n";
  return out;
}

/// The implementation under test: answers node:path with a step budget.
using QueryFn = std::function<EvalOutcome(const Theory&, const NodeSym&, const Path&, std::int64_t)>;

inline EvalOutcome default_query(const Theory& t, const NodeSym& n, const Path& p, std::int64_t budget) {
  return evaluate_query(t, n, p, EvalConfig{EvalMode::Default, budget, false}).outcome;
}

/// Compares `query` (the evaluator by default) with oracle_evaluate for every
/// defined node and every path over the alphabet up to params.depth.
inline CrossCheckReport cross_check(const Theory& theory, const ClosureParams& params,
                                    const QueryFn& query = default_query) {
  CrossCheckReport report;
  const auto paths = enumerate_paths(params.alphabet, params.depth);
  for (const auto& n : theory.node_order()) {
    for (const auto& p : paths) {
      EvalOutcome got = query(theory, n, p, params.step_budget);
      EvalOutcome want = oracle_evaluate(theory, n, p, params);
      ++report.queries_checked;
      if (is_limit(got) || is_limit(want)) {
        ++report.skipped;
      } else if (got != want) {
        report.mismatches.push_back({n, p, std::move(got), std::move(want)});
      }
    }
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(), [](const Mismatch& a, const Mismatch& b) {
    return std::tie(a.node, a.path) < std::tie(b.node, b.path);
  });
  return report;
}

/// Deterministic random functional theory over atoms {a, b, c} and nodes
/// N0..N(size-1). Every node gets 1..fanout sentences. With `globals`, quoted
/// descriptors and evaluable path subterms are generated too.
inline Theory random_theory(std::uint64_t seed, int size, int fanout, bool globals) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  const std::vector<AtomSym> atoms{{"a"}, {"b"}, {"c"}};
  const auto sz = static_cast<std::uint64_t>(std::max(size, 1));
  auto node_name = [](std::uint64_t i) { return NodeSym{"N" + std::to_string(i)}; };
  auto random_atom = [&] { return atoms[pick(atoms.size())]; };
  auto random_path = [&](std::uint64_t max_len) {
    Path p;
    for (auto len = pick(max_len + 1); len > 0; --len) p.atoms.push_back(random_atom());
    return p;
  };
  auto random_terms = [&] {
    std::vector<Descriptor> terms;
    for (auto len = pick(3); len > 0; --len) {
      if (globals && pick(5) == 0)
        terms.push_back(Descriptor::global_path(atom_terms(random_path(2))));
      else
        terms.push_back(Descriptor::make_atom(random_atom()));
    }
    return terms;
  };
  auto random_descriptor = [&] {
    switch (pick(globals ? 6 : 3)) {
      case 1:
      case 2: return Descriptor::local(node_name(pick(sz)), random_terms());
      case 3: return Descriptor::global_node_path(node_name(pick(sz)), random_terms());
      case 4: return Descriptor::global_path(random_terms());
      case 5: return Descriptor::global_node(node_name(pick(sz)));
      default: return Descriptor::make_atom(random_atom());
    }
  };

  Theory theory;
  for (std::uint64_t i = 0; i < sz; ++i) {
    const auto count = 1 + pick(static_cast<std::uint64_t>(std::max(fanout, 1)));
    std::vector<Path> used;
    for (std::uint64_t k = 0; k < count; ++k) {
      Path lhs = random_path(2);
      if (std::find(used.begin(), used.end(), lhs) != used.end()) continue;
      used.push_back(lhs);
      Rhs rhs;
      for (auto len = pick(4); len > 0; --len) rhs.push_back(random_descriptor());
      theory.add({node_name(i), std::move(lhs), std::move(rhs)});
    }
  }
  return theory;
}

}  // namespace datr
