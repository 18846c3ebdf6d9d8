// SPDX-License-Identifier: Apache-2.0
//
// Query evaluation under the strict denotation (exact paths only) and the
// default denotation, where a path takes its definition from the longest
// explicitly defined prefix and the leftover suffix extends every path
// inside the right-hand side.
//
// Evaluation runs on an explicit frame stack so that a step budget of any
// size is safe on cyclic theories.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "datr/model.hpp"
#include "datr/render.hpp"

namespace datr {

/// Global context: the node/path pair seeded by the query and overwritten by
/// quoted descriptors.
struct Context {
  NodeSym global_node;
  ValueSeq global_path;

  friend bool operator==(const Context&, const Context&) = default;
};

enum class EvalMode { Strict, Default };

struct EvalConfig {
  EvalMode mode = EvalMode::Default;
  std::int64_t max_steps = 10'000;  // descriptor evaluations per query, >= 1
  bool trace_enabled = false;
};

struct Value {
  ValueSeq atoms;
  friend bool operator==(const Value&, const Value&) = default;
};

struct Undefined {
  enum class Reason { NoPrefix, UnknownNode };
  Reason reason = Reason::NoPrefix;
  NodeSym node;
  Path path;
  friend bool operator==(const Undefined&, const Undefined&) = default;
};

struct LimitExceeded {
  std::int64_t steps = 0;
  friend bool operator==(const LimitExceeded&, const LimitExceeded&) = default;
};

using EvalOutcome = std::variant<Value, Undefined, LimitExceeded>;

inline bool is_value(const EvalOutcome& o) { return std::holds_alternative<Value>(o); }
inline bool is_undefined(const EvalOutcome& o) { return std::holds_alternative<Undefined>(o); }
inline bool is_limit(const EvalOutcome& o) { return std::holds_alternative<LimitExceeded>(o); }

inline const char* reason_name(Undefined::Reason r) {
  return r == Undefined::Reason::NoPrefix ? "no-prefix" : "unknown-node";
}

/// `walk ed`, `()`, `UNDEFINED (no-prefix at Verb:<syn form>)`, `LIMIT-EXCEEDED (10000 steps)`.
inline std::string render_outcome(const EvalOutcome& o) {
  if (auto* v = std::get_if<Value>(&o)) return render_value(v->atoms);
  if (auto* u = std::get_if<Undefined>(&o))
    return std::string("UNDEFINED (") + reason_name(u->reason) + " at " + render_node_path(u->node, u->path) + ")";
  return "LIMIT-EXCEEDED (" + std::to_string(std::get<LimitExceeded>(o).steps) + " steps)";
}

struct TraceEvent {
  enum class Kind { Lookup, Descriptor, ContextSwitch };

  std::int64_t step = 0;
  Kind kind = Kind::Descriptor;
  Context global;
  NodeSym local_node;
  ValueSeq local_path;
  std::string detail;
};

inline const char* kind_name(TraceEvent::Kind k) {
  switch (k) {
    case TraceEvent::Kind::Lookup: return "lookup";
    case TraceEvent::Kind::Descriptor: return "descriptor";
    case TraceEvent::Kind::ContextSwitch: return "context-switch";
  }
  return "?";
}

/// step<TAB>kind<TAB>global=Node:<path><TAB>local=Node:<path><TAB>detail
inline std::string format_trace_event(const TraceEvent& e) {
  return std::to_string(e.step) + "\t" + kind_name(e.kind) + "\tglobal=" +
         render_node_path(e.global.global_node, as_path(e.global.global_path)) + "\tlocal=" +
         render_node_path(e.local_node, as_path(e.local_path)) + "\t" + e.detail;
}

struct QueryResult {
  EvalOutcome outcome;
  std::vector<TraceEvent> trace;
};

namespace detail {

class Machine {
 public:
  Machine(const Theory& theory, const EvalConfig& cfg) : theory_(theory), cfg_(cfg) {}

  EvalOutcome run_local(const Context& c, const NodeSym& n, const ValueSeq& p) {
    if (auto failed = enter_local(c, n, p)) return *failed;
    return loop();
  }

  EvalOutcome run_descriptor(const Context& c, const Descriptor& d, const ValueSeq& ext, const NodeSym& local_node,
                             const ValueSeq& local_path) {
    stack_.emplace_back(DescFrame{&d, make_env(c, local_node, local_path), make_ext(ext)});
    return loop();
  }

  EvalOutcome run_sequence(const Context& c, const Rhs& phi, const ValueSeq& ext, const NodeSym& local_node,
                           const ValueSeq& local_path) {
    stack_.emplace_back(SeqFrame{&phi, 0, make_env(c, local_node, local_path), make_ext(ext), {}});
    return loop();
  }

  std::vector<TraceEvent> take_trace() { return std::move(trace_); }

 private:
  // Immutable per-rhs state, shared by every frame evaluating that rhs.
  struct Env {
    Context ctx;
    NodeSym local_node;
    ValueSeq local_path;
  };
  using EnvPtr = std::shared_ptr<const Env>;
  using ExtPtr = std::shared_ptr<const ValueSeq>;
  // Evaluates items left to right at a shared extension, concatenating.
  struct SeqFrame {
    const std::vector<Descriptor>* items;
    std::size_t next;
    EnvPtr env;
    ExtPtr ext;
    ValueSeq acc;
  };
  // Phase 0: start. Phase 1: path subterms evaluated. Phase 2: target rhs evaluated.
  struct DescFrame {
    const Descriptor* d;
    EnvPtr env;
    ExtPtr ext;
    int phase = 0;
  };
  using Frame = std::variant<SeqFrame, DescFrame>;

  const Theory& theory_;
  EvalConfig cfg_;
  std::vector<Frame> stack_;
  std::int64_t steps_ = 0;
  std::int64_t events_ = 0;
  std::vector<TraceEvent> trace_;
  ValueSeq ret_;
  bool has_ret_ = false;

  static EnvPtr make_env(Context c, NodeSym n, ValueSeq p) {
    return std::make_shared<const Env>(Env{std::move(c), std::move(n), std::move(p)});
  }
  static ExtPtr make_ext(ValueSeq ext) { return std::make_shared<const ValueSeq>(std::move(ext)); }

  void record(TraceEvent::Kind kind, const Context& c, const NodeSym& n, const ValueSeq& p, std::string detail) {
    if (!cfg_.trace_enabled) return;
    trace_.push_back(TraceEvent{++events_, kind, c, n, p, std::move(detail)});
  }

  // Resolves n:p and pushes the evaluation of its rhs; returns the failure if
  // the lookup is undefined.
  std::optional<EvalOutcome> enter_local(const Context& c, const NodeSym& n, const ValueSeq& p) {
    const NodeDef* def = theory_.find(n);
    if (!def || def->empty()) {
      record(TraceEvent::Kind::Lookup, c, n, p, "unknown-node");
      return Undefined{Undefined::Reason::UnknownNode, n, as_path(p)};
    }
    const Path path = as_path(p);
    std::optional<PrefixMatch> m;
    if (cfg_.mode == EvalMode::Default) {
      m = longest_prefix_lookup(*def, path);
    } else if (auto it = def->entries.find(path); it != def->entries.end()) {
      m = PrefixMatch{path, &it->second, Path{}};
    }
    if (!m) {
      record(TraceEvent::Kind::Lookup, c, n, p, "no-prefix");
      return Undefined{Undefined::Reason::NoPrefix, n, path};
    }
    record(TraceEvent::Kind::Lookup, c, n, p, render_path(m->explicit_path));
    stack_.emplace_back(SeqFrame{m->rhs, 0, make_env(c, n, p), make_ext(as_value(m->suffix)), {}});
    has_ret_ = false;
    return std::nullopt;
  }

  void finish(ValueSeq v) {
    stack_.pop_back();
    ret_ = std::move(v);
    has_ret_ = true;
  }

  EvalOutcome loop() {
    while (!stack_.empty()) {
      if (auto* seq = std::get_if<SeqFrame>(&stack_.back())) {
        if (has_ret_) {
          seq->acc.append(ret_);
          has_ret_ = false;
        }
        if (seq->next < seq->items->size()) {
          const Descriptor* d = &(*seq->items)[seq->next++];
          stack_.emplace_back(DescFrame{d, seq->env, seq->ext});
        } else {
          finish(std::move(seq->acc));
        }
        continue;
      }
      auto& f = std::get<DescFrame>(stack_.back());
      if (auto failed = step_descriptor(f)) {
        stack_.clear();
        return *failed;
      }
    }
    return Value{std::move(ret_)};
  }

  std::optional<EvalOutcome> step_descriptor(DescFrame& f) {
    using K = Descriptor::Kind;
    const Descriptor& d = *f.d;
    const Env& env = *f.env;
    if (f.phase == 0) {
      if (++steps_ > cfg_.max_steps) return LimitExceeded{cfg_.max_steps};
      record(TraceEvent::Kind::Descriptor, env.ctx, env.local_node, env.local_path, render_descriptor(d));
      if (d.kind == K::Atom) {
        finish(ValueSeq(std::vector<AtomSym>{d.atom}));
        return std::nullopt;
      }
      f.phase = 1;
      if (d.has_path()) {
        // Path subterms are evaluated at the empty extension.
        stack_.emplace_back(SeqFrame{&d.path, 0, f.env, make_ext(ValueSeq{}), {}});
        has_ret_ = false;
      } else {
        ret_ = ValueSeq{};
        has_ret_ = true;
      }
      return std::nullopt;
    }
    if (f.phase == 1) {
      ValueSeq target = std::move(ret_);
      has_ret_ = false;
      Context ctx = env.ctx;
      NodeSym node;
      switch (d.kind) {
        case K::LocalNodePath:
          node = d.node;
          target.append(*f.ext);
          break;
        case K::GlobalNodePath:
          node = d.node;
          target.append(*f.ext);
          ctx = Context{node, target};
          break;
        case K::GlobalPath:
          node = ctx.global_node;
          target.append(*f.ext);
          ctx.global_path = target;
          break;
        case K::GlobalNode:
          // No descriptor path to extend: the global path is reused as is.
          node = d.node;
          target = ctx.global_path;
          ctx.global_node = node;
          break;
        case K::Atom: break;
      }
      if (d.kind != K::LocalNodePath) record(TraceEvent::Kind::ContextSwitch, ctx, node, target, render_descriptor(d));
      f.phase = 2;
      // `f` may dangle once enter_local pushes a frame.
      return enter_local(ctx, node, target);
    }
    ValueSeq v = std::move(ret_);
    finish(std::move(v));
    return std::nullopt;
  }
};

}  // namespace detail

/// Evaluates n:p against the theory in the local context (n, p), with global
/// context c. Under EvalMode::Default the longest explicit prefix of p is used.
inline EvalOutcome eval_local(const Theory& theory, const Context& c, const NodeSym& n, const ValueSeq& p,
                              const EvalConfig& cfg) {
  return detail::Machine(theory, cfg).run_local(c, n, p);
}

/// Evaluates one descriptor at path extension `ext` in global context c.
inline EvalOutcome eval_descriptor(const Theory& theory, const Context& c, const Descriptor& d, const ValueSeq& ext,
                                   const EvalConfig& cfg) {
  return detail::Machine(theory, cfg).run_descriptor(c, d, ext, c.global_node, c.global_path);
}

/// Evaluates a descriptor sequence at extension `ext`, concatenating results.
inline EvalOutcome eval_sequence(const Theory& theory, const Context& c, const Rhs& phi, const ValueSeq& ext,
                                 const EvalConfig& cfg) {
  return detail::Machine(theory, cfg).run_sequence(c, phi, ext, c.global_node, c.global_path);
}

/// Seeds the global context with (n, p) and evaluates n:p.
inline QueryResult evaluate_query(const Theory& theory, const NodeSym& n, const Path& p, const EvalConfig& cfg) {
  detail::Machine m(theory, cfg);
  Context seed{n, as_value(p)};
  EvalOutcome o = m.run_local(seed, n, as_value(p));
  return QueryResult{std::move(o), m.take_trace()};
}

}  // namespace datr
