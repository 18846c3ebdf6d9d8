// SPDX-License-Identifier: Apache-2.0
//
// Abstract syntax and theory store for DATR definitional theories.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace datr {

/// An uninterpreted symbol. Equality is name equality (term interpretation).
struct AtomSym {
  std::string name;

  friend auto operator<=>(const AtomSym&, const AtomSym&) = default;
};

/// A node symbol. Lexically disjoint from atoms (initial uppercase letter).
struct NodeSym {
  std::string name;

  friend auto operator<=>(const NodeSym&, const NodeSym&) = default;
};

/// Ordered sequence of atoms. `Role` keeps syntactic paths and semantic
/// values apart while sharing one representation.
template <class Role>
struct AtomSeq {
  std::vector<AtomSym> atoms;

  AtomSeq() = default;
  explicit AtomSeq(std::vector<AtomSym> a) : atoms(std::move(a)) {}
  AtomSeq(std::initializer_list<const char*> names) {
    for (const char* n : names) atoms.push_back(AtomSym{n});
  }

  [[nodiscard]] std::size_t size() const { return atoms.size(); }
  [[nodiscard]] bool empty() const { return atoms.empty(); }
  const AtomSym& operator[](std::size_t i) const { return atoms[i]; }
  auto begin() const { return atoms.begin(); }
  auto end() const { return atoms.end(); }

  void append(const AtomSeq& other) {
    atoms.insert(atoms.end(), other.atoms.begin(), other.atoms.end());
  }

  [[nodiscard]] AtomSeq prefix(std::size_t n) const {
    return AtomSeq(std::vector<AtomSym>(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(n)));
  }
  [[nodiscard]] AtomSeq drop(std::size_t n) const {
    return AtomSeq(std::vector<AtomSym>(atoms.begin() + static_cast<std::ptrdiff_t>(n), atoms.end()));
  }
  [[nodiscard]] bool is_prefix_of(const AtomSeq& other) const {
    return size() <= other.size() && std::equal(atoms.begin(), atoms.end(), other.atoms.begin());
  }

  friend AtomSeq operator+(AtomSeq lhs, const AtomSeq& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend auto operator<=>(const AtomSeq&, const AtomSeq&) = default;
};

struct PathRole {};
struct ValueRole {};

using Path = AtomSeq<PathRole>;
using ValueSeq = AtomSeq<ValueRole>;

inline ValueSeq as_value(const Path& p) { return ValueSeq(p.atoms); }
inline Path as_path(const ValueSeq& v) { return Path(v.atoms); }

/// A value descriptor: an atom or one of the four inheritance forms.
/// Path subterms are themselves descriptors (evaluable paths).
struct Descriptor {
  enum class Kind {
    Atom,            // a
    LocalNodePath,   // N:<d1 ... dn>
    GlobalNodePath,  // "N:<d1 ... dn>"
    GlobalPath,      // "<d1 ... dn>"
    GlobalNode,      // "N"
  };

  Kind kind = Kind::Atom;
  AtomSym atom;                  // Kind::Atom
  NodeSym node;                  // LocalNodePath, GlobalNodePath, GlobalNode
  std::vector<Descriptor> path;  // LocalNodePath, GlobalNodePath, GlobalPath

  static Descriptor make_atom(AtomSym a) {
    Descriptor d;
    d.atom = std::move(a);
    return d;
  }
  static Descriptor local(NodeSym n, std::vector<Descriptor> p) {
    Descriptor d;
    d.kind = Kind::LocalNodePath;
    d.node = std::move(n);
    d.path = std::move(p);
    return d;
  }
  static Descriptor global_node_path(NodeSym n, std::vector<Descriptor> p) {
    Descriptor d = local(std::move(n), std::move(p));
    d.kind = Kind::GlobalNodePath;
    return d;
  }
  static Descriptor global_path(std::vector<Descriptor> p) {
    Descriptor d;
    d.kind = Kind::GlobalPath;
    d.path = std::move(p);
    return d;
  }
  static Descriptor global_node(NodeSym n) {
    Descriptor d;
    d.kind = Kind::GlobalNode;
    d.node = std::move(n);
    return d;
  }

  [[nodiscard]] bool has_node() const {
    return kind == Kind::LocalNodePath || kind == Kind::GlobalNodePath || kind == Kind::GlobalNode;
  }
  [[nodiscard]] bool has_path() const {
    return kind == Kind::LocalNodePath || kind == Kind::GlobalNodePath || kind == Kind::GlobalPath;
  }

  friend bool operator==(const Descriptor& a, const Descriptor& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Atom: return a.atom == b.atom;
      case Kind::GlobalNode: return a.node == b.node;
      case Kind::GlobalPath: return a.path == b.path;
      case Kind::LocalNodePath:
      case Kind::GlobalNodePath: return a.node == b.node && a.path == b.path;
    }
    return false;
  }
};

using Rhs = std::vector<Descriptor>;

/// Path subterms for a plain atom path.
inline std::vector<Descriptor> atom_terms(const Path& p) {
  std::vector<Descriptor> out;
  out.reserve(p.size());
  for (const auto& a : p) out.push_back(Descriptor::make_atom(a));
  return out;
}

/// N:P == phi
struct DefSentence {
  NodeSym node;
  Path lhs;
  Rhs rhs;

  friend bool operator==(const DefSentence&, const DefSentence&) = default;
};

/// N:P = alpha (assertion), N:P = UNDEFINED, or N:P ? (bare query).
struct GoalSentence {
  enum class Expect { Query, Value, Undefined };

  NodeSym node;
  Path path;
  Expect expect = Expect::Query;
  ValueSeq expected;  // meaningful only for Expect::Value
};

/// Raised when a theory would stop being functional.
class DuplicateError : public std::runtime_error {
 public:
  DuplicateError(NodeSym node, Path path, Rhs existing, Rhs conflicting)
      : std::runtime_error("conflicting definitions for " + node.name),
        node_(std::move(node)),
        path_(std::move(path)),
        existing_(std::move(existing)),
        conflicting_(std::move(conflicting)) {}

  const NodeSym& node() const { return node_; }
  const Path& path() const { return path_; }
  const Rhs& existing() const { return existing_; }
  const Rhs& conflicting() const { return conflicting_; }

 private:
  NodeSym node_;
  Path path_;
  Rhs existing_;
  Rhs conflicting_;
};

/// The restriction of a theory to one node: explicit path -> rhs.
struct NodeDef {
  NodeSym owner;
  std::map<Path, Rhs> entries;

  [[nodiscard]] bool empty() const { return entries.empty(); }
  [[nodiscard]] std::size_t max_key_length() const {
    std::size_t n = 0;
    for (const auto& [p, _] : entries) n = std::max(n, p.size());
    return n;
  }
};

/// A functional, definitional theory. Node order is the order of first
/// definition; paths within a node are kept in lexicographic order.
class Theory {
 public:
  /// Adds a sentence. Re-adding an identical sentence is a no-op.
  /// Throws DuplicateError if the key already maps to a different rhs.
  void add(const DefSentence& s) {
    auto [it, fresh] = defs_.try_emplace(s.node, NodeDef{s.node, {}});
    if (fresh) order_.push_back(s.node);
    auto& entries = it->second.entries;
    if (auto e = entries.find(s.lhs); e != entries.end()) {
      if (e->second != s.rhs) throw DuplicateError(s.node, s.lhs, e->second, s.rhs);
      return;
    }
    entries.emplace(s.lhs, s.rhs);
  }

  [[nodiscard]] const NodeDef* find(const NodeSym& n) const {
    auto it = defs_.find(n);
    return it == defs_.end() ? nullptr : &it->second;
  }

  [[nodiscard]] const std::vector<NodeSym>& node_order() const { return order_; }
  [[nodiscard]] std::size_t node_count() const { return order_.size(); }
  [[nodiscard]] std::size_t sentence_count() const {
    std::size_t n = 0;
    for (const auto& [_, def] : defs_) n += def.entries.size();
    return n;
  }

  /// All sentences, nodes in declaration order, paths lexicographic.
  [[nodiscard]] std::vector<DefSentence> sentences() const {
    std::vector<DefSentence> out;
    for (const auto& n : order_) {
      for (const auto& [p, rhs] : defs_.at(n).entries) out.push_back({n, p, rhs});
    }
    return out;
  }

  // Equality is equality of the sentence maps; declaration order is ignored.
  friend bool operator==(const Theory& a, const Theory& b) {
    if (a.defs_.size() != b.defs_.size()) return false;
    for (const auto& [n, def] : a.defs_) {
      const NodeDef* other = b.find(n);
      if (!other || other->entries != def.entries) return false;
    }
    return true;
  }

 private:
  std::map<NodeSym, NodeDef> defs_;
  std::vector<NodeSym> order_;
};

/// Value-returning form of Theory::add.
inline Theory theory_add_sentence(Theory theory, const DefSentence& s) {
  theory.add(s);
  return theory;
}

/// T/N. Empty when the node has no definition.
inline NodeDef node_definition(const Theory& theory, const NodeSym& n) {
  if (const NodeDef* def = theory.find(n)) return *def;
  return NodeDef{n, {}};
}

struct PrefixMatch {
  Path explicit_path;
  const Rhs* rhs = nullptr;
  Path suffix;
};

/// Longest key of `def` that is a prefix of `p`. Walks prefixes from short to
/// long, keeping the last hit; there is at most one key per prefix length.
inline std::optional<PrefixMatch> longest_prefix_lookup(const NodeDef& def, const Path& p) {
  const Rhs* best = nullptr;
  std::size_t best_len = 0;
  const std::size_t limit = std::min(p.size(), def.max_key_length());
  Path probe;
  for (std::size_t len = 0;; ++len) {
    if (auto it = def.entries.find(probe); it != def.entries.end()) {
      best = &it->second;
      best_len = len;
    }
    if (len == limit) break;
    probe.atoms.push_back(p[len]);
  }
  if (!best) return std::nullopt;
  return PrefixMatch{p.prefix(best_len), best, p.drop(best_len)};
}

/// Every atom mentioned anywhere in the theory (lhs paths and rhs terms), sorted.
inline std::vector<AtomSym> theory_atoms(const Theory& theory) {
  std::vector<AtomSym> out;
  auto visit = [&](auto&& self, const Descriptor& d) -> void {
    if (d.kind == Descriptor::Kind::Atom) out.push_back(d.atom);
    for (const auto& sub : d.path) self(self, sub);
  };
  for (const auto& s : theory.sentences()) {
    out.insert(out.end(), s.lhs.begin(), s.lhs.end());
    for (const auto& d : s.rhs) visit(visit, d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace datr
