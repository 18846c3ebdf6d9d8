// SPDX-License-Identifier: Apache-2.0
//
// Canonical (unabbreviated) text rendering of DATR terms.

#pragma once

#include <string>

#include "datr/model.hpp"

namespace datr {

template <class Role>
std::string render_atoms(const AtomSeq<Role>& seq) {
  std::string out;
  for (const auto& a : seq) {
    if (!out.empty()) out += ' ';
    out += a.name;
  }
  return out;
}

inline std::string render_path(const Path& p) { return "<" + render_atoms(p) + ">"; }

/// Value text as printed by the CLI: atoms joined by spaces, `()` when empty.
inline std::string render_value(const ValueSeq& v) { return v.empty() ? "()" : render_atoms(v); }

inline std::string render_descriptor(const Descriptor& d);

inline std::string render_terms(const std::vector<Descriptor>& terms) {
  std::string out = "<";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ' ';
    out += render_descriptor(terms[i]);
  }
  return out + ">";
}

inline std::string render_descriptor(const Descriptor& d) {
  using K = Descriptor::Kind;
  switch (d.kind) {
    case K::Atom: return d.atom.name;
    case K::LocalNodePath: return d.node.name + ":" + render_terms(d.path);
    case K::GlobalNodePath: return "\"" + d.node.name + ":" + render_terms(d.path) + "\"";
    case K::GlobalPath: return "\"" + render_terms(d.path) + "\"";
    case K::GlobalNode: return "\"" + d.node.name + "\"";
  }
  return {};
}

inline std::string render_rhs(const Rhs& rhs) {
  std::string out;
  for (const auto& d : rhs) {
    out += ' ';
    out += render_descriptor(d);
  }
  return out;
}

/// `Node: <path> == rhs .`
inline std::string render_sentence(const DefSentence& s) {
  return s.node.name + ": " + render_path(s.lhs) + " ==" + render_rhs(s.rhs) + " .";
}

/// One canonical sentence per line.
inline std::string render_theory(const Theory& theory) {
  std::string out;
  for (const auto& s : theory.sentences()) {
    out += render_sentence(s);
    out += '\n';
  }
  return out;
}

inline std::string render_node_path(const NodeSym& n, const Path& p) { return n.name + ":" + render_path(p); }

inline std::string render_goal(const GoalSentence& g) {
  std::string head = render_node_path(g.node, g.path);
  switch (g.expect) {
    case GoalSentence::Expect::Query: return head + " ?";
    case GoalSentence::Expect::Undefined: return head + " = UNDEFINED .";
    case GoalSentence::Expect::Value: {
      std::string v = render_atoms(g.expected);
      return head + " =" + (v.empty() ? "" : " " + v) + " .";
    }
  }
  return head;
}

}  // namespace datr
